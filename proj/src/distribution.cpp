#include "nonext/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace nonext {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_entries(const std::vector<double>& w, const char* who) {
    if (w.empty()) fail(ErrorCode::ZeroSize, std::string(who) + ": needs at least one entry");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i])) {
            fail(ErrorCode::NonFiniteInput,
                 std::string(who) + ": entry " + std::to_string(i) + " is " + fmt(w[i]));
        }
        if (w[i] < 0.0) {
            fail(ErrorCode::NegativeWeight,
                 std::string(who) + ": entry " + std::to_string(i) + " is " + fmt(w[i]));
        }
    }
}

}  // namespace

Distribution::Distribution(std::vector<double> weights, Normalize mode)
    : p_(std::move(weights)) {
    check_entries(p_, "distribution");
    const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (!std::isfinite(total)) {
        fail(ErrorCode::NonFiniteInput, "distribution: weights sum overflows");
    }
    if (mode == Normalize::yes) {
        if (total == 0.0) {
            fail(ErrorCode::ZeroTotalMass, "distribution: cannot normalize zero total mass");
        }
        for (auto& x : p_) x /= total;
    } else if (std::abs(total - 1.0) > kSimplexTol) {
        fail(ErrorCode::NotNormalized, "distribution: weights sum to " + fmt(total));
    }
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) fail(ErrorCode::ZeroSize, "uniform: needs at least one outcome");
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)), Normalize::yes);
}

Distribution Distribution::expanded() const {
    std::vector<double> w = p_;
    w.push_back(0.0);
    return Distribution(std::move(w), Normalize::no);
}

namespace {

std::vector<std::vector<double>> checked_blocks(std::vector<std::vector<double>> blocks) {
    if (blocks.empty()) fail(ErrorCode::ZeroSize, "refinement: needs at least one block");
    for (const auto& b : blocks) check_entries(b, "refinement block");
    return blocks;
}

Distribution block_sums(const std::vector<std::vector<double>>& blocks) {
    std::vector<double> sums(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        sums[i] = std::accumulate(blocks[i].begin(), blocks[i].end(), 0.0);
    }
    return Distribution(std::move(sums), Normalize::no);
}

}  // namespace

Refinement::Refinement(std::vector<std::vector<double>> blocks)
    : blocks_(checked_blocks(std::move(blocks))), marginals_(block_sums(blocks_)) {}

Distribution Refinement::conditional(std::size_t i) const {
    const auto& block = blocks_.at(i);
    const double pi = marginals_[i];
    if (pi == 0.0) {
        fail(ErrorCode::ZeroMarginal,
             "conditional: block " + std::to_string(i) + " carries no mass");
    }
    std::vector<double> c(block.size());
    for (std::size_t j = 0; j < block.size(); ++j) c[j] = block[j] / pi;
    return Distribution(std::move(c), Normalize::no);
}

Distribution Refinement::flattened() const {
    std::vector<double> flat;
    for (const auto& b : blocks_) flat.insert(flat.end(), b.begin(), b.end());
    return Distribution(std::move(flat), Normalize::no);
}

namespace {

Distribution exact_joint(const Distribution& a, const Distribution& b) {
    std::vector<double> joint(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            joint[i * b.size() + j] = a[i] * b[j];
        }
    }
    return Distribution(std::move(joint), Normalize::no);
}

}  // namespace

ProductSystem::ProductSystem(Distribution a, Distribution b)
    : a_(std::move(a)), b_(std::move(b)), joint_(exact_joint(a_, b_)) {}

std::vector<std::uint64_t> rational_approx(const Distribution& d, std::uint64_t M) {
    const std::size_t n = d.size();
    if (M < n) {
        fail(ErrorCode::DenominatorTooSmall,
             "rational_approx: denominator " + std::to_string(M) + " below size " +
                 std::to_string(n));
    }
    std::vector<std::uint64_t> m(n);
    std::vector<double> remainder(n);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double quota = d[i] * static_cast<double>(M);
        const double base = std::floor(quota);
        m[i] = static_cast<std::uint64_t>(base);
        remainder[i] = quota - base;
        assigned += m[i];
    }
    // Largest remainders win the leftover units; ties break on lower index.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
    for (std::size_t k = 0; assigned < M; ++k) {
        ++m[order[k % n]];
        ++assigned;
    }
    // Sums a hair above 1 can overshoot at the floor stage; shed the excess
    // starting from the smallest remainders.
    for (std::size_t k = n; assigned > M;) {
        k = (k == 0) ? n - 1 : k - 1;
        if (m[order[k]] > 0) {
            --m[order[k]];
            --assigned;
        }
    }
    return m;
}

}  // namespace nonext
