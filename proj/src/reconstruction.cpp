#include "nonext/reconstruction.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nonext/rng.hpp"

namespace nonext {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RationalDistribution::RationalDistribution(std::vector<std::uint64_t> multiplicities)
    : m_(std::move(multiplicities)), total_(0) {
    if (m_.empty()) {
        fail(ErrorCode::ZeroSize, "rational distribution: needs at least one entry");
    }
    for (std::uint64_t mi : m_) total_ += mi;
    if (total_ == 0) {
        fail(ErrorCode::ZeroTotalMass, "rational distribution: all multiplicities zero");
    }
}

Distribution RationalDistribution::to_distribution() const {
    std::vector<double> p(m_.size());
    for (std::size_t i = 0; i < m_.size(); ++i) {
        p[i] = static_cast<double>(m_[i]) / static_cast<double>(total_);
    }
    return Distribution(std::move(p), Normalize::no);
}

CheckReport check_functional_equation(std::uint64_t m, std::uint64_t n, QParam q,
                                      const PhiSpec& phi, double tol) {
    if (m == 0 || n == 0) {
        fail(ErrorCode::ZeroSize, "check_functional_equation: sizes must be positive");
    }
    const double qv = q.value();
    const double lhs = uniform_entropy(m * n, q, phi);
    const double scale = std::exp((1.0 - qv) * std::log(static_cast<double>(n)));
    const double rhs = uniform_entropy(n, q, phi) + scale * uniform_entropy(m, q, phi);
    const double residual = std::abs(lhs - rhs);
    std::ostringstream witness;
    witness << "m=" << m << " n=" << n << " q=" << fmt(qv) << " phi=" << phi.name
            << " lhs=" << fmt(lhs) << " rhs=" << fmt(rhs);
    CheckReport rep;
    rep.name = "functional_equation";
    rep.residual = residual;
    rep.tol = tol;
    rep.passed = residual <= tol;
    rep.status = rep.passed ? CheckStatus::passed : CheckStatus::failed;
    rep.witness = witness.str();
    return rep;
}

double reconstruct_rational(const RationalDistribution& rd, QParam q, const PhiSpec& phi) {
    const std::uint64_t M = rd.total();
    double acc = uniform_entropy(M, q, phi);
    for (std::uint64_t mi : rd.multiplicities()) {
        if (mi == 0) continue;  // zero-probability outcomes drop out
        const double pi = static_cast<double>(mi) / static_cast<double>(M);
        acc -= pow_q(pi, q.value()) * uniform_entropy(mi, q, phi);
    }
    return acc;
}

double local_lipschitz_bound(const Distribution& d, QParam q, const PhiSpec& phi,
                             std::uint64_t seed) {
    const std::size_t n = d.size();
    if (n < 2) return 0.0;
    SplitMix64 rng(seed);
    double worst = 0.0;
    const std::size_t directions = 2 * n;
    for (std::size_t t = 0; t < directions; ++t) {
        // Random direction in the simplex tangent plane, supported where
        // d has mass so steps stay inside the simplex.
        std::vector<double> u(n, 0.0);
        double mean = 0.0;
        std::size_t support = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i] > 0.0) {
                u[i] = 2.0 * rng.next_u01() - 1.0;
                mean += u[i];
                ++support;
            }
        }
        if (support < 2) break;
        mean /= static_cast<double>(support);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i] > 0.0) u[i] -= mean;
            norm2 += u[i] * u[i];
        }
        const double norm = std::sqrt(norm2);
        if (norm < 1e-12) continue;
        for (auto& x : u) x /= norm;

        double h = 1e-4;
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i] != 0.0) h = std::min(h, 0.49 * d[i] / std::abs(u[i]));
        }
        if (h < 1e-12) continue;  // hugging a face too tightly to probe

        std::vector<double> plus(n), minus(n);
        for (std::size_t i = 0; i < n; ++i) {
            plus[i] = d[i] + h * u[i];
            minus[i] = d[i] - h * u[i];
        }
        const double s_plus = generalized_entropy(Distribution(std::move(plus)), q, phi);
        const double s_minus = generalized_entropy(Distribution(std::move(minus)), q, phi);
        worst = std::max(worst, std::abs(s_plus - s_minus) / (2.0 * h));
    }
    return std::numbers::sqrt2 * worst;
}

CheckReport uniqueness_check(const Distribution& d, QParam q, const PhiSpec& phi,
                             std::uint64_t M, std::uint64_t seed) {
    const std::vector<std::uint64_t> m = rational_approx(d, M);
    const double rebuilt = reconstruct_rational(RationalDistribution(m), q, phi);
    const double direct = generalized_entropy(d, q, phi);
    const double residual = std::abs(rebuilt - direct);
    const double slope = local_lipschitz_bound(d, q, phi, seed);
    const double tol =
        slope * static_cast<double>(d.size()) / static_cast<double>(M) + 1e-10;
    std::ostringstream witness;
    witness << "n=" << d.size() << " M=" << M << " q=" << fmt(q.value())
            << " phi=" << phi.name << " rebuilt=" << fmt(rebuilt)
            << " direct=" << fmt(direct) << " slope_bound=" << fmt(slope);
    CheckReport rep;
    rep.name = "uniqueness";
    rep.residual = residual;
    rep.tol = tol;
    rep.passed = residual <= tol;
    rep.status = rep.passed ? CheckStatus::passed : CheckStatus::failed;
    rep.witness = witness.str();
    rep.seed = seed;
    return rep;
}

}  // namespace nonext
