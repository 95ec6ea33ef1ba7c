#include "nonext/axioms.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "nonext/rng.hpp"

namespace nonext {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::passed:       return "passed";
        case CheckStatus::failed:       return "failed";
        case CheckStatus::inapplicable: return "inapplicable";
    }
    return "unknown";
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CheckReport settle(std::string name, double residual, double tol, std::string witness,
                   std::uint64_t seed = 0) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.residual = residual;
    rep.tol = tol;
    rep.passed = residual <= tol;
    rep.status = rep.passed ? CheckStatus::passed : CheckStatus::failed;
    rep.witness = std::move(witness);
    rep.seed = seed;
    return rep;
}

std::string describe_sizes(const Refinement& r) {
    std::ostringstream os;
    os << "blocks=[";
    for (std::size_t i = 0; i < r.block_count(); ++i) {
        if (i > 0) os << ",";
        os << r.block_size(i);
    }
    os << "]";
    return os.str();
}

}  // namespace

CheckReport check_shannon_additivity(const Refinement& r, QParam q, const PhiSpec& phi,
                                     double tol) {
    const double lhs = generalized_entropy(r.flattened(), q, phi);
    double rhs = generalized_entropy(r.marginals(), q, phi);
    for (std::size_t i = 0; i < r.block_count(); ++i) {
        const double pi = r.marginal(i);
        if (pi == 0.0) continue;  // massless blocks contribute nothing to either side
        rhs += pow_q(pi, q.value()) * generalized_entropy(r.conditional(i), q, phi);
    }
    const double residual = std::abs(lhs - rhs);
    std::ostringstream witness;
    witness << describe_sizes(r) << " q=" << fmt(q.value()) << " phi=" << phi.name
            << " lhs=" << fmt(lhs) << " rhs=" << fmt(rhs);
    return settle("shannon_additivity", residual, tol, witness.str());
}

CheckReport check_pseudoadditivity(const ProductSystem& s, QParam q, const PhiSpec& phi,
                                   double tol) {
    const double sa = generalized_entropy(s.a(), q, phi);
    const double sb = generalized_entropy(s.b(), q, phi);
    const double joint = generalized_entropy(s.joint(), q, phi);
    const double coupling = phi.eval(q.value());
    if (!std::isfinite(coupling)) {
        fail(ErrorCode::NonFinitePhi, phi.name + " at q = " + fmt(q.value()));
    }
    const double rhs = sa + sb - coupling * sa * sb;
    const double residual = std::abs(joint - rhs);
    std::ostringstream witness;
    witness << "sizes=" << s.a().size() << "x" << s.b().size() << " q=" << fmt(q.value())
            << " phi=" << phi.name << " joint=" << fmt(joint) << " rhs=" << fmt(rhs);
    return settle("pseudoadditivity", residual, tol, witness.str());
}

CheckReport check_maximality(const Distribution& d, QParam q, const PhiSpec& phi,
                             double tol) {
    const double qv = q.value();
    bool applicable;
    if (std::abs(qv - 1.0) < kQSwitch) {
        applicable = phi_derivative(phi, 1.0) > 0.0;
    } else {
        const double v = phi.eval(qv);
        applicable = std::isfinite(v) && ((qv > 1.0) ? v > 0.0 : v < 0.0);
    }
    const double value = generalized_entropy(d, q, phi);
    const double bound = uniform_entropy(d.size(), q, phi);
    const double residual = std::max(0.0, value - bound);
    std::ostringstream witness;
    witness << "n=" << d.size() << " q=" << fmt(qv) << " phi=" << phi.name
            << " entropy=" << fmt(value) << " uniform=" << fmt(bound);
    CheckReport rep = settle("maximality", residual, tol, witness.str());
    if (!applicable) {
        rep.status = CheckStatus::inapplicable;
        rep.witness += " (phi sign inadmissible at this q, bound not guaranteed)";
    }
    return rep;
}

CheckReport check_expandability(const Distribution& d, QParam q, const PhiSpec& phi,
                                double tol) {
    const double before = generalized_entropy(d, q, phi);
    const double after = generalized_entropy(d.expanded(), q, phi);
    const double residual = std::abs(after - before);
    std::ostringstream witness;
    witness << "n=" << d.size() << " q=" << fmt(q.value()) << " phi=" << phi.name
            << " before=" << fmt(before) << " after=" << fmt(after);
    return settle("expandability", residual, tol, witness.str());
}

CheckReport check_shannon_limit(const Distribution& d, const PhiSpec& phi, int k_max) {
    if (k_max < 2) {
        fail(ErrorCode::BadGrid, "check_shannon_limit: k_max must be at least 2");
    }
    const double slope = phi_derivative(phi, 1.0);
    if (std::abs(slope) < kPhiSlopeTol) {
        fail(ErrorCode::PhiDerivativeZero, phi.name + " has slope " + fmt(slope) + " at q = 1");
    }
    const double sh = shannon(d);
    const double limit = sh / slope;

    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    bool monotone = true;
    int bad_k = 0;
    for (int k = 2; k <= k_max; ++k) {
        const double delta = std::pow(10.0, -k);
        const double above = generalized_entropy(d, QParam(1.0 + delta), phi);
        const double below = generalized_entropy(d, QParam(1.0 - delta), phi);
        const double gap = std::max(std::abs(above - limit), std::abs(below - limit));
        if (!std::isfinite(gap)) {
            monotone = false;
            bad_k = k;
            last = gap;
            break;
        }
        // Ratchet with headroom for rounding noise at gaps near zero.
        if (gap > prev * (1.0 + 1e-9) + 1e-18) {
            monotone = false;
            bad_k = k;
        }
        prev = gap;
        last = gap;
    }

    const double tol = 10.0 * std::pow(10.0, -k_max) * std::abs(sh) + 1e-12;
    std::ostringstream witness;
    witness << "n=" << d.size() << " phi=" << phi.name << " limit=" << fmt(limit)
            << " final_gap=" << fmt(last);
    if (!monotone) witness << " gap grew at k=" << bad_k;
    CheckReport rep = settle("shannon_limit", last, tol, witness.str());
    if (!monotone) {
        rep.passed = false;
        rep.status = CheckStatus::failed;
    }
    return rep;
}

CheckReport check_symmetry(const Distribution& d, QParam q, const PhiSpec& phi,
                           std::uint64_t seed) {
    constexpr double tol = 1e-14;
    constexpr int kShuffles = 20;
    const double base = generalized_entropy(d, q, phi);
    const std::size_t n = d.size();
    SplitMix64 rng(seed);
    double worst = 0.0;
    std::string worst_kind = "identity";

    const auto try_order = [&](const std::vector<std::size_t>& perm, const char* kind) {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = d[perm[i]];
        const double v = generalized_entropy(Distribution(std::move(w)), q, phi);
        const double gap = std::abs(v - base);
        if (gap >= worst) {
            worst = gap;
            worst_kind = kind;
        }
    };

    std::vector<std::size_t> reversal(n);
    for (std::size_t i = 0; i < n; ++i) reversal[i] = n - 1 - i;
    try_order(reversal, "reversal");
    for (int t = 0; t < kShuffles; ++t) try_order(sample_permutation(rng, n), "shuffle");

    std::ostringstream witness;
    witness << "n=" << n << " q=" << fmt(q.value()) << " phi=" << phi.name
            << " worst=" << worst_kind;
    return settle("symmetry", worst, tol, witness.str(), seed);
}

}  // namespace nonext
