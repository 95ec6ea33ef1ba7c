#include "nonext/entropy.hpp"

#include <cmath>
#include <cstdio>

namespace nonext {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double checked_phi_at(const PhiSpec& phi, double q) {
    const double v = phi.eval(q);
    if (!std::isfinite(v)) {
        fail(ErrorCode::NonFinitePhi, phi.name + "(" + fmt(q) + ") = " + fmt(v));
    }
    if (v == 0.0) {
        fail(ErrorCode::PhiZero, phi.name + " vanishes at q = " + fmt(q));
    }
    return v;
}

double checked_slope_at_one(const PhiSpec& phi) {
    const double slope = phi_derivative(phi, 1.0);
    if (std::abs(slope) < kPhiSlopeTol) {
        fail(ErrorCode::PhiDerivativeZero,
             phi.name + " has slope " + fmt(slope) + " at q = 1");
    }
    return slope;
}

}  // namespace

QParam::QParam(double q) : q_(q) {
    if (!std::isfinite(q) || q <= 0.0) {
        fail(ErrorCode::NonPositiveQ, "q must be positive and finite, got " + fmt(q));
    }
}

double pow_q(double p, double q) {
    if (p <= 0.0) return 0.0;
    if (q == 1.0) return p;
    return std::exp(q * std::log(p));
}

double power_sum(std::span<const double> p, double q) {
    double acc = 0.0;
    for (double x : p) acc += pow_q(x, q);
    return acc;
}

double power_sum_deficit(std::span<const double> p, double q) {
    // Per-term rewrite of 1 - sum p^q over the simplex:
    //   1 - sum p_i^q = -sum p_i (p_i^(q-1) - 1) = -sum p_i expm1((q-1) ln p_i),
    // which stays fully accurate through q -> 1 where the direct difference
    // loses every significant digit.
    double acc = 0.0;
    for (double x : p) {
        if (x > 0.0) acc += x * std::expm1((q - 1.0) * std::log(x));
    }
    return -acc;
}

double shannon(const Distribution& d) {
    double acc = 0.0;
    for (double x : d) {
        if (x > 0.0) acc -= x * std::log(x);
    }
    return acc;
}

double tsallis(const Distribution& d, QParam q) {
    const double qv = q.value();
    if (qv == 1.0) return shannon(d);
    return power_sum_deficit(d.probs(), qv) / (qv - 1.0);
}

double normalized_tsallis(const Distribution& d, QParam q) {
    const double qv = q.value();
    if (qv == 1.0) return shannon(d);
    return power_sum_deficit(d.probs(), qv) / ((qv - 1.0) * power_sum(d.probs(), qv));
}

double generalized_entropy(const Distribution& d, QParam q, const PhiSpec& phi) {
    const double qv = q.value();
    if (std::abs(qv - 1.0) < kQSwitch) {
        return shannon(d) / checked_slope_at_one(phi);
    }
    return power_sum_deficit(d.probs(), qv) / checked_phi_at(phi, qv);
}

double uniform_entropy(std::size_t n, QParam q, const PhiSpec& phi) {
    if (n == 0) fail(ErrorCode::ZeroSize, "uniform_entropy: needs at least one outcome");
    const double qv = q.value();
    const double ln_n = std::log(static_cast<double>(n));
    if (std::abs(qv - 1.0) < kQSwitch) {
        return ln_n / checked_slope_at_one(phi);
    }
    // 1 - n^(1-q), cancellation-free for the same reason as the deficit.
    return -std::expm1((1.0 - qv) * ln_n) / checked_phi_at(phi, qv);
}

double havrda_charvat(const Distribution& d, QParam q) {
    static const PhiSpec base2 = builtin_phi("havrda_charvat");
    return generalized_entropy(d, q, base2);
}

}  // namespace nonext
