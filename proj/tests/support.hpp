#pragma once

// Shared helpers for the unit suites: error-code capture, random simplex
// points, and naive textbook kernels used as independent references.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nonext/distribution.hpp"
#include "nonext/errors.hpp"
#include "nonext/rng.hpp"

namespace testsupport {

inline std::optional<nonext::ErrorCode> code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const nonext::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline nonext::Distribution random_distribution(nonext::SplitMix64& rng, std::size_t n) {
    return nonext::Distribution(nonext::sample_simplex(rng, n));
}

// Textbook forms via std::pow, deliberately sharing nothing with the
// library's expm1-based evaluation path. Only meaningful away from q = 1.
inline double naive_power_sum(const std::vector<double>& p, double q) {
    double s = 0.0;
    for (double x : p) {
        if (x > 0.0) s += std::pow(x, q);
    }
    return s;
}

inline double naive_tsallis(const std::vector<double>& p, double q) {
    return (1.0 - naive_power_sum(p, q)) / (q - 1.0);
}

inline double naive_generalized(const std::vector<double>& p, double q, double phi_q) {
    return (1.0 - naive_power_sum(p, q)) / phi_q;
}

inline double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace testsupport
