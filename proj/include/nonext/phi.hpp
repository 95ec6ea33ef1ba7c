#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nonext/errors.hpp"

namespace nonext {

/// |phi(1)| at or below this counts as the required zero at q = 1;
/// |phi(q)| above it counts as nonvanishing elsewhere.
inline constexpr double kPhiVanishTol = 1e-9;

/// A candidate entropy denominator phi(q), evaluable for q > 0. The
/// derivative callback is optional; central differences fill in when it
/// is absent.
struct PhiSpec {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> derivative;
};

/// Named families: "tsallis" (q - 1), "cubic" ((q - 1)(q^2 + 1) / 2),
/// "havrda_charvat" (1 - 2^(1-q)).
PhiSpec builtin_phi(const std::string& name);

const std::vector<std::string>& builtin_phi_names();

/// phi(q) = (q - 1) * P(q) with P given by ascending coefficients, so
/// phi(1) = 0 holds structurally and phi'(1) = P(1).
PhiSpec poly_phi(std::span<const double> coeffs);

/// d(phi)/dq at q: the analytic callback when present, otherwise central
/// differences with step h (default 1e-6 * max(1, |q|), shrunk to keep
/// q - h positive).
double phi_derivative(const PhiSpec& spec, double q);
double phi_derivative(const PhiSpec& spec, double q, double h);

/// Verdict on one admissibility condition, with the grid point that
/// decided it and the quantity measured there.
struct ConditionResult {
    bool passed = false;
    double witness_q = 0.0;
    double measured = 0.0;
    std::string note;
};

struct PhiValidationReport {
    ConditionResult sign;              // phi < 0 for q < 1, phi > 0 for q > 1
    ConditionResult differentiable;    // stable finite derivative on the grid
    ConditionResult derivative_limit;  // phi'(q) -> 1 as q -> 1
    ConditionResult zero_at_one;       // phi(1) = 0 and phi(q) != 0 elsewhere
    std::vector<double> grid;

    bool all_passed() const {
        return sign.passed && differentiable.passed && derivative_limit.passed &&
               zero_at_one.passed;
    }
};

/// Evaluation grid for validate_phi: 1 +/- 10^-k for k = 1..6 plus 50
/// points geometrically spaced across (0.01, 10).
std::vector<double> default_phi_grid();

/// Checks the four admissibility conditions on the given grid. The grid
/// must be finite, positive, and straddle q = 1 with points within 0.01
/// of it on both sides. tol governs derivative stability and the
/// derivative limit; the zero/nonzero split at q = 1 uses kPhiVanishTol.
PhiValidationReport validate_phi(const PhiSpec& spec, std::span<const double> q_grid,
                                 double tol = 1e-3);

}  // namespace nonext
