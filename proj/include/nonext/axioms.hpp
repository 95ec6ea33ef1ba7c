#pragma once

#include <cstdint>
#include <string>

#include "nonext/distribution.hpp"
#include "nonext/entropy.hpp"
#include "nonext/phi.hpp"

namespace nonext {

/// Default tolerance for identities that hold exactly in real arithmetic.
inline constexpr double kIdentityTol = 1e-12;

inline constexpr std::uint64_t kDefaultSeed = 42;

enum class CheckStatus { passed, failed, inapplicable };

const char* to_string(CheckStatus s);

/// Outcome of one structural check: the largest deviation found, the
/// tolerance it was held to, and the inputs that produced it.
struct CheckReport {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool passed = false;  // residual <= tol
    CheckStatus status = CheckStatus::failed;
    std::string witness;
    std::uint64_t seed = 0;  // 0 when the check used no randomness
};

/// Entropy of the refined distribution must equal the coarse entropy plus
/// the p_i^q-weighted conditional entropies.
CheckReport check_shannon_additivity(const Refinement& r, QParam q, const PhiSpec& phi,
                                     double tol = kIdentityTol);

/// Joint entropy of independent systems must equal
/// S(A) + S(B) - phi(q) S(A) S(B).
CheckReport check_pseudoadditivity(const ProductSystem& s, QParam q, const PhiSpec& phi,
                                   double tol = kIdentityTol);

/// No distribution on n outcomes may exceed the uniform entropy. Requires
/// phi to have the admissible sign at q; otherwise the report comes back
/// inapplicable rather than failed.
CheckReport check_maximality(const Distribution& d, QParam q, const PhiSpec& phi,
                             double tol = kIdentityTol);

/// Appending a zero-probability outcome must not change the entropy.
CheckReport check_expandability(const Distribution& d, QParam q, const PhiSpec& phi,
                                double tol = kIdentityTol);

/// |S(d, 1 +/- 10^-k) - shannon(d)/phi'(1)| must shrink monotonically for
/// k = 2..k_max and end below 10 * 10^-k_max * |shannon(d)| + 1e-12.
CheckReport check_shannon_limit(const Distribution& d, const PhiSpec& phi, int k_max = 8);

/// Entropy must be invariant under permutations of d. Tries the reversal
/// plus seeded random shuffles; fixed tolerance 1e-14.
CheckReport check_symmetry(const Distribution& d, QParam q, const PhiSpec& phi,
                           std::uint64_t seed = kDefaultSeed);

}  // namespace nonext
