#pragma once

#include <cstdint>
#include <vector>

#include "nonext/axioms.hpp"
#include "nonext/distribution.hpp"
#include "nonext/entropy.hpp"
#include "nonext/phi.hpp"

namespace nonext {

/// A rational simplex point p_i = m_i / M encoded by its integer
/// multiplicities m with total M > 0.
class RationalDistribution {
 public:
    explicit RationalDistribution(std::vector<std::uint64_t> multiplicities);

    const std::vector<std::uint64_t>& multiplicities() const noexcept { return m_; }
    std::uint64_t total() const noexcept { return total_; }
    std::size_t size() const noexcept { return m_.size(); }

    Distribution to_distribution() const;

 private:
    std::vector<std::uint64_t> m_;
    std::uint64_t total_;
};

/// Uniform entropies must satisfy f(mn) = f(n) + n^(1-q) f(m). This is
/// the composition law that pins the whole family down.
CheckReport check_functional_equation(std::uint64_t m, std::uint64_t n, QParam q,
                                      const PhiSpec& phi, double tol = kIdentityTol);

/// Entropy of a rational point rebuilt from uniform entropies alone:
/// f(M) - sum_i (m_i/M)^q f(m_i), zero multiplicities dropped. Agrees
/// with generalized_entropy on the same point up to rounding.
double reconstruct_rational(const RationalDistribution& rd, QParam q, const PhiSpec& phi);

/// Sampled bound on the local slope of S_q near d: central differences
/// along seeded random simplex-tangent directions, scaled by sqrt(2).
double local_lipschitz_bound(const Distribution& d, QParam q, const PhiSpec& phi,
                             std::uint64_t seed = kDefaultSeed);

/// Snaps d to the nearest multiplicities over denominator M, rebuilds the
/// entropy there from uniform entropies, and compares with the direct
/// kernel at d. Tolerance is the sampled slope bound times the n/M
/// approximation radius plus 1e-10.
CheckReport uniqueness_check(const Distribution& d, QParam q, const PhiSpec& phi,
                             std::uint64_t M, std::uint64_t seed = kDefaultSeed);

}  // namespace nonext
