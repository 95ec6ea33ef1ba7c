#pragma once

#include <span>

#include "nonext/distribution.hpp"
#include "nonext/phi.hpp"

namespace nonext {

/// Entropic index. Positive and finite; q = 1 selects the logarithmic
/// limit of every kernel.
class QParam {
 public:
    explicit QParam(double q);
    double value() const noexcept { return q_; }

 private:
    double q_;
};

/// Half-width of the q window around 1 inside which kernels evaluate
/// their q -> 1 limit instead of the generic quotient.
inline constexpr double kQSwitch = 1e-8;

/// |phi'(1)| below this cannot scale the logarithmic limit.
inline constexpr double kPhiSlopeTol = 1e-12;

/// p^q with the 0^q = 0 convention, q > 0.
double pow_q(double p, double q);

/// sum_i p_i^q.
double power_sum(std::span<const double> p, double q);

/// 1 - sum_i p_i^q, evaluated per-term as -p_i * expm1((q - 1) ln p_i) so
/// no cancellation occurs as q -> 1.
double power_sum_deficit(std::span<const double> p, double q);

/// -sum p_i ln p_i, zero-probability terms dropped.
double shannon(const Distribution& d);

/// (1 - sum p^q) / (q - 1); shannon at q = 1.
double tsallis(const Distribution& d, QParam q);

/// (1 - sum p^q) / ((q - 1) sum p^q); shannon at q = 1.
double normalized_tsallis(const Distribution& d, QParam q);

/// (1 - sum p^q) / phi(q); within kQSwitch of q = 1 this evaluates the
/// limit shannon(d) / phi'(1).
double generalized_entropy(const Distribution& d, QParam q, const PhiSpec& phi);

/// Entropy of the uniform distribution on n outcomes, computed in closed
/// form as (1 - n^(1-q)) / phi(q) without building the distribution.
double uniform_entropy(std::size_t n, QParam q, const PhiSpec& phi);

/// (1 - sum p^q) / (1 - 2^(1-q)): the base-2 sibling of tsallis().
double havrda_charvat(const Distribution& d, QParam q);

}  // namespace nonext
