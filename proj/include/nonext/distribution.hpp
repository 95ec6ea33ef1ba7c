#pragma once

#include <cstdint>
#include <vector>

#include "nonext/errors.hpp"

namespace nonext {

/// Tolerance on |sum - 1| for accepting a weight vector as normalized.
inline constexpr double kSimplexTol = 1e-9;

enum class Normalize { no, yes };

/// A point of the probability simplex: finite nonnegative entries summing
/// to 1 within kSimplexTol. Immutable after construction.
class Distribution {
 public:
    /// With Normalize::yes, any nonnegative weights with positive total are
    /// rescaled; with Normalize::no the sum must already be within tolerance.
    explicit Distribution(std::vector<double> weights, Normalize mode = Normalize::no);

    /// n equal entries 1/n.
    static Distribution uniform(std::size_t n);

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const noexcept { return p_; }

    auto begin() const noexcept { return p_.begin(); }
    auto end() const noexcept { return p_.end(); }

    /// Same point with one zero-probability outcome appended.
    Distribution expanded() const;

 private:
    std::vector<double> p_;
};

/// A distribution split into blocks: entries p_ij with block sums p_i
/// forming the coarse marginal distribution.
class Refinement {
 public:
    explicit Refinement(std::vector<std::vector<double>> blocks);

    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t block_size(std::size_t i) const { return blocks_.at(i).size(); }
    const std::vector<std::vector<double>>& blocks() const noexcept { return blocks_; }

    const Distribution& marginals() const noexcept { return marginals_; }
    double marginal(std::size_t i) const { return marginals_[i]; }

    /// Conditional distribution inside block i: entries p_ij / p_i.
    /// Undefined when the block carries no mass, reported as ZeroMarginal.
    Distribution conditional(std::size_t i) const;

    /// All p_ij concatenated row-major as one flat distribution.
    Distribution flattened() const;

 private:
    std::vector<std::vector<double>> blocks_;
    Distribution marginals_;
};

/// Joint distribution of two independent systems. Joint entries are the
/// exact floating products a_i * b_j, stored row-major.
class ProductSystem {
 public:
    ProductSystem(Distribution a, Distribution b);

    const Distribution& a() const noexcept { return a_; }
    const Distribution& b() const noexcept { return b_; }
    const Distribution& joint() const noexcept { return joint_; }

 private:
    Distribution a_;
    Distribution b_;
    Distribution joint_;
};

inline ProductSystem product(const Distribution& a, const Distribution& b) {
    return ProductSystem(a, b);
}

inline Refinement refine(std::vector<std::vector<double>> blocks) {
    return Refinement(std::move(blocks));
}

inline Distribution expand(const Distribution& d) { return d.expanded(); }

/// Best integer multiplicities m with sum(m) = M approximating d by m_i/M,
/// via largest remainders. Guarantees max_i |m_i/M - p_i| <= n/M.
std::vector<std::uint64_t> rational_approx(const Distribution& d, std::uint64_t M);

}  // namespace nonext
