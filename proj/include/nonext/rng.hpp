#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace nonext {

/// Deterministic 64-bit generator (splitmix64). Fixed across platforms so
/// seeded reports reproduce byte for byte; std::mt19937 would work but its
/// distributions are not pinned by the standard.
class SplitMix64 {
 public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1]: top 53 bits, shifted off zero so log() stays finite.
    double next_u01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    /// Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
    std::uint64_t state_;
};

/// Flat point on the n-simplex: exponential spacings, i.e. n iid Exp(1)
/// draws normalized by their sum.
inline std::vector<double> sample_simplex(SplitMix64& rng, std::size_t n) {
    std::vector<double> w(n);
    for (auto& x : w) x = -std::log(rng.next_u01());
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= total;
    return w;
}

/// Fisher-Yates shuffle of the identity permutation on n elements.
inline std::vector<std::size_t> sample_permutation(SplitMix64& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.next_below(i)]);
    }
    return perm;
}

}  // namespace nonext
