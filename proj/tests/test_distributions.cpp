#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nonext/distribution.hpp"
#include "support.hpp"

using namespace nonext;
using testsupport::code_of;

TEST_CASE("construction accepts normalized weights verbatim") {
    const Distribution d(std::vector<double>{0.5, 0.5});
    CHECK(d.size() == 2);
    CHECK(d[0] == 0.5);
    CHECK(d[1] == 0.5);
}

TEST_CASE("construction rescales with Normalize::yes") {
    const Distribution d(std::vector<double>{2.0, 1.0, 1.0}, Normalize::yes);
    CHECK(d[0] == 0.5);
    CHECK(d[1] == 0.25);
    CHECK(d[2] == 0.25);
}

TEST_CASE("construction rejects bad weight vectors") {
    CHECK(code_of([] { Distribution(std::vector<double>{0.5, 0.6}); }) ==
          ErrorCode::NotNormalized);
    CHECK(code_of([] { Distribution(std::vector<double>{-0.1, 1.1}); }) ==
          ErrorCode::NegativeWeight);
    CHECK(code_of([] {
              Distribution(std::vector<double>{0.5, std::nan("")});
          }) == ErrorCode::NonFiniteInput);
    CHECK(code_of([] {
              Distribution(std::vector<double>{0.0, 0.0}, Normalize::yes);
          }) == ErrorCode::ZeroTotalMass);
    CHECK(code_of([] { Distribution(std::vector<double>{}); }) == ErrorCode::ZeroSize);
    CHECK(code_of([] {
              Distribution(std::vector<double>{1e308, 1e308}, Normalize::yes);
          }) == ErrorCode::NonFiniteInput);
}

TEST_CASE("uniform distributions") {
    const Distribution u1 = Distribution::uniform(1);
    CHECK(u1.size() == 1);
    CHECK(u1[0] == 1.0);

    const Distribution u4 = Distribution::uniform(4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(u4[i] == 0.25);

    const Distribution u3 = Distribution::uniform(3);
    const double total = std::accumulate(u3.begin(), u3.end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-15);

    CHECK(code_of([] { Distribution::uniform(0); }) == ErrorCode::ZeroSize);
}

TEST_CASE("product forms exact pairwise products") {
    const ProductSystem uu = product(Distribution::uniform(2), Distribution::uniform(2));
    for (std::size_t i = 0; i < 4; ++i) CHECK(uu.joint()[i] == 0.25);

    const ProductSystem ab =
        product(Distribution(std::vector<double>{0.5, 0.5}),
                Distribution(std::vector<double>{0.25, 0.75}));
    CHECK(ab.joint()[0] == 0.125);
    CHECK(ab.joint()[1] == 0.375);
    CHECK(ab.joint()[2] == 0.125);
    CHECK(ab.joint()[3] == 0.375);

    const Distribution b(std::vector<double>{0.3, 0.2, 0.5});
    const ProductSystem unit = product(Distribution::uniform(1), b);
    REQUIRE(unit.joint().size() == 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(unit.joint()[j] == b[j]);
}

TEST_CASE("product entries are bit-exact products") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Distribution a = testsupport::random_distribution(rng, 2 + rng.next_below(5));
        const Distribution b = testsupport::random_distribution(rng, 2 + rng.next_below(5));
        const ProductSystem s = product(a, b);
        REQUIRE(s.joint().size() == a.size() * b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                CHECK(s.joint()[i * b.size() + j] == a[i] * b[j]);
            }
        }
    }
}

TEST_CASE("refinement marginals are block sums") {
    const Refinement even = refine({{0.25, 0.25}, {0.25, 0.25}});
    CHECK(even.marginal(0) == 0.5);
    CHECK(even.marginal(1) == 0.5);

    const Refinement trivial = refine({{0.5}, {0.5}});
    CHECK(trivial.marginal(0) == 0.5);
    const Distribution c = trivial.conditional(0);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == 1.0);

    const Refinement mixed = refine({{0.2, 0.1}, {0.3, 0.4}});
    CHECK(mixed.marginal(0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(mixed.marginal(1) == doctest::Approx(0.7).epsilon(1e-12));
    const Distribution c0 = mixed.conditional(0);
    CHECK(c0[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(c0[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("refinement flattening preserves order and mass") {
    const Refinement r = refine({{0.2, 0.1}, {0.3, 0.4}});
    const Distribution flat = r.flattened();
    REQUIRE(flat.size() == 4);
    CHECK(flat[0] == 0.2);
    CHECK(flat[1] == 0.1);
    CHECK(flat[2] == 0.3);
    CHECK(flat[3] == 0.4);
}

TEST_CASE("refinement rejects bad blocks") {
    CHECK(code_of([] { refine({}); }) == ErrorCode::ZeroSize);
    CHECK(code_of([] { refine({{0.5, 0.5}, {}}); }) == ErrorCode::ZeroSize);
    CHECK(code_of([] { refine({{0.5}, {-0.5, 1.0}}); }) == ErrorCode::NegativeWeight);
    CHECK(code_of([] { refine({{0.5}, {0.6}}); }) == ErrorCode::NotNormalized);
}

TEST_CASE("conditional of a massless block is an error") {
    const Refinement r = refine({{0.0}, {1.0}});
    CHECK(code_of([&] { r.conditional(0); }) == ErrorCode::ZeroMarginal);
    const Distribution c1 = r.conditional(1);
    CHECK(c1[0] == 1.0);
}

TEST_CASE("expansion appends an exact zero") {
    const Distribution one(std::vector<double>{1.0});
    const Distribution e1 = expand(one);
    REQUIRE(e1.size() == 2);
    CHECK(e1[0] == 1.0);
    CHECK(e1[1] == 0.0);

    const Distribution e2 = expand(e1);
    REQUIRE(e2.size() == 3);
    CHECK(e2[1] == 0.0);
    CHECK(e2[2] == 0.0);
}

TEST_CASE("rational approximation on exact and generic points") {
    const auto half = rational_approx(Distribution(std::vector<double>{0.5, 0.5}), 2);
    CHECK(half == std::vector<std::uint64_t>{1, 1});

    const auto thirds =
        rational_approx(Distribution(std::vector<double>{2.0 / 3.0, 1.0 / 3.0}), 3);
    CHECK(thirds == std::vector<std::uint64_t>{2, 1});

    const auto seven = rational_approx(Distribution(std::vector<double>{0.6, 0.4}), 7);
    CHECK(seven == std::vector<std::uint64_t>{4, 3});

    CHECK(code_of([] {
              rational_approx(Distribution::uniform(3), 2);
          }) == ErrorCode::DenominatorTooSmall);
}

TEST_CASE("rational approximation meets its error bound") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.next_below(7);
        const Distribution d = testsupport::random_distribution(rng, n);
        const std::uint64_t M = n + rng.next_below(10000);
        const auto m = rational_approx(d, M);
        REQUIRE(m.size() == n);
        const std::uint64_t total = std::accumulate(m.begin(), m.end(), std::uint64_t{0});
        CHECK(total == M);
        const double bound = static_cast<double>(n) / static_cast<double>(M);
        for (std::size_t i = 0; i < n; ++i) {
            const double approx = static_cast<double>(m[i]) / static_cast<double>(M);
            CHECK(std::abs(approx - d[i]) <= bound);
        }
    }
}

TEST_CASE("random weight vectors normalize onto the simplex") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.next_below(12);
        std::vector<double> w(n);
        for (auto& x : w) x = 10.0 * rng.next_u01();
        const Distribution d(w, Normalize::yes);
        double total = 0.0;
        for (double x : d) {
            CHECK(x >= 0.0);
            total += x;
        }
        CHECK(std::abs(total - 1.0) <= kSimplexTol);
    }
}
