#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "primecouple/couplings.hpp"
#include "primecouple/random_source.hpp"
#include "primecouple/stats.hpp"

using namespace primecouple;

TEST_CASE("fixed word regression") {
    // xi = 1 0 1 1 1 0 0 0 0 1 1 0 0 0 1 0 0 0 0 0, positions 1..20
    std::vector<std::uint8_t> xi{1, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0};
    FellerSample s = feller_from_word(20, xi);
    CHECK(s.one_positions == std::vector<std::uint64_t>{1, 3, 4, 5, 10, 11, 15});
    // gaps between ones 2, 1, 1, 5, 1, 4; open run past position 15 wraps to 6
    CHECK(s.first_cycle_len == 6);
    CHECK(s.j_perm == 14);
    std::vector<std::uint32_t> want(20, 0);
    want[0] = 3;  // three gaps of length 1
    want[1] = 1;
    want[3] = 1;
    want[4] = 1;
    want[5] = 1;  // the wrapped first cycle of the permutation
    CHECK(s.cycle_counts_n == want);
    std::uint64_t mass = 0;
    for (std::size_t i = 0; i < s.cycle_counts_n.size(); ++i)
        mass += (i + 1) * s.cycle_counts_n[i];
    CHECK(mass == 20);
    CHECK_THROWS(feller_from_word(3, std::vector<std::uint8_t>{0, 1, 1}));

    FellerSample o = feller_from_ones(20, 20, {1, 3, 4, 5, 10, 11, 15});
    CHECK(o.cycle_counts_n == s.cycle_counts_n);
    CHECK(o.cycle_counts_inf == s.cycle_counts_inf);
    CHECK(o.first_cycle_len == s.first_cycle_len);
    CHECK(o.xi_bits(20) == xi);
}

TEST_CASE("cycle mass is always n") {
    RandomSource rng(21, 0);
    for (int t = 0; t < 300; ++t) {
        FellerSample s = feller_sample(30, 50.0, rng);
        std::uint64_t mass = 0;
        for (std::size_t i = 0; i < s.cycle_counts_n.size(); ++i)
            mass += (i + 1) * s.cycle_counts_n[i];
        REQUIRE(mass == 30);
        REQUIRE(s.first_cycle_len >= 1);
        REQUIRE(s.first_cycle_len <= 30);
        REQUIRE(s.j_perm == 30 - s.first_cycle_len);
        REQUIRE(s.truncation_bound == doctest::Approx(0.02).epsilon(1e-12));
    }
}

TEST_CASE("finite counts never exceed the limit counts by more than the boundary") {
    RandomSource rng(22, 0);
    const std::uint64_t n = 50;
    for (int t = 0; t < 2000; ++t) {
        FellerSample s = feller_sample(n, 50.0, rng);
        std::uint64_t boundary = s.first_cycle_len;
        for (std::size_t i = 0; i < s.cycle_counts_n.size(); ++i) {
            std::uint32_t inf_i =
                i < s.cycle_counts_inf.size() ? s.cycle_counts_inf[i] : 0;
            std::uint32_t extra = (i + 1) == boundary ? 1 : 0;
            REQUIRE(s.cycle_counts_n[i] <= inf_i + extra);
        }
    }
}

TEST_CASE("renewal word marginals") {
    RandomSource rng(23, 0);
    const std::uint64_t upto = 6;
    const int trials = 20000;
    int ones5 = 0;
    for (int t = 0; t < trials; ++t) {
        FellerSample s = feller_sample(upto, 10.0, rng);
        std::vector<std::uint8_t> bits = s.xi_bits(upto);
        REQUIRE(bits.size() == upto);
        REQUIRE(bits[0] == 1);
        ones5 += bits[4] == 1;
    }
    // P(xi_k = 1) = 1/k
    double p5 = static_cast<double>(ones5) / trials;
    double se = std::sqrt(0.2 * 0.8 / trials);
    CHECK(std::abs(p5 - 0.2) <= 5 * se);
}

TEST_CASE("mean displacement stays under the coupling bound") {
    RandomSource rng(24, 0);
    const std::uint64_t n = 10;
    const double factor = 100.0;
    const int trials = 5000;
    RunningStat indel;
    for (int t = 0; t < trials; ++t) {
        FellerSample s = feller_sample(n, factor, rng);
        double d = 0;
        std::size_t m = std::max(s.cycle_counts_n.size(), s.cycle_counts_inf.size());
        for (std::size_t i = 0; i < m; ++i) {
            double a = i < s.cycle_counts_n.size() ? s.cycle_counts_n[i] : 0;
            double b = i < s.cycle_counts_inf.size() ? s.cycle_counts_inf[i] : 0;
            d += std::abs(a - b);
        }
        indel.add(d);
    }
    double bound = 2.0 * n / (n + 1.0) + 3 * indel.stderr_mean() + 1.0 / factor;
    CHECK(indel.mean() <= bound);
}
