#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "primecouple/couplings.hpp"
#include "primecouple/mertens.hpp"
#include "primecouple/prime_tables.hpp"
#include "primecouple/random_source.hpp"
#include "primecouple/stats.hpp"

using namespace primecouple;

namespace {

const PrimeTables& tables() {
    static PrimeTables t = PrimeTables::build(10000);
    return t;
}

const MertensMap& mertens() {
    static MertensMap m = MertensMap::build(MertensVariant::one_over_kq, 20000);
    return m;
}

}  // namespace

TEST_CASE("spacings tile the interval") {
    RandomSource rng(41, 0);
    const std::uint64_t n = 10000;
    double length = std::log(static_cast<double>(n));
    for (int t = 0; t < 2000; ++t) {
        PDCoupledSample s = pd_couple(n, mertens(), tables(), rng);
        REQUIRE(s.n == n);
        REQUIRE(s.residual >= 0.0);
        REQUIRE(s.residual <= 1e-9 * length);
        REQUIRE(s.spacings.size() + 1 == s.pd_scaled.size());
        double sum = s.residual;
        for (double y : s.pd_scaled) {
            REQUIRE(y >= 0.0);
            sum += y;
        }
        REQUIRE(std::abs(sum - length) <= 1e-9);
        for (std::size_t i = 1; i < s.pd_scaled.size(); ++i)
            REQUIRE(s.pd_scaled[i] <= s.pd_scaled[i - 1]);
    }
}

TEST_CASE("matched prime powers recompute from the step map") {
    RandomSource rng(42, 0);
    const std::uint64_t n = 10000;
    for (int t = 0; t < 500; ++t) {
        PDCoupledSample s = pd_couple(n, mertens(), tables(), rng);
        REQUIRE(s.q_star.size() == s.spacings.size());
        double d = 0;
        for (std::size_t i = 0; i < s.spacings.size(); ++i) {
            auto bp = mertens().h_breakpoint(s.spacings[i]);
            std::uint64_t want = bp ? bp->q : 1;
            REQUIRE(s.q_star[i] == want);
            double hy = bp ? std::log(static_cast<double>(bp->q)) : 0.0;
            d += std::abs(hy - s.spacings[i]);
        }
        REQUIRE(std::abs(d - s.d_sum) <= 1e-9);
    }
}

TEST_CASE("integer side stays consistent") {
    RandomSource rng(43, 0);
    const std::uint64_t n = 10000;
    int overflows = 0;
    for (int t = 0; t < 2000; ++t) {
        PDCoupledSample s = pd_couple(n, mertens(), tables(), rng);
        if (s.j_overflow) {
            ++overflows;
            REQUIRE(s.j_star == 0);
            REQUIRE(s.p0_star == 1);
        } else {
            REQUIRE(s.j_star >= 1);
            std::uint64_t prod = 1;
            bool over = false;
            for (auto q : s.q_star) {
                if (q == 1) continue;
                if (prod > n / q) over = true;
                prod *= q;
                if (over) break;
            }
            REQUIRE_FALSE(over);
            REQUIRE(prod == s.j_star);
            REQUIRE(s.p0_star >= 1);
            if (s.p0_star > 1) {
                REQUIRE(tables().is_prime(s.p0_star));
                REQUIRE(s.j_star * s.p0_star / s.p0_star == s.j_star);
                REQUIRE(s.p0_star <= n / s.j_star);
            }
        }
    }
    CHECK(overflows > 0);
    CHECK(overflows < 2000);
}

TEST_CASE("ranked distance recomputes") {
    RandomSource rng(44, 0);
    const std::uint64_t n = 10000;
    for (int t = 0; t < 500; ++t) {
        PDCoupledSample s = pd_couple(n, mertens(), tables(), rng);
        std::vector<double> logs;
        for (auto q : s.q_star) {
            if (q == 1) continue;
            FactoredInteger f = tables().factor(q);
            REQUIRE(f.factors.size() == 1);
            auto [p, k] = f.factors[0];
            for (std::uint32_t c = 0; c < k; ++c) logs.push_back(std::log(static_cast<double>(p)));
        }
        if (s.p0_star > 1) logs.push_back(std::log(static_cast<double>(s.p0_star)));
        std::sort(logs.begin(), logs.end(), std::greater<double>());
        double l1 = 0;
        std::size_t m = std::max(logs.size(), s.pd_scaled.size());
        for (std::size_t i = 0; i < m; ++i) {
            double u = i < s.pd_scaled.size() ? s.pd_scaled[i] : 0.0;
            double v = i < logs.size() ? logs[i] : 0.0;
            l1 += std::abs(u - v);
        }
        REQUIRE(std::abs(l1 - s.l1_distance) <= 1e-9);
    }
}

TEST_CASE("largest component law") {
    RandomSource rng(45, 0);
    const std::uint64_t n = 10000;
    double length = std::log(static_cast<double>(n));
    int below = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        PDCoupledSample s = pd_couple(n, mertens(), tables(), rng);
        below += s.pd_scaled[0] <= 0.5 * length;
    }
    double p = static_cast<double>(below) / trials;
    CHECK(std::abs(p - (1.0 - std::log(2.0))) <= 0.015);
}

TEST_CASE("cutoff controls the tail") {
    RandomSource rng(46, 0);
    PDCoupledSample coarse = pd_couple(1000, mertens(), tables(), rng, 0.5);
    CHECK(coarse.residual <= 0.5);
    RandomSource rng2(46, 0);
    PDCoupledSample fine = pd_couple(1000, mertens(), tables(), rng2, 1e-6);
    CHECK(fine.residual <= 1e-6);
    // same stream: the fine run extends the coarse one
    REQUIRE(fine.spacings.size() >= coarse.spacings.size());
    for (std::size_t i = 0; i < coarse.spacings.size(); ++i)
        REQUIRE(fine.spacings[i] == coarse.spacings[i]);
    CHECK_THROWS(pd_couple(1000, mertens(), tables(), rng, 1.0));
}

TEST_CASE("input validation") {
    RandomSource rng(47, 0);
    CHECK_THROWS(pd_couple(2, mertens(), tables(), rng));
    CHECK_THROWS(pd_couple(20000, mertens(), tables(), rng));  // both maps stop short
    MertensMap wrong = MertensMap::build(MertensVariant::one_over_p, 20000);
    CHECK_THROWS(pd_couple(1000, wrong, tables(), rng));
    MertensMap small = MertensMap::build(MertensVariant::one_over_kq, 1000);
    CHECK_THROWS(pd_couple(1000, small, tables(), rng));
}

TEST_CASE("distance sum concentrates near its limit") {
    RandomSource rng(48, 0);
    RunningStat d;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t)
        d.add(pd_couple(10000, mertens(), tables(), rng).d_sum);
    // limit constant 0.7046; finite-n sits below it
    CHECK(d.mean() >= 0.55);
    CHECK(d.mean() <= 0.75);
}
