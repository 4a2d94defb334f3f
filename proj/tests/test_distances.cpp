#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "primecouple/couplings.hpp"
#include "primecouple/distances.hpp"
#include "primecouple/prime_tables.hpp"
#include "primecouple/random_source.hpp"

using namespace primecouple;

namespace {

const PrimeTables& tables() {
    static PrimeTables t = PrimeTables::build(100000);
    return t;
}

}  // namespace

TEST_CASE("smooth law by hand at b = 2, n = 4") {
    SmoothVectorLaw law = SmoothVectorLaw::build(2, 4, tables());
    REQUIRE(law.points.size() == 3);
    CHECK(law.points[0].d == 1);
    CHECK(law.points[0].count == 2);  // 1 and 3
    CHECK(law.points[1].d == 2);
    CHECK(law.points[1].count == 1);
    CHECK(law.points[2].d == 4);
    CHECK(law.points[2].count == 1);
    CHECK(law.points[0].p_uniform == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(law.indep_constant == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(law.points[2].p_indep == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(law.tail_mass_indep == doctest::Approx(0.125).epsilon(1e-14));
    std::uint64_t total = 0;
    for (const auto& pt : law.points) total += pt.count;
    CHECK(total == 4);
}

TEST_CASE("counts always add to n") {
    for (std::uint64_t b : {std::uint64_t{3}, std::uint64_t{5}}) {
        SmoothVectorLaw law = SmoothVectorLaw::build(b, 100, tables());
        std::uint64_t total = 0;
        for (const auto& pt : law.points) {
            total += pt.count;
            REQUIRE(pt.count >= 1);
        }
        REQUIRE(total == 100);
        for (std::size_t i = 1; i < law.points.size(); ++i)
            REQUIRE(law.points[i].d > law.points[i - 1].d);
    }
}

TEST_CASE("frozen small distances") {
    CHECK(std::abs(exact_dtv_small_primes(2, 4, tables()) - 0.25) <= 1e-12);
    CrudeU u24 = crude_u(2, 4, tables());
    CHECK(std::abs(u24.value - 0.5) <= 1e-12);
    // scaling law along powers of two
    for (std::uint64_t n : {std::uint64_t{8}, std::uint64_t{1024}}) {
        CrudeU u = crude_u(2, n, tables());
        CHECK(std::abs(u.value * static_cast<double>(n) - 2.0) <= 1e-9);
    }
}

TEST_CASE("variation never exceeds the crude bound") {
    for (std::uint64_t b : {std::uint64_t{2}, std::uint64_t{3}, std::uint64_t{5}}) {
        for (std::uint64_t n : {std::uint64_t{10}, std::uint64_t{100}, std::uint64_t{1000}}) {
            double d = exact_dtv_small_primes(b, n, tables());
            CrudeU u = crude_u(b, n, tables());
            CHECK(d <= u.value + u.remainder_bound + 1e-12);
            CHECK(d >= 0.0);
            CHECK(u.remainder_bound >= 0.0);
        }
    }
}

TEST_CASE("transport oracle on point masses") {
    DiscreteLaw a{{40}, {1.0}};
    DiscreteLaw b{{500}, {1.0}};
    TransportResult r = ot_oracle_small(a, b, tables());
    // 40 = 2^3 * 5, 500 = 2^2 * 5^3: one deletion, two insertions
    CHECK(std::abs(r.value - 3.0) <= 1e-9);
    CHECK(r.rounding_l1 <= 1e-9);
    TransportResult self = ot_oracle_small(a, a, tables());
    CHECK(std::abs(self.value) <= 1e-12);
}

TEST_CASE("transport oracle symmetry and product bound") {
    RandomSource rng(51, 0);
    for (int t = 0; t < 20; ++t) {
        DiscreteLaw a, b;
        double wa = 0, wb = 0;
        for (int k = 0; k < 3; ++k) {
            a.point.push_back(1 + rng.uniform_int(50));
            b.point.push_back(1 + rng.uniform_int(50));
            a.prob.push_back(1 + static_cast<double>(rng.uniform_int(1000)));
            b.prob.push_back(1 + static_cast<double>(rng.uniform_int(1000)));
            wa += a.prob.back();
            wb += b.prob.back();
        }
        for (auto& p : a.prob) p /= wa;
        for (auto& p : b.prob) p /= wb;
        TransportResult ab = ot_oracle_small(a, b, tables());
        TransportResult ba = ot_oracle_small(b, a, tables());
        REQUIRE(std::abs(ab.value - ba.value) <= 1e-9);
        double prod = product_coupling_cost(a, b, tables());
        REQUIRE(ab.value <= prod + ab.rounding_l1 + 1e-9);
        REQUIRE(ab.value >= 0.0);
        REQUIRE(ab.rounding_l1 <= 1e-5);
    }
}

TEST_CASE("empirical indel summarises fresh draws") {
    static PrimeTables big = PrimeTables::build(10000);
    GrowContext ctx = GrowContext::build(1000, big);
    RandomSource rng(52, 0);
    RunningStat s = empirical_indel(ctx, GrowMode::simulate, false, 4000, rng);
    CHECK(s.n == 4000);
    CHECK(s.mean() > 0.5);
    CHECK(s.mean() < 4.0);
    RandomSource rng2(52, 0);
    RunningStat t = empirical_indel(ctx, GrowMode::simulate, false, 4000, rng2);
    CHECK(s.mean() == t.mean());
    CHECK(s.sum == t.sum);
}

TEST_CASE("tables too small for the smooth law") {
    PrimeTables small = PrimeTables::build(4);
    CHECK_THROWS(SmoothVectorLaw::build(5, 100, small));
}
