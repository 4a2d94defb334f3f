#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "primecouple/mertens.hpp"
#include "primecouple/prime_tables.hpp"

using namespace primecouple;

namespace {

const MertensMap& kq_map() {
    static MertensMap m = MertensMap::build(MertensVariant::one_over_kq, 1000000);
    return m;
}

const MertensMap& p_map() {
    static MertensMap m = MertensMap::build(MertensVariant::one_over_p, 1000000);
    return m;
}

}  // namespace

TEST_CASE("step values against closed forms") {
    const auto& m = kq_map();
    CHECK(m.base_constant == doctest::Approx(kEulerGamma).epsilon(1e-14));
    // below the first breakpoint only -C survives
    CHECK(std::abs(m.f(0.5) - (-kEulerGamma)) <= 1e-14);
    // log 2 <= 0.7 < log 3: jumps so far = 1/2
    CHECK(std::abs(m.f(0.7) - (-kEulerGamma + 0.5)) <= 1e-14);

    const auto& mp = p_map();
    CHECK(mp.base_constant == doctest::Approx(kPrimeReciprocalConstant).epsilon(1e-14));
    CHECK(std::abs(mp.f(std::log(2.0)) - (-kPrimeReciprocalConstant + 0.5)) <= 1e-13);
    // inclusive at the breakpoint
    CHECK(std::abs(mp.f(std::log(3.0)) - (-kPrimeReciprocalConstant + 0.5 + 1.0 / 3.0)) <= 1e-13);
}

TEST_CASE("jumps") {
    const auto& m = kq_map();
    CHECK(m.q[0] == 2);
    CHECK(std::abs(m.jump(0) - 0.5) <= 1e-15);
    // q = 4 = 2^2 jumps 1/(2*4)
    CHECK(m.q[2] == 4);
    CHECK(std::abs(m.jump(2) - 0.125) <= 1e-15);
    const auto& mp = p_map();
    CHECK(mp.q[1] == 3);
    CHECK(std::abs(mp.jump(1) - 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("jump sum follows loglog growth") {
    // sum over prime powers q <= x of 1/(kq) = loglog x + gamma + o(1)
    const auto& m = kq_map();
    double target = std::log(std::log(1e6)) + kEulerGamma;
    CHECK(std::abs(m.jump_sum() - target) <= 0.005);
}

TEST_CASE("streamed prefix matches the map and keeps the trend") {
    std::vector<std::uint64_t> bounds{100000, 1000000};
    auto pref = streamed_jump_prefix(MertensVariant::one_over_kq, 1000000, bounds);
    REQUIRE(pref.size() == 2);
    CHECK(std::abs(pref[1] - kq_map().jump_sum()) <= 1e-9);
    CHECK(std::abs(pref[0] - (std::log(std::log(1e5)) + kEulerGamma)) <= 0.005);

    // segmented pass well past the in-memory table
    std::vector<std::uint64_t> big{10000000, 100000000};
    auto far = streamed_jump_prefix(MertensVariant::one_over_kq, 100000000, big);
    REQUIRE(far.size() == 2);
    CHECK(std::abs(far[0] - (std::log(std::log(1e7)) + kEulerGamma)) <= 0.002);
    CHECK(std::abs(far[1] - (std::log(std::log(1e8)) + kEulerGamma)) <= 0.002);
    CHECK(far[1] > far[0]);
}

TEST_CASE("h inverts f at breakpoints") {
    const auto& m = kq_map();
    for (std::uint64_t want : {std::uint64_t{2}, std::uint64_t{9}, std::uint64_t{97}}) {
        double lf = m.f(std::log(static_cast<double>(want)));
        double x = std::exp(lf);
        CHECK(std::abs(m.h(x) - std::log(static_cast<double>(want))) <= 1e-12);
        auto bp = m.h_breakpoint(x);
        REQUIRE(bp.has_value());
        CHECK(bp->q == want);
    }
    // dead zone below e^{-C}
    CHECK(m.h(0.5 * std::exp(-m.base_constant)) == 0.0);
    CHECK_FALSE(m.h_breakpoint(0.5 * std::exp(-m.base_constant)).has_value());
    // past the table's reach
    CHECK_THROWS(m.h(std::exp(m.f_cum.back()) * 1.0001));
}

TEST_CASE("h step edges") {
    const auto& m = kq_map();
    // just above the dead zone the first breakpoint answers
    double lo = std::exp(-m.base_constant);
    auto bp = m.h_breakpoint(lo * 1.000001);
    REQUIRE(bp.has_value());
    CHECK(bp->q == 2);
    // exactly at f(log 2) still q = 2, a hair above moves to q = 3
    double edge = std::exp(m.f(std::log(2.0)));
    CHECK(m.h_breakpoint(edge)->q == 2);
    CHECK(m.h_breakpoint(edge * 1.000001)->q == 3);
}

TEST_CASE("log-weighted remainder approaches -gamma") {
    // sum_{q <= x} log q / (kq) - log x -> -gamma
    CHECK(std::abs(kq_map().chebyshev_remainder(1e6) + kEulerGamma) <= 0.01);
}

TEST_CASE("recomputed prime reciprocal constant") {
    PrimeTables t = PrimeTables::build(1000000);
    double b = recompute_prime_reciprocal_constant(t);
    CHECK(std::abs(b - kPrimeReciprocalConstant) <= 1e-6);
}
