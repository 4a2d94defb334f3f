#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "primecouple/prime_tables.hpp"

using namespace primecouple;

namespace {

const PrimeTables& tables() {
    static PrimeTables t = PrimeTables::build(100000);
    return t;
}

}  // namespace

TEST_CASE("prime counting and lookup") {
    const auto& t = tables();
    CHECK(t.limit == 100000);
    CHECK(t.primes.front() == 2);
    CHECK(t.nth_prime(0) == 2);
    CHECK(t.nth_prime(24) == 97);
    CHECK_THROWS(t.nth_prime(t.primes.size()));
    CHECK(t.pi_u64(1) == 0);
    CHECK(t.pi_u64(2) == 1);
    CHECK(t.pi_u64(10) == 4);
    CHECK(t.pi_u64(1000) == 168);
    CHECK(t.pi_u64(10000) == 1229);
    CHECK(t.pi_u64(100000) == 9592);
    CHECK(t.prime_count(100) == 25);
    CHECK(t.pi(10.5) == 4);
    CHECK(t.pi(11.0) == 5);
    CHECK(t.is_prime(2));
    CHECK(t.is_prime(99991));
    CHECK_FALSE(t.is_prime(1));
    CHECK_FALSE(t.is_prime(99990));
}

TEST_CASE("factorization") {
    const auto& t = tables();
    FactoredInteger f = t.factor(24024);
    REQUIRE(f.factors.size() == 5);
    CHECK(f.value == 24024);
    CHECK(f.factors[0] == std::pair<std::uint64_t, std::uint32_t>{2, 3});
    CHECK(f.factors[1] == std::pair<std::uint64_t, std::uint32_t>{3, 1});
    CHECK(f.factors[2] == std::pair<std::uint64_t, std::uint32_t>{7, 1});
    CHECK(f.factors[3] == std::pair<std::uint64_t, std::uint32_t>{11, 1});
    CHECK(f.factors[4] == std::pair<std::uint64_t, std::uint32_t>{13, 1});
    CHECK(f.big_omega() == 7);
    CHECK(f.small_omega() == 5);
    CHECK(f.largest_squarefree_divisor() == 2 * 3 * 7 * 11 * 13);
    CHECK(f.exponent_of(2) == 3);
    CHECK(f.exponent_of(5) == 0);

    FactoredInteger one = t.factor(1);
    CHECK(one.value == 1);
    CHECK(one.factors.empty());
    CHECK(one.big_omega() == 0);
    CHECK(one.largest_squarefree_divisor() == 1);

    FactoredInteger p = t.factor(99991);
    CHECK(p.factors.size() == 1);
    CHECK(p.factors[0].first == 99991);

    // reconstruct every value once
    for (std::uint64_t m = 1; m <= 2000; ++m) {
        FactoredInteger g = t.factor(m);
        std::uint64_t prod = 1;
        for (auto [pp, e] : g.factors)
            for (std::uint32_t i = 0; i < e; ++i) prod *= pp;
        REQUIRE(prod == m);
    }
}

TEST_CASE("prime powers ascending and complete") {
    const auto& t = PrimeTables::build(30);
    std::vector<std::uint64_t> qs;
    for (const auto& pp : t.prime_powers) {
        qs.push_back(pp.q);
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < pp.k; ++i) v *= pp.p;
        CHECK(v == pp.q);
    }
    std::vector<std::uint64_t> expect{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29};
    CHECK(qs == expect);
}

TEST_CASE("checksum separates tables") {
    CHECK(PrimeTables::build(1000).checksum() == PrimeTables::build(1000).checksum());
    CHECK(PrimeTables::build(1000).checksum() != PrimeTables::build(2000).checksum());
}

TEST_CASE("omega aggregates") {
    const auto& t = tables();
    CHECK(omega_mass_uniform(t, 10) == 15);
    CHECK(omega_mass_uniform(t, 1) == 0);
    double m10 = omega_mean_independent(t, 10);
    CHECK(std::abs(m10 - (1.0 + 0.5 + 0.25 + 1.0 / 6.0)) <= 1e-12);
    // mass/n and the independent mean stay within 5/log n of each other
    for (std::uint64_t n : {std::uint64_t{1000}, std::uint64_t{10000}}) {
        double a = static_cast<double>(omega_mass_uniform(t, n)) / static_cast<double>(n);
        double b = omega_mean_independent(t, n);
        CHECK(std::abs(a - b) <= 5.0 / std::log(static_cast<double>(n)));
    }
}
