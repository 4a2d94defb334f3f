#pragma once

#include <cstdint>
#include <vector>

namespace primecouple {

struct PrimePower {
    std::uint64_t q;  // q = p^k
    std::uint64_t p;
    std::uint32_t k;
};

struct FactoredInteger {
    std::uint64_t value = 1;
    // (prime, exponent) pairs, primes ascending
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;

    std::uint64_t big_omega() const;           // number of prime factors with multiplicity
    std::uint64_t small_omega() const;         // number of distinct prime factors
    std::uint64_t largest_squarefree_divisor() const;
    std::uint32_t exponent_of(std::uint64_t p) const;
};

// Sieve-backed tables: smallest prime factor over 2..limit, primes and
// prime powers ascending.  Memory is ~4 bytes per integer up to limit.
struct PrimeTables {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> smallest_prime_factor;  // index m, valid for 2 <= m <= limit
    std::vector<std::uint64_t> primes;
    std::vector<PrimePower> prime_powers;              // sorted by q

    static PrimeTables build(std::uint64_t limit);

    // pi(x): number of primes <= x; x may exceed limit only by 0
    std::uint64_t pi(double x) const;
    std::uint64_t pi_u64(std::uint64_t x) const;

    bool is_prime(std::uint64_t m) const;
    FactoredInteger factor(std::uint64_t m) const;

    // index into primes (0-based); throws if out of range
    std::uint64_t nth_prime(std::uint64_t i) const;

    // count of primes in tables that are <= bound (bound <= limit assumed)
    std::uint64_t prime_count(std::uint64_t bound) const { return pi_u64(bound); }

    std::uint64_t checksum() const;
};

// sum_{q = p^k <= n} floor(n/q); n * (expected Omega of a uniform integer in 1..n)
std::uint64_t omega_mass_uniform(const PrimeTables& t, std::uint64_t n);

// sum_{p <= n} 1/(p-1); expected Omega of the independent model at cutoff n
double omega_mean_independent(const PrimeTables& t, std::uint64_t n);

}  // namespace primecouple
