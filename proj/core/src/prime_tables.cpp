#include "primecouple/prime_tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace primecouple {

std::uint64_t FactoredInteger::big_omega() const {
    std::uint64_t s = 0;
    for (auto& [p, k] : factors) s += k;
    return s;
}

std::uint64_t FactoredInteger::small_omega() const { return factors.size(); }

std::uint64_t FactoredInteger::largest_squarefree_divisor() const {
    std::uint64_t s = 1;
    for (auto& [p, k] : factors) s *= p;
    return s;
}

std::uint32_t FactoredInteger::exponent_of(std::uint64_t p) const {
    for (auto& [q, k] : factors)
        if (q == p) return k;
    return 0;
}

PrimeTables PrimeTables::build(std::uint64_t limit) {
    if (limit < 2 || limit > 100000000ull)
        throw std::invalid_argument("PrimeTables::build: limit must be in [2, 1e8]");
    PrimeTables t;
    t.limit = limit;
    t.smallest_prime_factor.assign(limit + 1, 0);
    auto& spf = t.smallest_prime_factor;
    // linear sieve: each composite crossed once via its smallest prime factor
    for (std::uint64_t m = 2; m <= limit; ++m) {
        if (spf[m] == 0) {
            spf[m] = static_cast<std::uint32_t>(m);
            t.primes.push_back(m);
        }
        for (std::uint64_t p : t.primes) {
            if (p > spf[m] || p * m > limit) break;
            spf[p * m] = static_cast<std::uint32_t>(p);
        }
    }
    for (std::uint64_t p : t.primes) {
        std::uint64_t q = p;
        std::uint32_t k = 1;
        while (true) {
            t.prime_powers.push_back({q, p, k});
            if (q > limit / p) break;
            q *= p;
            ++k;
        }
    }
    std::sort(t.prime_powers.begin(), t.prime_powers.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
    return t;
}

std::uint64_t PrimeTables::pi_u64(std::uint64_t x) const {
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    return static_cast<std::uint64_t>(it - primes.begin());
}

std::uint64_t PrimeTables::pi(double x) const {
    if (x < 2.0) return 0;
    if (x > static_cast<double>(limit) + 0.5)
        throw std::invalid_argument("PrimeTables::pi: x beyond table limit");
    return pi_u64(static_cast<std::uint64_t>(x));
}

bool PrimeTables::is_prime(std::uint64_t m) const {
    if (m < 2 || m > limit) return false;
    return smallest_prime_factor[m] == m;
}

FactoredInteger PrimeTables::factor(std::uint64_t m) const {
    if (m == 0 || m > limit)
        throw std::invalid_argument("PrimeTables::factor: need 1 <= m <= limit");
    FactoredInteger f;
    f.value = m;
    while (m > 1) {
        std::uint64_t p = smallest_prime_factor[m];
        std::uint32_t k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        f.factors.emplace_back(p, k);
    }
    return f;
}

std::uint64_t PrimeTables::nth_prime(std::uint64_t i) const {
    if (i >= primes.size()) throw std::out_of_range("PrimeTables::nth_prime");
    return primes[i];
}

std::uint64_t PrimeTables::checksum() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(limit);
    mix(primes.size());
    if (!primes.empty()) {
        mix(primes.back());
        mix(primes[primes.size() / 2]);
    }
    mix(prime_powers.size());
    return h;
}

std::uint64_t omega_mass_uniform(const PrimeTables& t, std::uint64_t n) {
    if (n > t.limit) throw std::invalid_argument("omega_mass_uniform: n beyond tables");
    std::uint64_t s = 0;
    for (const auto& pp : t.prime_powers) {
        if (pp.q > n) break;
        s += n / pp.q;
    }
    return s;
}

double omega_mean_independent(const PrimeTables& t, std::uint64_t n) {
    if (n > t.limit) throw std::invalid_argument("omega_mean_independent: n beyond tables");
    double s = 0;
    for (std::uint64_t p : t.primes) {
        if (p > n) break;
        s += 1.0 / static_cast<double>(p - 1);
    }
    return s;
}

}  // namespace primecouple
