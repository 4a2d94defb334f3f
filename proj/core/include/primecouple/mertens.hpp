#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primecouple/prime_tables.hpp"

namespace primecouple {

inline constexpr double kEulerGamma = 0.5772156649015329;
// gamma - sum_{p, k>=2} 1/(k p^k)
inline constexpr double kPrimeReciprocalConstant = 0.2614972128476428;

enum class MertensVariant {
    one_over_p,   // jumps 1/p at primes, base constant B
    one_over_kq,  // jumps 1/(k q) at prime powers q = p^k, base constant gamma
};

// Step function f(x) = -C + sum over breakpoints with log q <= x of the jump,
// together with the inverse-style map h and the log-weighted remainder.
struct MertensMap {
    MertensVariant variant = MertensVariant::one_over_kq;
    std::uint64_t limit = 0;
    double base_constant = 0;  // C subtracted at 0+

    // parallel arrays, ascending in q
    std::vector<double> log_q;
    std::vector<double> f_cum;  // f(log q) inclusive of the jump at q
    std::vector<std::uint64_t> q;
    std::vector<std::uint64_t> p;
    std::vector<std::uint8_t> k;

    static MertensMap build(MertensVariant v, std::uint64_t limit);

    std::size_t size() const { return q.size(); }
    double jump(std::size_t i) const;
    double jump_sum() const { return f_cum.empty() ? 0.0 : f_cum.back() + base_constant; }

    // f(x) for x > 0; falls back to log x once e^x is past the table limit
    double f(double x) const;

    // h(x) = 0 for x <= e^{-C}, else log q for the unique breakpoint with
    // log x in (f(log q -), f(log q)]; throws past the table's reach
    double h(double x) const;
    std::optional<PrimePower> h_breakpoint(double x) const;

    // sum_{q <= x} log q * jump(q) - log x
    double chebyshev_remainder(double x) const;
};

// Low-memory pass: sum of jumps over breakpoints q <= limit for the variant,
// evaluated at each threshold in `bounds` (ascending).  Supports limits to 1e8
// without holding per-breakpoint arrays.
std::vector<double> streamed_jump_prefix(MertensVariant v, std::uint64_t limit,
                                         const std::vector<std::uint64_t>& bounds);

// gamma - sum_{p <= p_limit, k >= 2, k p^k <= kq_cap} 1/(k p^k)
double recompute_prime_reciprocal_constant(const PrimeTables& tables,
                                           std::uint64_t p_limit = 1000000,
                                           double kq_cap = 1e12);

}  // namespace primecouple
