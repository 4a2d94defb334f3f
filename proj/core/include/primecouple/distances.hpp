#pragma once

#include <cstdint>
#include <vector>

#include "primecouple/couplings.hpp"
#include "primecouple/prime_tables.hpp"
#include "primecouple/random_source.hpp"
#include "primecouple/stats.hpp"

namespace primecouple {

// Joint law of the exponent vector (C_p)_{p <= b} for a uniform integer in
// 1..n, side by side with the independent geometric model.  One point per
// b-smooth d <= n; the uniform mass at d is count/n with count exact, the
// independent mass is prod_{p<=b}(1-1/p) / d.
struct SmoothLawPoint {
    std::uint64_t d = 1;
    std::uint64_t count = 0;  // integers in 1..n whose b-smooth part is d
    double p_uniform = 0;
    double p_indep = 0;
};

struct SmoothVectorLaw {
    std::uint64_t b = 0, n = 0;
    std::vector<std::uint64_t> primes;    // primes <= b
    std::vector<SmoothLawPoint> points;   // ascending in d
    double indep_constant = 1;            // prod (1 - 1/p)
    double tail_mass_indep = 0;           // independent mass on d > n

    static SmoothVectorLaw build(std::uint64_t b, std::uint64_t n, const PrimeTables& tables);
};

// sum_d |P_uniform(d) - P_indep(d)| + tail, the unhalved variation distance
// between the two exponent-vector laws; b <= 30, n <= 1e6
double exact_dtv_small_primes(std::uint64_t b, std::uint64_t n, const PrimeTables& tables);

// (1/n) sum over b-smooth d of frac(n/d) * 2^{omega(d)}.  Terms with d <= n
// are exact rationals; n < d <= n 2^60 contribute 2^{omega(d)}/d directly and
// the rest is enclosed by remainder_bound.
struct CrudeU {
    double value = 0;
    double remainder_bound = 0;
};
CrudeU crude_u(std::uint64_t b, std::uint64_t n, const PrimeTables& tables);

// Mean and spread of the indel cost across fresh draws of the coupling.
RunningStat empirical_indel(const GrowContext& ctx, GrowMode mode, bool no_split,
                            std::uint64_t trials, RandomSource& rng);

// Law on positive integers for the transport oracle.
struct DiscreteLaw {
    std::vector<std::uint64_t> point;
    std::vector<double> prob;  // sums to 1
};

// Least expected indel cost over couplings of a and b, solved exactly by
// min-cost flow after rounding both laws to a common denominator of 1e6.
// rounding_l1 is the total probability moved by that rounding.
struct TransportResult {
    double value = 0;
    double rounding_l1 = 0;
};
TransportResult ot_oracle_small(const DiscreteLaw& a, const DiscreteLaw& b,
                                const PrimeTables& tables);

// Expected indel cost of the product (independent) coupling; reference upper
// bound for the transport oracle.
double product_coupling_cost(const DiscreteLaw& a, const DiscreteLaw& b,
                             const PrimeTables& tables);

}  // namespace primecouple
