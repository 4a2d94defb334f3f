#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "primecouple/exact_densities.hpp"
#include "primecouple/mertens.hpp"
#include "primecouple/prime_tables.hpp"
#include "primecouple/quadrature.hpp"
#include "primecouple/random_source.hpp"
#include "primecouple/samplers.hpp"

namespace primecouple {

// One draw of the shared-word permutation coupling.  The word of cycle-closing
// indicators is kept sparsely as the ascending positions of its ones.
struct FellerSample {
    std::uint64_t n = 0;
    std::uint64_t horizon = 0;
    std::vector<std::uint64_t> one_positions;     // position 1 always present
    std::vector<std::uint32_t> cycle_counts_n;    // C_i(n), index i-1, i in 1..n
    std::vector<std::uint32_t> cycle_counts_inf;  // horizon-truncated C_i, i in 1..n
    std::uint64_t first_cycle_len = 0;            // A(n): n+1 minus the last one <= n
    std::uint64_t j_perm = 0;                     // n - A(n)
    double truncation_bound = 0.0;                // n / horizon

    // dense 1-indexed word xi_1..xi_upto (byte per bit), for inspection
    std::vector<std::uint8_t> xi_bits(std::uint64_t upto) const;
};

// Ones are skip-sampled (next one after t lands at floor(t/U)+1), so cost is
// the expected number of ones, not the horizon.
FellerSample feller_sample(std::uint64_t n, double horizon_factor, RandomSource& rng);
FellerSample feller_from_ones(std::uint64_t n, std::uint64_t horizon,
                              const std::vector<std::uint64_t>& one_positions);
// xi[0] is the word's position 1 and must be 1
FellerSample feller_from_word(std::uint64_t n, const std::vector<std::uint8_t>& xi);

enum class GrowMode { simulate, exact_uniform };

// Inverse-CDF table for the largest label among prime-power copies whose
// prime part exceeds n.  log G is interpolated cubically over log t; the
// inversion error on t is below inversion_tol relatively.
struct MaxLabelTable {
    std::uint64_t n = 0;
    double t_min = 0, t_max = 0;
    double inversion_tol = 1e-10;
    std::vector<double> log_t;  // ascending
    std::vector<double> log_g;  // descending, G strictly decreasing

    static MaxLabelTable build(std::uint64_t n, const PrimeTables& tables);
    // -log of the survival-style target at t (direct sum to 10n, integral tail)
    static double log_gap_rate(std::uint64_t n, const PrimeTables& tables, double t);
    double sample(RandomSource& rng) const;
    double invert(double g) const;  // t with G(t) = g, clamped to the grid
};

// Per-n state shared read-only across trials.
struct GrowContext {
    std::uint64_t n = 0;
    const PrimeTables* tables = nullptr;
    MaxLabelTable max_label;
    std::vector<double> race_prefix;  // prefix sums of -log(1 - 1/p), primes <= n
    bool uniformizing = false;
    Pmf f_n;                     // law of J*P0 (exact_uniform only)
    std::vector<double> accept;  // accept[i-1] = min(f_n(i), 1/n) / f_n(i)
    std::vector<double> g_cum;   // normalized deficiency CDF

    static GrowContext build(std::uint64_t n, const PrimeTables& tables);
    static GrowContext build_uniformizing(std::uint64_t n, const PrimeTables& tables,
                                          const QuadratureSpec& quad,
                                          const std::string& cache_dir);
};

struct GrownInteger {
    std::uint64_t n = 0;
    std::vector<WeightedItem> prime_power_items;          // identity q, weight log q
    double big_label_tail = 0.0;                          // M
    std::vector<std::pair<std::uint64_t, std::uint32_t>> z;  // (p, Z_p), nonzero only
    std::uint64_t j = 1;
    std::uint64_t p0 = 1;
    std::uint64_t value = 0;       // N
    bool coupled_event = false;    // factorization of N matches Z exactly
    std::uint64_t insertions = 0;  // sum over p of (C_p(N) - Z_p)^+
    std::uint64_t deletions = 0;   // sum over p of (Z_p - C_p(N))^+
    std::uint64_t indel = 0;       // insertions + deletions
};

GrownInteger grow_integer(const GrowContext& ctx, RandomSource& rng, GrowMode mode,
                          bool no_split = false);
// Convenience front that builds a throwaway context; exact_uniform needs the
// precomputed f_n and is rejected here.
GrownInteger grow_integer(std::uint64_t n, const PrimeTables& tables, RandomSource& rng,
                          GrowMode mode);

// sum over p of |v_p(a) - v_p(b)|
std::uint64_t indel_count(const FactoredInteger& a, const FactoredInteger& b);

// "n,seed,J,P0,N,flag,indel"
std::string transcript_line(const GrownInteger& g, std::uint64_t seed);

// One draw of the spacings-to-prime-powers coupling against the ranked
// stick-breaking vector scaled by log n.
struct PDCoupledSample {
    std::uint64_t n = 0;
    std::vector<double> spacings;       // Y_i, i >= 1, truncated at the cutoff
    std::vector<std::uint64_t> q_star;  // Q_i per spacing (1 when below e^-gamma)
    bool j_overflow = false;            // J* > n
    std::uint64_t j_star = 1;           // exact product, 0 once overflowed
    std::uint64_t p0_star = 1;
    std::vector<double> pd_scaled;      // ranked (log n - X_1, Y_1, Y_2, ...)
    double l1_distance = 0.0;  // ranked log prime factors of J*P0* vs pd_scaled
    double d_sum = 0.0;        // sum |h(Y_i) - Y_i|
    double residual = 0.0;     // stick mass below the cutoff (missing-l1 bound)
};

// cutoff <= 0 selects the default 1e-9 * log n; must stay below e^-gamma.
// mertens must be the 1/kq variant with limit >= 2n.
PDCoupledSample pd_couple(std::uint64_t n, const MertensMap& mertens, const PrimeTables& tables,
                          RandomSource& rng, double cutoff = 0.0);

}  // namespace primecouple
