#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "primecouple/prime_tables.hpp"
#include "primecouple/random_source.hpp"

namespace primecouple {

struct WeightedItem {
    std::uint64_t identity = 0;
    double weight = 0;  // > 0
    double label = 0;   // Exp(1) / weight once assigned
};

// Points of one window of the self-similar point process with intensity dx/x,
// stored in decreasing order.
struct PointWindow {
    double lo = 0, hi = 0;
    std::vector<double> points;
};

// Nonincreasing component vector with sum in [1 - residual, 1].
struct PDVector {
    std::vector<double> v;
    double residual = 0;
};

std::uint64_t sample_geometric(double a, RandomSource& rng);
std::uint64_t sample_poisson(double mean, RandomSource& rng);
double sample_exponential(double rate, RandomSource& rng);

// Assigns labels S_i / weight_i and returns the items sorted by increasing
// label, so the front item is picked with probability weight / total weight.
// Exact label ties are re-drawn.
std::vector<WeightedItem> size_biased_order(std::vector<WeightedItem> items, RandomSource& rng);

// P(I = i) proportional to 1/i on {1, ..., n}
struct HarmonicLaw {
    std::uint64_t n = 0;
    std::vector<double> cdf;
    static HarmonicLaw build(std::uint64_t n);
    std::uint64_t sample(RandomSource& rng) const;
};
std::uint64_t sample_harmonic(std::uint64_t n, RandomSource& rng);

FactoredInteger sample_uniform_factored(std::uint64_t n, const PrimeTables& tables,
                                        RandomSource& rng);

PointWindow sample_scale_invariant_window(double lo, double hi, RandomSource& rng);

// Poisson process on (0, b]^2 with intensity e^{-wy} dw dy, sampled by
// thinning a unit-rate proposal.  Returns kept (w, y) pairs.
std::vector<std::pair<double, double>> sample_labeled_square(double b, RandomSource& rng);

// Stick-breaking: X_k = X_{k-1} U_k below 1, components are the spacings
// ranked; stops once the unbroken remainder drops below mass_tol.
PDVector sample_pd(RandomSource& rng, double mass_tol = 1e-8);

// Conditional law of independent A_k ~ Poisson(a^k / k) given sum k A_k = z.
// The law does not depend on a.  Returns counts[j] = A_{j+1}.
// Exact: partitions of z enumerated for z <= 40, spacing construction beyond.
std::vector<std::uint32_t> split_geometric(std::uint64_t z, double a, RandomSource& rng);

}  // namespace primecouple
