#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primecouple/mertens.hpp"
#include "primecouple/prime_tables.hpp"
#include "primecouple/quadrature.hpp"

namespace primecouple {

// Probability mass function on {1, ..., n}.
struct Pmf {
    std::uint64_t n = 0;
    std::vector<double> mass;  // mass[i-1] = P(X = i)
    double tolerance = 0.0;    // accumulated error budget of the construction
    double c_max = 0.0;        // largest integration cutoff used, 0 if none
    double total() const;
    double at(std::uint64_t i) const;  // 1-based, throws out of range
};

// Law of the anchored divisor J(n).  One 1-D quadrature per support point;
// the infinite prime-power tail enters through -zeta'/zeta so no series
// truncation is involved.
Pmf pmf_J(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad);

// Unhalved L1 distance between a pmf and the harmonic law P(H=i) = (1/i)/H_n.
double l1_J_harmonic(const Pmf& pj);
double dtv_J_harmonic(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad);

// Law of the product J(n) * P0(n), where P0 is uniform on {1} and the primes
// <= n/J given J.
Pmf pmf_JP0_from(const Pmf& pj, const PrimeTables& tables);
Pmf pmf_JP0(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad);

// The three equivalent forms of the total variation distance to uniform.
struct TvForms {
    double positive;  // sum of (f(i) - 1/n)^+
    double negative;  // sum of (1/n - f(i))^+
    double half_l1;   // half the L1 distance
};
TvForms tv_forms_uniform(const Pmf& f);
double dtv_JP0_uniform(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad);

// Smoothed comparators for the J*P0 density at m in 1..n.
// g uses the exact prime-counting ladder, h its log approximation.
double g_fun(std::uint64_t n, std::uint64_t m, const PrimeTables& tables);
double h_fun(std::uint64_t n, std::uint64_t m, const PrimeTables& tables);

// Area between the prime-reciprocal step map (1/kq variant) and log x.
struct B0Result {
    double value;           // integral of |f(x) - log x| up to x_max
    double analytic_piece;  // signed closed form over (0, log 2)
    double abs_correction;  // extra area where f - log x changes sign there
    double numeric_piece;   // contribution from (log 2, x_max)
    double tail_bound;      // bound on the neglected (x_max, infinity) area
    double x_max;
};
B0Result b0_breakdown(const MertensMap& mertens, const QuadratureSpec& quad);
double b0_integral(const MertensMap& mertens, const QuadratureSpec& quad);

// Mean count of a labeled square region: integral of (1-e^-u)/u over (0, b^2).
double region_mean(double b, const QuadratureSpec& quad);
// Same quantity through the exponential-integral identity, for cross-checks.
double region_mean_identity(double b);

// Textual pmf cache, format "primecouple-pmf v1".  Stores kind, n, the prime
// table checksum, quadrature tolerances, accumulated tolerance, c_max and the
// masses; loads only on an exact key match.  Writes go through a temp file
// and a rename.
std::string pmf_cache_name(const char* kind, std::uint64_t n, std::uint64_t checksum,
                           const QuadratureSpec& quad);
bool pmf_cache_load(const std::string& path, const char* kind, std::uint64_t n,
                    std::uint64_t checksum, const QuadratureSpec& quad, Pmf* out);
void pmf_cache_store(const std::string& path, const char* kind, const Pmf& pmf,
                     std::uint64_t checksum, const QuadratureSpec& quad);

// Cached fronts: cache_dir may be empty to force a fresh computation.
Pmf pmf_J_cached(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad,
                 const std::string& cache_dir);
Pmf pmf_JP0_cached(std::uint64_t n, const PrimeTables& tables, const QuadratureSpec& quad,
                   const std::string& cache_dir);

}  // namespace primecouple
