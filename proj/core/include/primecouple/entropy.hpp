#pragma once

#include <cstdint>
#include <string>

namespace primecouple {

struct EntropyReport {
    std::string name;
    double value = 0;  // in units of log(base)
    double base = 2.0;
    double truncation_error = 0;
};

// -log(1-a) - (a/(1-a)) log a, closed form
double geometric_entropy(double a, double base = 2.0);
// the same quantity through the split means: sum_k (a^k/k)(1 - k log a)
double geometric_entropy_series(double a, double base = 2.0);

// mean + mean log(1/mean) + sum_{j>=2} P(>=j) log j
double poisson_entropy(double mean, double base = 2.0);

// d(a) = sum_k h_Poisson(a^k/k) - h_geometric(a): the information carried by
// splitting a geometric count into its prime-power multiplicities
double partition_information(double a, double base = 2.0);

// upper bound on sum over primes p > bound of d(1/p); d(1/p) < 1.1/p^2 in
// bits once p >= 100
double partition_information_tail_bound(double bound, double base = 2.0);

// sum_{i <= n} entropy of an indicator with mean 1/i
double xi_entropy_sum(std::uint64_t n, double base = 2.0);
// (log n)^2 / 2 reference
double xi_entropy_leading(std::uint64_t n, double base = 2.0);

// Entropy of the cycle-count vector of a uniform permutation of n, summed
// over partitions with mass prod_i 1/(i^{c_i} c_i!); n <= 40.
double cycle_entropy_bruteforce(std::uint64_t n, double base = 2.0);

}  // namespace primecouple
