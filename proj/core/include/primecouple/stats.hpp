#pragma once

#include <cstdint>
#include <vector>

namespace primecouple {

// Mergeable first/second-moment accumulator.
struct RunningStat {
    std::uint64_t n = 0;
    double sum = 0, sumsq = 0;

    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    void merge(const RunningStat& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const;     // sample variance
    double stderr_mean() const;  // sqrt(variance / n)
};

// chi-square tail p-value
double chi_square_p(double stat, double df);

// counts over equally likely cells
double chi_square_uniform_p(const std::vector<std::uint64_t>& counts);

// histogram[k] = number of observations equal to k, tested against Poisson(mean);
// cells with expectation below min_expected are merged into the tail
double chi_square_poisson_p(const std::vector<std::uint64_t>& histogram, double mean,
                            double min_expected = 5.0);

// one-sample Kolmogorov-Smirnov against Uniform(0,1)
double ks_uniform_p(std::vector<double> samples);

double ks_two_sample_p(std::vector<double> a, std::vector<double> b);

}  // namespace primecouple
