#include "primecouple/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primecouple/special.hpp"

namespace primecouple {

double RunningStat::variance() const {
    if (n < 2) return 0.0;
    double m = mean();
    double v = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return v > 0 ? v : 0.0;
}

double RunningStat::stderr_mean() const {
    if (n < 2) return 0.0;
    return std::sqrt(variance() / static_cast<double>(n));
}

double chi_square_p(double stat, double df) {
    if (stat < 0 || df <= 0) throw std::invalid_argument("chi_square_p: bad arguments");
    return gamma_q(df / 2.0, stat / 2.0);
}

double chi_square_uniform_p(const std::vector<std::uint64_t>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform_p: need >= 2 cells");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return chi_square_p(stat, static_cast<double>(counts.size() - 1));
}

double chi_square_poisson_p(const std::vector<std::uint64_t>& histogram, double mean,
                            double min_expected) {
    std::uint64_t total = 0;
    for (auto c : histogram) total += c;
    if (total == 0) throw std::invalid_argument("chi_square_poisson_p: empty histogram");
    // expected counts, merging sparse high cells into one tail cell
    std::vector<double> exp_cells;
    std::vector<std::uint64_t> obs_cells;
    double pk = std::exp(-mean);  // P(K = 0)
    double cum = 0;
    std::uint64_t obs_used = 0;
    std::size_t k = 0;
    while (true) {
        double expected = pk * static_cast<double>(total);
        double tail_expected = static_cast<double>(total) * (1.0 - cum) - expected;
        if (tail_expected < min_expected && !exp_cells.empty()) break;
        exp_cells.push_back(expected);
        std::uint64_t obs = k < histogram.size() ? histogram[k] : 0;
        obs_cells.push_back(obs);
        obs_used += obs;
        cum += pk;
        ++k;
        pk *= mean / static_cast<double>(k);
        if (k > histogram.size() + 200) break;
    }
    // tail cell
    exp_cells.push_back(static_cast<double>(total) * (1.0 - cum));
    obs_cells.push_back(total - obs_used);
    // merge runs of low-expectation cells so every tested cell clears the floor
    double stat = 0;
    std::size_t cells = 0;
    double pend_e = 0;
    double pend_o = 0;
    for (std::size_t i = 0; i < exp_cells.size(); ++i) {
        pend_e += exp_cells[i];
        pend_o += static_cast<double>(obs_cells[i]);
        if (pend_e >= min_expected || i + 1 == exp_cells.size()) {
            double d = pend_o - pend_e;
            if (pend_e > 0) {
                stat += d * d / pend_e;
                ++cells;
            }
            pend_e = pend_o = 0;
        }
    }
    if (cells < 2) return 1.0;
    return chi_square_p(stat, static_cast<double>(cells - 1));
}

double ks_uniform_p(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks_uniform_p: no samples");
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::fabs(samples[i] - lo), std::fabs(samples[i] - hi)));
    }
    double sq = std::sqrt(n);
    return kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}

double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample_p: no samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0;
    std::size_t i = 0, j = 0;
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double ne = std::sqrt(na * nb / (na + nb));
    return kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
}

}  // namespace primecouple
