#include "primecouple/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace primecouple {

namespace {

double check_base(double base) {
    if (!(base > 1)) throw std::domain_error("entropy base must exceed 1");
    return std::log(base);
}

double geometric_nats(double a) {
    if (!(a > 0) || !(a < 1)) throw std::domain_error("geometric parameter must sit in (0,1)");
    return -std::log1p(-a) - a / (1.0 - a) * std::log(a);
}

double poisson_nats(double mean) {
    if (!(mean >= 0)) throw std::domain_error("poisson mean must be nonnegative");
    if (mean == 0) return 0;
    double nats = mean - mean * std::log(mean);
    std::vector<double> pj;
    pj.push_back(std::exp(-mean));
    std::size_t j = 0;
    while (pj.back() > 1e-25 || static_cast<double>(j) < mean + 3) {
        ++j;
        pj.push_back(pj.back() * mean / static_cast<double>(j));
        if (j > 100000) break;
    }
    double tail = 0;  // P(>= j), built from the far end
    for (std::size_t i = pj.size(); i-- > 2;) {
        tail += pj[i];
        nats += tail * std::log(static_cast<double>(i));
    }
    return nats;
}

}  // namespace

double geometric_entropy(double a, double base) { return geometric_nats(a) / check_base(base); }

double geometric_entropy_series(double a, double base) {
    double lb = check_base(base);
    if (!(a > 0) || !(a < 1)) throw std::domain_error("geometric parameter must sit in (0,1)");
    double la = std::log(a);
    double nats = 0;
    double ak = 1;
    for (int k = 1; k < 1000000; ++k) {
        ak *= a;
        double lam = ak / k;
        if (lam < 1e-22) break;
        nats += lam * (1.0 - k * la);
    }
    return nats / lb;
}

double poisson_entropy(double mean, double base) { return poisson_nats(mean) / check_base(base); }

double partition_information(double a, double base) {
    double lb = check_base(base);
    if (!(a > 0) || !(a < 1)) throw std::domain_error("geometric parameter must sit in (0,1)");
    double nats = -geometric_nats(a);
    double ak = 1;
    for (int k = 1; k < 1000000; ++k) {
        ak *= a;
        double lam = ak / k;
        if (lam < 1e-18) break;
        nats += poisson_nats(lam);
    }
    if (nats < 0 && nats > -1e-12) nats = 0;
    return nats / lb;
}

double partition_information_tail_bound(double bound, double base) {
    double lb = check_base(base);
    if (!(bound >= 100)) throw std::domain_error("tail bound needs bound >= 100");
    return 1.1 / bound * (std::log(2.0) / lb);
}

double xi_entropy_sum(std::uint64_t n, double base) {
    double lb = check_base(base);
    double nats = 0;
    for (std::uint64_t i = 2; i <= n; ++i) {
        double p = 1.0 / static_cast<double>(i);
        nats += -p * std::log(p) - (1.0 - p) * std::log1p(-p);
    }
    return nats / lb;
}

double xi_entropy_leading(std::uint64_t n, double base) {
    double ln = std::log(static_cast<double>(n));
    return 0.5 * ln * ln / check_base(base);
}

namespace {

void cycle_walk(std::uint64_t remaining, std::uint64_t max_part, double logw, double& nats) {
    if (remaining == 0) {
        nats += -std::exp(logw) * logw;
        return;
    }
    std::uint64_t top = std::min(max_part, remaining);
    for (std::uint64_t part = top; part >= 1; --part) {
        double lpart = std::log(static_cast<double>(part));
        for (std::uint64_t c = 1; c * part <= remaining; ++c) {
            double lw = logw - static_cast<double>(c) * lpart -
                        std::lgamma(static_cast<double>(c) + 1.0);
            cycle_walk(remaining - c * part, part - 1, lw, nats);
        }
    }
}

}  // namespace

double cycle_entropy_bruteforce(std::uint64_t n, double base) {
    double lb = check_base(base);
    if (n < 1 || n > 40) throw std::invalid_argument("cycle entropy enumeration needs 1 <= n <= 40");
    double nats = 0;
    cycle_walk(n, n, 0.0, nats);
    return nats / lb;
}

}  // namespace primecouple
