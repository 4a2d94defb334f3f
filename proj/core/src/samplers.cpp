#include "primecouple/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace primecouple {

std::uint64_t sample_geometric(double a, RandomSource& rng) { return rng.geometric(a); }
std::uint64_t sample_poisson(double mean, RandomSource& rng) { return rng.poisson(mean); }
double sample_exponential(double rate, RandomSource& rng) { return rng.exponential(rate); }

std::vector<WeightedItem> size_biased_order(std::vector<WeightedItem> items, RandomSource& rng) {
    if (items.size() > 1000000) throw std::invalid_argument("size_biased_order: too many items");
    for (auto& it : items) {
        if (!(it.weight > 0)) throw std::invalid_argument("size_biased_order: weight <= 0");
    }
    while (true) {
        for (auto& it : items) it.label = rng.exponential(it.weight);
        std::sort(items.begin(), items.end(),
                  [](const WeightedItem& a, const WeightedItem& b) { return a.label < b.label; });
        bool tie = false;
        for (std::size_t i = 1; i < items.size(); ++i)
            if (items[i].label == items[i - 1].label) tie = true;
        if (!tie) return items;
    }
}

HarmonicLaw HarmonicLaw::build(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("HarmonicLaw: n == 0");
    HarmonicLaw law;
    law.n = n;
    law.cdf.resize(n);
    double acc = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        acc += 1.0 / static_cast<double>(i);
        law.cdf[i - 1] = acc;
    }
    return law;
}

std::uint64_t HarmonicLaw::sample(RandomSource& rng) const {
    double u = rng.uniform01() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<std::uint64_t>(it - cdf.begin()) + 1;
}

std::uint64_t sample_harmonic(std::uint64_t n, RandomSource& rng) {
    return HarmonicLaw::build(n).sample(rng);
}

FactoredInteger sample_uniform_factored(std::uint64_t n, const PrimeTables& tables,
                                        RandomSource& rng) {
    if (n == 0 || n > tables.limit)
        throw std::invalid_argument("sample_uniform_factored: need 1 <= n <= tables.limit");
    return tables.factor(1 + rng.uniform_int(n));
}

PointWindow sample_scale_invariant_window(double lo, double hi, RandomSource& rng) {
    if (!(lo > 0 && hi > lo)) throw std::invalid_argument("window: need 0 < lo < hi");
    PointWindow w;
    w.lo = lo;
    w.hi = hi;
    double ratio = std::log(hi / lo);
    std::uint64_t count = rng.poisson(ratio);
    w.points.resize(count);
    for (auto& x : w.points) x = lo * std::exp(ratio * rng.uniform01());
    std::sort(w.points.begin(), w.points.end(), std::greater<double>());
    return w;
}

std::vector<std::pair<double, double>> sample_labeled_square(double b, RandomSource& rng) {
    if (!(b > 0 && b <= 100)) throw std::invalid_argument("sample_labeled_square: need 0 < b <= 100");
    std::vector<std::pair<double, double>> kept;
    std::uint64_t proposals = rng.poisson(b * b);
    for (std::uint64_t i = 0; i < proposals; ++i) {
        double w = b * rng.uniform_pos();
        double y = b * rng.uniform_pos();
        if (rng.uniform01() < std::exp(-w * y)) kept.emplace_back(w, y);
    }
    return kept;
}

PDVector sample_pd(RandomSource& rng, double mass_tol) {
    if (!(mass_tol > 0 && mass_tol < 0.1)) throw std::invalid_argument("sample_pd: bad mass_tol");
    PDVector out;
    double x = 1.0;
    while (x >= mass_tol) {
        double next = x * rng.uniform_pos();
        out.v.push_back(x - next);
        x = next;
    }
    out.residual = x;
    std::sort(out.v.begin(), out.v.end(), std::greater<double>());
    return out;
}

/* ---- conditional split of a geometric count ---- */

namespace {

struct SplitTable {
    // each row: cumulative probability, then part-multiplicities
    std::vector<double> cum;
    std::vector<std::vector<std::uint32_t>> parts;
};

void enumerate_partitions(std::uint32_t remaining, std::uint32_t max_part, double weight,
                          std::vector<std::uint32_t>& mult, SplitTable& table) {
    if (remaining == 0) {
        table.cum.push_back(weight);  // raw weight; prefix-summed later
        table.parts.push_back(mult);
        return;
    }
    for (std::uint32_t part = std::min(max_part, remaining); part >= 1; --part) {
        std::uint32_t used = 0;
        double w = weight;
        mult[part - 1] = 0;
        // take m copies of `part`; weight factor (1/part)^m / m!
        for (std::uint32_t m = 1; part * m <= remaining; ++m) {
            used = part * m;
            w *= 1.0 / (static_cast<double>(part) * m);
            mult[part - 1] = m;
            if (part == 1) {
                if (used == remaining) enumerate_partitions(0, 0, w, mult, table);
            } else {
                enumerate_partitions(remaining - used, part - 1, w, mult, table);
            }
        }
        mult[part - 1] = 0;
    }
}

const SplitTable& split_table_for(std::uint32_t z) {
    static std::mutex mu;
    static std::map<std::uint32_t, SplitTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(z);
    if (it != cache.end()) return it->second;
    SplitTable table;
    std::vector<std::uint32_t> mult(z, 0);
    enumerate_partitions(z, z, 1.0, mult, table);
    double total = 0;
    for (double w : table.cum) total += w;
    double acc = 0;
    for (double& c : table.cum) {
        acc += c / total;
        c = acc;
    }
    return cache.emplace(z, std::move(table)).first->second;
}

// cycle type of a uniform permutation of z elements via the spacing word:
// positions of ones in 1 xi_2 ... xi_z 1, xi_i ~ Bernoulli(1/i)
std::vector<std::uint32_t> split_by_spacings(std::uint64_t z, RandomSource& rng) {
    std::vector<std::uint32_t> counts(z, 0);
    std::uint64_t prev = 1;
    while (prev <= z) {
        double u = rng.uniform_pos();
        double next_d = std::ceil(static_cast<double>(prev) / u);  // P(next > j) = prev / j
        std::uint64_t next =
            next_d > static_cast<double>(z) ? z + 1 : static_cast<std::uint64_t>(next_d);
        if (next <= prev) next = prev + 1;
        if (next > z + 1) next = z + 1;
        counts[next - prev - 1] += 1;
        prev = next;
    }
    return counts;
}

}  // namespace

std::vector<std::uint32_t> split_geometric(std::uint64_t z, double a, RandomSource& rng) {
    if (!(a > 0 && a < 1)) throw std::invalid_argument("split_geometric: need 0 < a < 1");
    if (z == 0) return {};
    if (z > 40) return split_by_spacings(z, rng);
    const SplitTable& table = split_table_for(static_cast<std::uint32_t>(z));
    double u = rng.uniform01();
    auto it = std::upper_bound(table.cum.begin(), table.cum.end(), u);
    std::size_t idx = (it == table.cum.end()) ? table.cum.size() - 1
                                              : static_cast<std::size_t>(it - table.cum.begin());
    return table.parts[idx];
}

}  // namespace primecouple
