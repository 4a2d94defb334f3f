#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "primecouple/prime_tables.hpp"
#include "primecouple/random_source.hpp"
#include "primecouple/samplers.hpp"
#include "primecouple/stats.hpp"

using namespace primecouple;

namespace {

const PrimeTables& tables() {
    static PrimeTables t = PrimeTables::build(100000);
    return t;
}

}  // namespace

TEST_CASE("free-function wrappers match their laws") {
    RandomSource rng(11, 0);
    RunningStat g, p, e;
    for (int i = 0; i < 50000; ++i) {
        g.add(static_cast<double>(sample_geometric(0.3, rng)));
        p.add(static_cast<double>(sample_poisson(4.0, rng)));
        e.add(sample_exponential(3.0, rng));
    }
    CHECK(std::abs(g.mean() - 0.3 / 0.7) <= 5 * g.stderr_mean());
    CHECK(std::abs(p.mean() - 4.0) <= 5 * p.stderr_mean());
    CHECK(std::abs(e.mean() - 1.0 / 3.0) <= 5 * e.stderr_mean());
}

TEST_CASE("size-biased order picks by weight") {
    RandomSource rng(12, 0);
    std::vector<WeightedItem> items{{2, 1.0}, {3, 2.0}};
    int first3 = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        auto perm = size_biased_order(items, rng);
        REQUIRE(perm.size() == 2);
        REQUIRE(perm[0].identity + perm[1].identity == 5);
        first3 += perm[0].identity == 3;
    }
    double p = static_cast<double>(first3) / trials;
    CHECK(std::abs(p - 2.0 / 3.0) <= 0.015);
}

TEST_CASE("harmonic law") {
    HarmonicLaw law = HarmonicLaw::build(10);
    RandomSource rng(13, 0);
    double h10 = 0;
    for (int i = 1; i <= 10; ++i) h10 += 1.0 / i;
    std::vector<std::uint64_t> counts(10, 0);
    const int trials = 60000;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t j = law.sample(rng);
        REQUIRE(j >= 1);
        REQUIRE(j <= 10);
        ++counts[j - 1];
    }
    for (int j = 1; j <= 10; ++j) {
        double want = (1.0 / j) / h10;
        double got = static_cast<double>(counts[j - 1]) / trials;
        double se = std::sqrt(want * (1 - want) / trials);
        CHECK(std::abs(got - want) <= 5 * se);
    }
    RandomSource rng2(13, 1);
    std::uint64_t one = sample_harmonic(1, rng2);
    CHECK(one == 1);
}

TEST_CASE("uniform factored sampler") {
    RandomSource rng(14, 0);
    std::vector<std::uint64_t> counts(100, 0);
    for (int i = 0; i < 100000; ++i) {
        FactoredInteger f = sample_uniform_factored(100, tables(), rng);
        REQUIRE(f.value >= 1);
        REQUIRE(f.value <= 100);
        std::uint64_t prod = 1;
        for (auto [p, e] : f.factors)
            for (std::uint32_t k = 0; k < e; ++k) prod *= p;
        REQUIRE(prod == f.value);
        ++counts[f.value - 1];
    }
    CHECK(chi_square_uniform_p(counts) > 1e-4);
}

TEST_CASE("scale-invariant window") {
    RandomSource rng(15, 0);
    // mean count over (lo, hi] is log(hi/lo)
    RunningStat c12, c1e;
    for (int i = 0; i < 30000; ++i) {
        PointWindow a = sample_scale_invariant_window(1.0, 2.0, rng);
        for (std::size_t k = 0; k < a.points.size(); ++k) {
            REQUIRE(a.points[k] >= 1.0);
            REQUIRE(a.points[k] <= 2.0);
            if (k) REQUIRE(a.points[k] <= a.points[k - 1]);
        }
        c12.add(static_cast<double>(a.points.size()));
        PointWindow b = sample_scale_invariant_window(1.0, std::exp(1.0), rng);
        c1e.add(static_cast<double>(b.points.size()));
    }
    CHECK(std::abs(c12.mean() - std::log(2.0)) <= 5 * c12.stderr_mean());
    CHECK(std::abs(c1e.mean() - 1.0) <= 5 * c1e.stderr_mean());
    CHECK_THROWS(sample_scale_invariant_window(2.0, 1.0, rng));
}

TEST_CASE("labeled square thinning") {
    RandomSource rng(16, 0);
    RunningStat count;
    for (int i = 0; i < 30000; ++i) {
        auto pts = sample_labeled_square(2.0, rng);
        for (auto [w, y] : pts) {
            REQUIRE(w >= 0.0);
            REQUIRE(w <= 2.0);
            REQUIRE(y >= 0.0);
            REQUIRE(y <= 2.0);
        }
        count.add(static_cast<double>(pts.size()));
    }
    // integral of e^{-wy} over (0,2]^2 = gamma + log 4 + E1(4)
    double want = 0.5772156649015329 + std::log(4.0) + 0.0037793524098489063;
    CHECK(std::abs(count.mean() - want) <= 5 * count.stderr_mean());
}

TEST_CASE("stick breaking stays ranked and nearly exhausts the mass") {
    RandomSource rng(17, 0);
    RunningStat v1;
    int below_half = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        PDVector pd = sample_pd(rng);
        REQUIRE(!pd.v.empty());
        REQUIRE(pd.residual <= 1e-8);
        REQUIRE(pd.residual >= 0.0);
        double sum = pd.residual;
        for (std::size_t k = 0; k < pd.v.size(); ++k) {
            REQUIRE(pd.v[k] > 0.0);
            if (k) REQUIRE(pd.v[k] <= pd.v[k - 1]);
            sum += pd.v[k];
        }
        REQUIRE(std::abs(sum - 1.0) <= 1e-12);
        v1.add(pd.v[0]);
        below_half += pd.v[0] <= 0.5;
    }
    // E V_1 = 0.6243299
    CHECK(std::abs(v1.mean() - 0.6243299) <= 5 * v1.stderr_mean());
    double p = static_cast<double>(below_half) / trials;
    CHECK(std::abs(p - (1.0 - std::log(2.0))) <= 0.015);
}

TEST_CASE("geometric split partitions the whole") {
    RandomSource rng(18, 0);
    // conditioned on z = 2 the two shapes are equally likely for every a
    int a2 = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        auto parts = split_geometric(2, 0.6, rng);
        std::uint64_t total = 0;
        for (std::size_t j = 0; j < parts.size(); ++j)
            total += (j + 1) * parts[j];
        REQUIRE(total == 2);
        a2 += parts.size() >= 2 && parts[1] == 1;
    }
    double p = static_cast<double>(a2) / trials;
    CHECK(std::abs(p - 0.5) <= 0.015);
}

TEST_CASE("geometric split marginals match the poisson limit decomposition") {
    RandomSource rng(19, 0);
    const double a = 0.37;
    RunningStat a1, a2;
    int a1zero = 0, both_zero = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t z = rng.geometric(a);
        auto parts = split_geometric(z, a, rng);
        std::uint64_t total = 0;
        for (std::size_t j = 0; j < parts.size(); ++j)
            total += (j + 1) * parts[j];
        REQUIRE(total == z);
        double c1 = parts.empty() ? 0.0 : parts[0];
        double c2 = parts.size() < 2 ? 0.0 : parts[1];
        a1.add(c1);
        a2.add(c2);
        a1zero += c1 == 0.0;
        both_zero += c1 == 0.0 && c2 == 0.0;
    }
    // A_j ~ Poisson(a^j / j), independent across j
    CHECK(std::abs(a1.mean() - a) <= 5 * a1.stderr_mean());
    CHECK(std::abs(a2.mean() - a * a / 2) <= 5 * a2.stderr_mean());
    double t = trials;
    CHECK(std::abs(static_cast<double>(a1zero) / t - std::exp(-a)) <= 0.007);
    CHECK(std::abs(static_cast<double>(both_zero) / t - std::exp(-a - a * a / 2)) <= 0.007);
}
