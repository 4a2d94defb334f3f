#include <benchmark/benchmark.h>

#include <cstdint>

#include "primecouple/couplings.hpp"
#include "primecouple/exact_densities.hpp"
#include "primecouple/mertens.hpp"
#include "primecouple/prime_tables.hpp"
#include "primecouple/random_source.hpp"
#include "primecouple/samplers.hpp"

namespace {

using primecouple::GrowContext;
using primecouple::GrowMode;
using primecouple::MertensMap;
using primecouple::MertensVariant;
using primecouple::PrimeTables;
using primecouple::QuadratureSpec;
using primecouple::RandomSource;

const PrimeTables& tables_1e6() {
    static const PrimeTables t = PrimeTables::build(1000000);
    return t;
}

const MertensMap& mertens_2e6() {
    static const MertensMap m = MertensMap::build(MertensVariant::one_over_kq, 2000000);
    return m;
}

const GrowContext& sim_ctx_1000() {
    static const GrowContext c = GrowContext::build(1000, tables_1e6());
    return c;
}

const GrowContext& uni_ctx_1000() {
    static const GrowContext c =
        GrowContext::build_uniformizing(1000, tables_1e6(), QuadratureSpec{}, "");
    return c;
}

void BM_FellerSample(benchmark::State& state) {
    RandomSource rng(7, 0);
    std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(primecouple::feller_sample(n, 1000.0, rng));
}
BENCHMARK(BM_FellerSample)->Arg(100)->Arg(1000)->Arg(10000);

void BM_GrowIntegerSimulate(benchmark::State& state) {
    const GrowContext& ctx = sim_ctx_1000();
    RandomSource rng(7, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(primecouple::grow_integer(ctx, rng, GrowMode::simulate));
}
BENCHMARK(BM_GrowIntegerSimulate);

void BM_GrowIntegerExactUniform(benchmark::State& state) {
    const GrowContext& ctx = uni_ctx_1000();
    RandomSource rng(7, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(primecouple::grow_integer(ctx, rng, GrowMode::exact_uniform));
}
BENCHMARK(BM_GrowIntegerExactUniform);

void BM_PdCouple(benchmark::State& state) {
    RandomSource rng(7, 3);
    std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(primecouple::pd_couple(n, mertens_2e6(), tables_1e6(), rng));
}
BENCHMARK(BM_PdCouple)->Arg(10000)->Arg(1000000);

void BM_FactorUniform(benchmark::State& state) {
    RandomSource rng(7, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            primecouple::sample_uniform_factored(1000000, tables_1e6(), rng));
}
BENCHMARK(BM_FactorUniform);

void BM_ScaleInvariantWindow(benchmark::State& state) {
    RandomSource rng(7, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(primecouple::sample_scale_invariant_window(1e-6, 16.0, rng));
}
BENCHMARK(BM_ScaleInvariantWindow);

void BM_MertensH(benchmark::State& state) {
    const MertensMap& m = mertens_2e6();
    RandomSource rng(7, 6);
    for (auto _ : state) benchmark::DoNotOptimize(m.h(0.01 + 10.0 * rng.uniform01()));
}
BENCHMARK(BM_MertensH);

void BM_PmfJ(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(primecouple::pmf_J(100, tables_1e6(), QuadratureSpec{}));
}
BENCHMARK(BM_PmfJ);

void BM_SamplePd(benchmark::State& state) {
    RandomSource rng(7, 7);
    for (auto _ : state) benchmark::DoNotOptimize(primecouple::sample_pd(rng));
}
BENCHMARK(BM_SamplePd);

}  // namespace

BENCHMARK_MAIN();
