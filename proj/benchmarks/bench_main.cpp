#include "heatdist/catalog.hpp"
#include "heatdist/evolve.hpp"
#include "heatdist/kernel.hpp"
#include "heatdist/spaces.hpp"
#include "heatdist/uniqueness.hpp"

#include <benchmark/benchmark.h>

using namespace heatdist;

static void BM_ThetaDeriv(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel::theta_deriv(m, 0.7, x));
        x = x > 3.0 ? -3.0 : x + 1e-3;
    }
}
BENCHMARK(BM_ThetaDeriv)->Arg(0)->Arg(2)->Arg(8);

static void BM_ConvolveGauss(benchmark::State& state) {
    const auto data = catalog::make("gauss");
    for (auto _ : state) benchmark::DoNotOptimize(evolve::convolve(data, 0.2, 0.4));
}
BENCHMARK(BM_ConvolveGauss);

static void BM_ConvolveStep(benchmark::State& state) {
    const auto data = catalog::make("step");
    for (auto _ : state) benchmark::DoNotOptimize(evolve::convolve(data, 0.01, 0.5));
}
BENCHMARK(BM_ConvolveStep);

static void BM_AlexNormOfSolution(benchmark::State& state) {
    const auto data = catalog::make(state.range(0) == 0 ? "step" : "non-lp");
    for (auto _ : state) benchmark::DoNotOptimize(evolve::field_norm(data, 0.1, 0).value);
}
BENCHMARK(BM_AlexNormOfSolution)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_WeightedNorm(benchmark::State& state) {
    const auto data = catalog::make("neg-gauss");
    for (auto _ : state) benchmark::DoNotOptimize(spaces::weighted_norm(data).value);
}
BENCHMARK(BM_WeightedNorm)->Unit(benchmark::kMillisecond);

static void BM_EulerianTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(uniqueness::EulerianTable(n)(n, n / 2));
}
BENCHMARK(BM_EulerianTable)->Arg(20)->Arg(100)->Arg(200);

static void BM_WeightG(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(uniqueness::WeightG(n)(0.37));
}
BENCHMARK(BM_WeightG)->Arg(4)->Arg(12)->Arg(20);

BENCHMARK_MAIN();
