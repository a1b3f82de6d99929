#include <benchmark/benchmark.h>

#include "ukit/discrete.hpp"

namespace {

using namespace ukit::discrete;

void BM_Covariantize(benchmark::State& state) {
    auto m = random_povm(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(covariantize(m).effects.data());
}
BENCHMARK(BM_Covariantize)->Arg(3)->Arg(8)->Arg(16);

void BM_MetricErrorFinite(benchmark::State& state) {
    auto m = random_povm(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(metric_error_finite(m, Target::q, 1.0));
}
BENCHMARK(BM_MetricErrorFinite)->DenseRange(3, 9, 3)->Unit(benchmark::kMillisecond);

void BM_PreparationDiagram(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(preparation_diagram(static_cast<int>(state.range(0)), 10000).samples.data());
}
BENCHMARK(BM_PreparationDiagram)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
