#include <benchmark/benchmark.h>

#include "ukit/spectral.hpp"

namespace {

void BM_GridSolve(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0)) / 2.0, b = static_cast<double>(state.range(1)) / 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(ukit::ground_energies(a, b).g);
}
// Exponents are passed doubled: (2, 4) means alpha = 1, beta = 2.
BENCHMARK(BM_GridSolve)->Args({4, 4})->Args({2, 4})->Args({3, 3})->Args({8, 8})->Args({2, 16})->Unit(benchmark::kMillisecond);

void BM_BoxGalerkin(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ukit::ground_energies(a, ukit::Exponent::infinity()).g);
}
BENCHMARK(BM_BoxGalerkin)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Oscillator(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ukit::ground_energies_oscillator(1.0, 3.0, n).g);
}
BENCHMARK(BM_Oscillator)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ApplyHamiltonian(benchmark::State& state) {
    ukit::SolverConfig cfg;
    cfg.grid_points = static_cast<std::size_t>(state.range(0));
    std::vector<double> psi(cfg.grid_points, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(ukit::apply_hamiltonian(psi, 1.5, 3.0, cfg).h_psi.data());
}
BENCHMARK(BM_ApplyHamiltonian)->Arg(1024)->Arg(8192)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
