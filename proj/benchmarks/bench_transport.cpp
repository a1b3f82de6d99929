#include <random>

#include <benchmark/benchmark.h>

#include "ukit/transport.hpp"

namespace {

ukit::Measure1D atoms(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::vector<double> x(n), p(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        x[i] = i + 0.5 * w(rng);
        s += p[i] = w(rng);
    }
    for (double& v : p) v /= s;
    return ukit::Measure1D::atoms(x, p);
}

void BM_QuantileAtoms(benchmark::State& state) {
    auto mu = atoms(static_cast<int>(state.range(0)), 1), nu = atoms(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(ukit::wasserstein(mu, nu, 1.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QuantileAtoms)->RangeMultiplier(4)->Range(8, 8192)->Complexity();

void BM_LpOracle(benchmark::State& state) {
    auto mu = atoms(static_cast<int>(state.range(0)), 1), nu = atoms(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(ukit::wasserstein_lp_oracle(mu, nu, 1.5));
}
BENCHMARK(BM_LpOracle)->RangeMultiplier(2)->Range(4, 64);

void BM_GaussianVsGrid(benchmark::State& state) {
    auto g = ukit::Measure1D::gaussian(0.3, 1.2);
    auto u = ukit::Measure1D::uniform(-1.0, 2.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ukit::wasserstein(g, u, 2.0));
}
BENCHMARK(BM_GaussianVsGrid)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
