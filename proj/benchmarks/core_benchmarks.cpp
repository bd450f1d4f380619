#include <cmath>
#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "specphot/oracle.hpp"

using namespace specphot;

namespace {

SpectralAmplitude gaussian_spectrum(const FrequencyGrid& grid) {
  const double center = 0.5 * (grid.bin_frequency(1) + grid.bin_frequency(grid.n_bins()));
  const double width = 0.12 * (grid.bin_frequency(grid.n_bins()) - grid.bin_frequency(1));
  return discretize(GaussianShape{center, width}, grid).amplitude;
}

void BM_Discretize(benchmark::State& state) {
  const FrequencyGrid grid(1.0, static_cast<int>(state.range(0)));
  const GaussianShape shape{grid.n_bins() / 2.0, grid.n_bins() / 8.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretize(SpectralShape{shape}, grid));
  }
}
BENCHMARK(BM_Discretize)->Arg(256)->Arg(1024)->Arg(4096);

void BM_MziProbabilities(benchmark::State& state) {
  const FrequencyGrid grid(1.0, static_cast<int>(state.range(0)));
  const auto s = gaussian_spectrum(grid);
  const FrequencyResponse phi_a =
      FiberDispersionResponse{0.4, std::numbers::pi / 900.0, 0.0, 1.0, grid.n_bins() / 2.0};
  const FrequencyResponse phi_b = ConstantResponse{0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mzi_probabilities(s, phi_a, phi_b));
  }
}
BENCHMARK(BM_MziProbabilities)->Arg(256)->Arg(1024)->Arg(4096);

void BM_HomCoincidence(benchmark::State& state) {
  const FrequencyGrid grid(1.0, static_cast<int>(state.range(0)));
  const auto s = gaussian_spectrum(grid);
  const auto t = gaussian_spectrum(grid);
  const FrequencyResponse theta = LinearDetuningResponse{std::numbers::pi / 4, 1e-4, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hom_coincidence(s, t, theta));
  }
}
BENCHMARK(BM_HomCoincidence)->Arg(256)->Arg(4096);

void BM_OracleHom(benchmark::State& state) {
  const FrequencyGrid grid(1.0, static_cast<int>(state.range(0)));
  const auto s = gaussian_spectrum(grid);
  const auto t = gaussian_spectrum(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_hom(s, t, balanced_bs_angle()));
  }
}
BENCHMARK(BM_OracleHom)->Arg(16)->Arg(32)->Arg(64);

void BM_OracleMzi(benchmark::State& state) {
  const FrequencyGrid grid(1.0, static_cast<int>(state.range(0)));
  const auto s = gaussian_spectrum(grid);
  std::mt19937_64 rng(7);
  std::vector<double> phases(static_cast<std::size_t>(grid.n_bins()));
  for (auto& p : phases) p = uniform01(rng) * std::numbers::pi;
  const FrequencyResponse phi_a = SampledResponse{grid, std::move(phases)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_mzi(s, phi_a, ConstantResponse{0.0}));
  }
}
BENCHMARK(BM_OracleMzi)->Arg(16)->Arg(64);

void BM_ProtocolTrials(benchmark::State& state) {
  const FrequencyGrid grid(1.0, 299);
  const auto b = make_bell_biphoton(GaussianShape{0.0, 10.0}, 150.0, grid).biphoton;
  const FrequencyResponse theta = ConstantResponse{std::numbers::pi / 3};
  const long trials = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_protocol(b, theta, 0, true, trials, seed++));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_ProtocolTrials)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
