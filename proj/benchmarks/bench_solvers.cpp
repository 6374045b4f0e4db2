#include <benchmark/benchmark.h>

#include "ncspectra/deformation.hpp"
#include "ncspectra/evenpower.hpp"
#include "ncspectra/invpower.hpp"
#include "ncspectra/oracle.hpp"

using namespace ncspectra;

namespace {

void oracle_oscillator(benchmark::State& state) {
  const auto p = deform({Family::EvenPower, 1.0, 0.0, 0.0}, {0.0, 1});
  const auto grid = oracle::default_grid(p, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve_radial(p, grid, 3));
}
BENCHMARK(oracle_oscillator)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void oracle_deformed_core(benchmark::State& state) {
  const auto p = deform({Family::EvenPower, 1.0, 15.0, 1.0}, {0.05, 1});
  const auto grid = oracle::default_grid(p);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve_radial(p, grid, 2));
}
BENCHMARK(oracle_deformed_core)->Unit(benchmark::kMillisecond);

void chain_roots(benchmark::State& state) {
  const auto p = deform({Family::EvenPower, 1.0, 15.0, 1.0}, {0.1, 1});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evenpower::solve_chain_for_b(p, SignMode::Normalizable, n));
  }
}
BENCHMARK(chain_roots)->Arg(0)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void newton_spectrum(benchmark::State& state) {
  const auto p = deform({Family::InversePower, -2.0, 0.5, 0.0}, {0.01, 1});
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invpower::spectrum(p, k));
}
BENCHMARK(newton_spectrum)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
