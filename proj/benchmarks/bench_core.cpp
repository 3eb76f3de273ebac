#include <benchmark/benchmark.h>

#include "aokr/bessel.hpp"
#include "aokr/ensemble.hpp"
#include "aokr/evolution.hpp"
#include "aokr/oracle.hpp"

namespace {

using namespace aokr;

const PhysicalConstants kRb;

void BM_FloquetStep(benchmark::State& state) {
  const SpatialGrid grid(static_cast<std::size_t>(state.range(0)), 512);
  const FloquetStepPlan plan(grid, KickSchedule{1.5, kRb.T_talbot(), 1, 0.0, 0, 0.0}, kRb);
  auto psi = init_gaussian(grid, 10.0, 0.0);
  for (auto _ : state) {
    floquet_step_in_place(psi, plan);
    benchmark::DoNotOptimize(psi);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FloquetStep)->RangeMultiplier(4)->Range(1 << 14, 1 << 20)->Unit(benchmark::kMicrosecond);

void BM_BesselSequence(benchmark::State& state) {
  const int max_order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j_sequence(max_order, 12.5));
  }
}
BENCHMARK(BM_BesselSequence)->Arg(16)->Arg(64)->Arg(256);

void BM_LadderAmplitudes(benchmark::State& state) {
  const ResonanceContext ctx{3, 0.125, 2.5, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ladder_amplitudes(ctx));
  }
}
BENCHMARK(BM_LadderAmplitudes)->Arg(1)->Arg(10)->Arg(100);

void BM_EnsembleAverage(benchmark::State& state) {
  const SpatialGrid grid(std::size_t{1} << 14, 128);
  const FloquetStepPlan plan(grid, KickSchedule{2.5, 40e-6, 2, 0.0, 0, 0.0}, kRb);
  const EnsembleSpec spec{0.0, 0.18, 21, 3.0};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ensemble_average(spec, plan, 10.0, threads));
  }
}
BENCHMARK(BM_EnsembleAverage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
