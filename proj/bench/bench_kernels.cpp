// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "rydgate/dioph_opt.hpp"
#include "rydgate/grid.hpp"
#include "rydgate/noise.hpp"

using namespace rydgate;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_FidelityGrid(benchmark::State& state) {
  GridSpec spec;
  spec.axes = {{"A", 0.0, 20.0 * kPi, 400}, {"x", 0.05, 1.0, 200}};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(spec, exec_of(state)).values.data());
  state.SetItemsProcessed(state.iterations() * 400 * 200);
}

void BM_MonteCarlo(benchmark::State& state) {
  NoiseSpec spec = noise_preset("standard");
  spec.samples = 20000;
  const auto p = candidate_params(6, 6, 0);
  const PulseSequence seq{{Pulse{p.area, structural_from_ratio(p.x), 0.0}}};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(seq, spec, exec_of(state)).mean_f);
  state.SetItemsProcessed(state.iterations() * spec.samples);
}

void BM_Candidates(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidates(27.0 * kPi, exec_of(state)).size());
}

void BM_Diophantine(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(diophantine_search(3, 600, 32, exec_of(state)).scanned);
}

}  // namespace

BENCHMARK(BM_FidelityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Candidates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Diophantine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
