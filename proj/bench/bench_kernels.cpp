#include <benchmark/benchmark.h>

#include "quench/mode_kernels.hpp"

using namespace quench;

namespace {

ModeArrays modes(std::size_t nodes) {
  GridProfile p;
  p.spacing = Spacing::uniform;
  p.nodes = nodes;
  return ModeArrays::initial(build_grid(1, 40.0, p), 1.0, 2.0);
}

void kick_drift_serial(benchmark::State& state) {
  ModeArrays s = modes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::kick_drift_sum_serial(s, 1e-4, 4.5, 1e-4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void kick_drift_parallel(benchmark::State& state) {
  ModeArrays s = modes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::kick_drift_sum_parallel(s, 1e-4, 4.5, 1e-4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void drift_serial(benchmark::State& state) {
  ModeArrays s = modes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::drift_and_sum_serial(s, 1e-4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void drift_parallel(benchmark::State& state) {
  ModeArrays s = modes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::drift_and_sum_parallel(s, 1e-4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(kick_drift_serial)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(kick_drift_parallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(drift_serial)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(drift_parallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

BENCHMARK_MAIN();
