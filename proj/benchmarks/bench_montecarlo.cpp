#include <benchmark/benchmark.h>

#include "flipin/montecarlo.hpp"

namespace {

void BM_Timeline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(flipin::mc::simulate_timeline(0.4, 0.5, 0.3, 1.1, 1e4, 2.5));
}
BENCHMARK(BM_Timeline);

void BM_Simulate(benchmark::State& state) {
  const flipin::mc::SimulationConfig cfg{.horizon = 1e4, .runs = 64, .seed = 1,
                                         .threads = static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(flipin::mc::simulate_flipit(0.4, 0.5, cfg));
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
