#include <benchmark/benchmark.h>

#include <vector>

#include "flipin/contracts_centralized.hpp"
#include "flipin/contracts_distributed.hpp"
#include "flipin/experiments.hpp"

namespace {

void BM_SolveNetworkD(benchmark::State& state) {
  const flipin::Preset& p = *flipin::find_preset("fig9");
  for (auto _ : state) benchmark::DoNotOptimize(flipin::solve_network_d(p.network, p.params));
}
BENCHMARK(BM_SolveNetworkD);

void BM_CentralizedNumeric(benchmark::State& state) {
  const flipin::Preset& p = *flipin::find_preset("fig10");
  const flipin::InfluenceKernel k = flipin::compute_kernel(p.network);
  for (auto _ : state) benchmark::DoNotOptimize(flipin::design_contract_c_numeric(p.params, k));
}
BENCHMARK(BM_CentralizedNumeric);

void BM_Fig8aSweep(benchmark::State& state) {
  const flipin::ExperimentConfig cfg = flipin::preset_config(*flipin::find_preset("fig8a"));
  for (auto _ : state) benchmark::DoNotOptimize(flipin::run_sweep(cfg));
}
BENCHMARK(BM_Fig8aSweep)->Unit(benchmark::kMillisecond);

}  // namespace
