#include <benchmark/benchmark.h>

#include "flipin/influence_network.hpp"

namespace {

void BM_KernelRing(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  flipin::NetworkSpec spec = flipin::NetworkSpec::unconnected(n, 0.5);
  for (std::size_t m = 0; m < n; ++m) {
    spec.weight(m, (m + 1) % n) = 0.5;
    spec.weight(m, (m + n - 1) % n) = 0.5;
  }
  for (auto _ : state) benchmark::DoNotOptimize(flipin::compute_kernel(spec));
}
BENCHMARK(BM_KernelRing)->RangeMultiplier(2)->Range(4, 256);

}  // namespace
