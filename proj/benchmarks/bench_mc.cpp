#include <benchmark/benchmark.h>

#include "scatter/path_mc.hpp"

using scatter::Potential;

static void BM_PathSampling(benchmark::State& state) {
  scatter::mc::McConfig cfg;
  scatter::CounterStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(scatter::mc::sample_path(rng, cfg).back());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.nu_max / cfg.d_nu));
}
BENCHMARK(BM_PathSampling);

static void BM_McPhi(benchmark::State& state) {
  scatter::mc::McConfig cfg;
  cfg.n_paths = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  const auto p = Potential::yukawa(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(scatter::mc::mc_phi(p, 1.0, cfg).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McPhi)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
