#include <benchmark/benchmark.h>

#include "scatter/eikonal.hpp"
#include "scatter/exact_reference.hpp"
#include "scatter/quantum_mean.hpp"
#include "scatter/unitary.hpp"

using scatter::Potential;

static void BM_NumerovLength(benchmark::State& state) {
  const auto p = Potential::yukawa(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scatter::exact::numerov_scattering_length(p));
}
BENCHMARK(BM_NumerovLength)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_YukawaCrossSection(benchmark::State& state) {
  const auto p = Potential::yukawa(5.0);
  const double k = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(scatter::exact::yukawa_cross_section(p, k).sigma);
}
BENCHMARK(BM_YukawaCrossSection)->Arg(1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_SquarePhaseShifts(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scatter::exact::square_cross_section(10.0, 1.0, k).sigma);
}
BENCHMARK(BM_SquarePhaseShifts)->Arg(1)->Arg(10)->Arg(100);

static void BM_EikonalSigma(benchmark::State& state) {
  const auto p = Potential::yukawa(5.0);
  for (auto _ : state) benchmark::DoNotOptimize(scatter::eikonal::eikonal_cross_section(p, 2.0));
}
BENCHMARK(BM_EikonalSigma)->Unit(benchmark::kMicrosecond);

static void BM_QmaSigmaCalibration(benchmark::State& state) {
  const auto p = Potential::yukawa(5.0);
  for (auto _ : state) benchmark::DoNotOptimize(scatter::qma::calibrate_kc_sigma(p).k_c);
}
BENCHMARK(BM_QmaSigmaCalibration)->Unit(benchmark::kMillisecond);

static void BM_UnitarySolve(benchmark::State& state) {
  const auto p = Potential::yukawa(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scatter::unitary::solve_unitary(p).k_c);
}
BENCHMARK(BM_UnitarySolve)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);
