#include <benchmark/benchmark.h>

#include <cmath>

#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

static void BM_AdaptiveSmooth(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto r = scatter::integrate_adaptive([](double x) { return std::exp(-x) * std::cos(5 * x); }, 0.0, 3.0, tol);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_AdaptiveSmooth)->Arg(6)->Arg(10)->Arg(13);

static void BM_HankelTransform(benchmark::State& state) {
  const double w = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto r = scatter::integrate_bessel_oscillatory([](double x) { return std::exp(-x); }, w, 1e-10);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_HankelTransform)->Arg(1)->Arg(20)->Arg(200);

static void BM_BesselK0(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scatter::specfun::bessel_k0(x));
    x = x < 30 ? x * 1.01 : 0.01;
  }
}
BENCHMARK(BM_BesselK0);
