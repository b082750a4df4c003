#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "scatter/error.hpp"
#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

using std::numbers::pi;

namespace {

// Composite Simpson on n (even) intervals.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST(Adaptive, ElementaryIntegrals) {
  EXPECT_NEAR(scatter::integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0).value, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(scatter::integrate_adaptive([](double x) { return std::log(1.0 / x); }, 0.0, 1.0, 1e-10).value,
              1.0, 1e-9);
  EXPECT_NEAR(scatter::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi).value, 2.0, 1e-14);
}

TEST(Adaptive, ErrorEstimateBoundsObservedError) {
  struct Case {
    double (*f)(double);
    double a, b;
  };
  const Case cases[] = {
      {[](double x) { return std::exp(-x) * std::cos(5 * x); }, 0.0, 3.0},
      {[](double x) { return 1.0 / (1.0 + 25 * x * x); }, -1.0, 1.0},
      {[](double x) { return std::sqrt(x); }, 0.0, 2.0},
  };
  for (const auto& c : cases) {
    scatter::QuadratureOptions opt;
    opt.rel_tol = 1e-6;
    const auto r = scatter::integrate_adaptive(c.f, c.a, c.b, opt);
    const double ref = scatter::integrate_adaptive(c.f, c.a, c.b, 1e-14).value;
    EXPECT_LE(std::abs(r.value - ref), 10.0 * r.err_est + 1e-15);
    EXPECT_GT(r.evals, 0u);
  }
}

TEST(Adaptive, BudgetExhaustionCarriesEstimate) {
  scatter::QuadratureOptions opt;
  opt.rel_tol = 1e-15;
  opt.max_evals = 100;
  try {
    scatter::integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt);
    FAIL() << "expected non-convergence";
  } catch (const scatter::NonConvergenceError& e) {
    EXPECT_EQ(e.code(), scatter::ErrorCode::NonConvergence);
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
  }
}

TEST(SemiInfinite, Moments) {
  EXPECT_NEAR(scatter::integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0).value, 1.0, 1e-12);
  EXPECT_NEAR(scatter::integrate_semi_infinite([](double x) { return x * std::exp(-x); }, 0.0).value, 1.0, 1e-12);
  auto rk0 = [](double r) { return r > 0 ? r * scatter::specfun::bessel_k0(r) : 0.0; };
  EXPECT_NEAR(scatter::integrate_semi_infinite(rk0, 0.0, 1e-11).value, 1.0, 1e-9);
}

TEST(Oscillatory, ZeroFrequencyMatchesSemiInfinite) {
  auto g = [](double r) { return std::exp(-r); };
  const double a = scatter::integrate_bessel_oscillatory(g, 0.0, 1e-11).value;
  const double b = scatter::integrate_semi_infinite([&](double r) { return r * g(r); }, 0.0, 1e-11).value;
  EXPECT_NEAR(a, 1.0, 1e-10);
  EXPECT_NEAR(a, b, 1e-10);
}

TEST(Oscillatory, AnalyticHankelTransform) {
  // int rho J0(w rho) e^{-rho} = (1 + w^2)^{-3/2}
  auto g = [](double r) { return std::exp(-r); };
  for (double w : {1.0, 3.0, 20.0}) {
    EXPECT_NEAR(scatter::integrate_bessel_oscillatory(g, w, 1e-10).value, std::pow(1 + w * w, -1.5),
                1e-9 * std::pow(1 + w * w, -1.5) + 1e-13)
        << w;
  }
}

TEST(Oscillatory, CompactSupportAgainstFineSimpson) {
  auto g = [](double r) { return r < 1.0 ? 1.0 - r * r : 0.0; };
  scatter::OscillatoryOptions opt;
  opt.rel_tol = 1e-10;
  opt.support = 1.0;
  const double w = 50.0;
  const double v = scatter::integrate_bessel_oscillatory(g, w, opt).value;
  const double ref = simpson(
      [&](double r) { return r * scatter::specfun::bessel_j0(w * r) * g(r); }, 0.0, 1.0, 200000);
  EXPECT_NEAR(v, ref, 1e-7);
}

TEST(Oscillatory, StartOffset) {
  auto g = [](double r) { return std::exp(-r); };
  scatter::OscillatoryOptions opt;
  opt.rel_tol = 1e-10;
  opt.start = 0.7;
  const double w = 4.0;
  const double tail = scatter::integrate_bessel_oscillatory(g, w, opt).value;
  const double head = scatter::integrate_adaptive(
      [&](double r) { return r * scatter::specfun::bessel_j0(w * r) * g(r); }, 0.0, 0.7, 1e-13).value;
  EXPECT_NEAR(head + tail, std::pow(1 + w * w, -1.5), 1e-10);
}

TEST(Roots, Brent) {
  auto r = scatter::find_root_bracketed([](double x) { return x * x - 2; }, 1.0, 2.0, 1e-14);
  EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-13);
  EXPECT_LE(std::abs(r.residual), 1e-14);
  EXPECT_GE(r.root, 1.0);
  EXPECT_LE(r.root, 2.0);
  auto c = scatter::find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-15);
  EXPECT_NEAR(c.root, pi / 2, 1e-14);
  EXPECT_THROW(scatter::find_root_bracketed([](double x) { return x * x + 1; }, -1.0, 1.0, 1e-12),
               scatter::Error);
}

TEST(Roots, BracketExpansion) {
  auto [lo, hi] = scatter::expand_bracket([](double x) { return x - 5; }, 1.0);
  EXPECT_LE(lo, 5.0);
  EXPECT_GE(hi, 5.0);
  auto [lo2, hi2] = scatter::expand_bracket([](double x) { return std::log(x / 1e-2); }, 1.0);
  EXPECT_LE(lo2, 1e-2);
  EXPECT_GE(hi2, 1e-2);
  try {
    scatter::expand_bracket([](double x) { return 1.0 + x; }, 1.0);
    FAIL();
  } catch (const scatter::Error& e) {
    EXPECT_EQ(e.code(), scatter::ErrorCode::NoSignChange);
  }
}

TEST(Roots, SignScan) {
  auto changes = scatter::scan_sign_changes([](double x) { return std::sin(std::log(x)); }, 1e-3, 1e3, 60);
  // zeros of sin(log x) at x = e^{n pi}, n = -2..2 inside [1e-3, 1e3]
  EXPECT_EQ(changes.size(), 5u);
  for (const auto& c : changes) EXPECT_LT(c.lo, c.hi);
}

TEST(Acceleration, AlternatingSeries) {
  std::vector<double> partial;
  double s = 0;
  for (int n = 0; n < 20; ++n) {
    s += (n % 2 ? -1.0 : 1.0) / (n + 1);
    partial.push_back(s);
  }
  // raw partial sum is off by ~2.4e-2
  EXPECT_NEAR(scatter::accelerate(partial).first, std::log(2.0), 1e-8);
}
