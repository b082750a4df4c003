#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "scatter/error.hpp"

/// Quadrature and root finding shared by every scheme.
///
/// Quadrature is adaptive bisection with the nested 10/21-point
/// Gauss-Kronrod pair; err_est is |K21 - G10| summed over the final panels.
/// Panels are refined in order of largest error and summed left to right, so
/// results are reproducible bit for bit.
namespace scatter {

template <class T>
struct BasicQuadratureResult {
  T value{};
  double err_est = 0.0;
  std::size_t evals = 0;
};

using QuadratureResult = BasicQuadratureResult<double>;
using ComplexQuadratureResult = BasicQuadratureResult<std::complex<double>>;

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_evals = 400000;
};

namespace detail {

struct GaussKronrod21 {
  std::span<const double> abscissa;  // 11 nodes, x >= 0; odd indices are Gauss nodes
  std::span<const double> kronrod_weights;
  std::span<const double> gauss_weights;  // 5 weights, matching abscissa[1], [3], ...
};
const GaussKronrod21& gauss_kronrod21();

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double err;
  double l1;
};

template <class T, class F>
Panel<T> gk21_panel(F& f, double a, double b) {
  const auto& rule = gauss_kronrod21();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * rule.kronrod_weights[0];
  T gauss{};
  double l1 = magnitude(fc) * rule.kronrod_weights[0];
  for (std::size_t i = 1; i < rule.abscissa.size(); ++i) {
    const double dx = h * rule.abscissa[i];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * rule.kronrod_weights[i];
    l1 += (magnitude(f1) + magnitude(f2)) * rule.kronrod_weights[i];
    if (i % 2 == 1) gauss += (f1 + f2) * rule.gauss_weights[i / 2];
  }
  return {a, b, kron * h, magnitude(kron - gauss) * std::fabs(h), l1 * std::fabs(h)};
}

}  // namespace detail

/// Adaptive integral of f over [a, b] with optional interior breakpoints.
/// Throws NonConvergenceError (carrying the best estimate) when max_evals is
/// exhausted before the tolerance is met.
template <class F>
auto integrate_adaptive(F&& f, std::span<const double> points, const QuadratureOptions& opt)
    -> BasicQuadratureResult<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  using detail::Panel;
  if (points.size() < 2) throw_domain("integrate_adaptive: need at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) throw_domain("integrate_adaptive: points must increase");
  }

  auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.err < y.err; };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> work(cmp);
  std::vector<Panel<T>> done;
  BasicQuadratureResult<T> out;
  constexpr std::size_t kPerPanel = 21;

  T total{};
  double err = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Panel<T> p = detail::gk21_panel<T>(f, points[i - 1], points[i]);
    out.evals += kPerPanel;
    total += p.value;
    err += p.err;
    l1 += p.l1;
    work.push(p);
  }

  auto converged = [&] {
    const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
    return err <= target || err <= 50.0 * std::numeric_limits<double>::epsilon() * l1;
  };

  while (!converged()) {
    if (out.evals + 2 * kPerPanel > opt.max_evals) {
      throw NonConvergenceError("integrate_adaptive: evaluation budget exhausted",
                                std::real(total), err);
    }
    Panel<T> p = work.top();
    work.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e-15 * std::max(std::fabs(p.a), std::fabs(p.b))) {
      // Panel at resolution limit; keep it and stop refining it.
      done.push_back(p);
      if (work.empty()) break;
      continue;
    }
    Panel<T> left = detail::gk21_panel<T>(f, p.a, mid);
    Panel<T> right = detail::gk21_panel<T>(f, mid, p.b);
    out.evals += 2 * kPerPanel;
    total += left.value + right.value - p.value;
    err += left.err + right.err - p.err;
    l1 += left.l1 + right.l1 - p.l1;
    work.push(left);
    work.push(right);
  }

  // Deterministic left-to-right summation of the final partition.
  while (!work.empty()) {
    done.push_back(work.top());
    work.pop();
  }
  std::sort(done.begin(), done.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  T sum{};
  double esum = 0.0;
  for (const auto& p : done) {
    sum += p.value;
    esum += p.err;
  }
  out.value = sum;
  out.err_est = esum;
  return out;
}

template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt) {
  if (!(a < b)) throw_domain("integrate_adaptive: require a < b");
  const double pts[2] = {a, b};
  return integrate_adaptive(std::forward<F>(f), std::span<const double>(pts, 2), opt);
}

template <class F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-9) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  return integrate_adaptive(std::forward<F>(f), a, b, opt);
}

/// int_a^inf f(x) dx via x = a + (1 - t) / t, t in (0, 1].
template <class F>
auto integrate_semi_infinite(F&& f, double a, const QuadratureOptions& opt) {
  auto mapped = [&f, a](double t) {
    using T = std::decay_t<decltype(f(0.0))>;
    if (t <= 0.0) return T{};
    const double x = a + (1.0 - t) / t;
    const T v = f(x);
    return v / (t * t);
  };
  return integrate_adaptive(mapped, 0.0, 1.0, opt);
}

template <class F>
auto integrate_semi_infinite(F&& f, double a, double rel_tol = 1e-9) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  return integrate_semi_infinite(std::forward<F>(f), a, opt);
}

inline double magnitude_of(double v) { return std::fabs(v); }
inline double magnitude_of(const std::complex<double>& v) { return std::abs(v); }

/// Accelerated limit of a sequence of partial sums of a (roughly) alternating
/// series: repeated pairwise averaging (Euler transform). Returns the estimate
/// and the difference between the two highest-order averages.
std::pair<double, double> accelerate(std::span<const double> partial);
std::pair<std::complex<double>, std::complex<double>> accelerate(
    std::span<const std::complex<double>> partial);

struct OscillatoryOptions {
  double rel_tol = 1e-7;
  double abs_tol = 0.0;
  /// g vanishes identically beyond this radius (infinity if not compact).
  double support = std::numeric_limits<double>::infinity();
  /// Lower integration limit.
  double start = 0.0;
  int max_intervals = 20000;
  std::size_t max_evals_per_interval = 100000;
};

namespace detail {
double bessel_j0_value(double x);
double bessel_j0_zero_value(int n);
}  // namespace detail

/// int_start^inf rho J0(omega rho) g(rho) d rho. For omega > 0 the range is split
/// at the zeros of J0 and the partial sums are Euler-accelerated. g may be
/// real or complex valued.
template <class G>
auto integrate_bessel_oscillatory(G&& g, double omega, const OscillatoryOptions& opt)
    -> BasicQuadratureResult<std::decay_t<decltype(g(0.0))>> {
  using T = std::decay_t<decltype(g(0.0))>;
  if (!(omega >= 0.0)) throw_domain("integrate_bessel_oscillatory: omega must be >= 0");
  QuadratureOptions qopt;
  qopt.rel_tol = opt.rel_tol;
  qopt.abs_tol = opt.abs_tol;
  qopt.max_evals = opt.max_evals_per_interval;

  auto radial = [&g](double rho) { return rho * g(rho); };
  if (!(opt.start >= 0.0) || !(opt.start < opt.support)) {
    throw_domain("integrate_bessel_oscillatory: need 0 <= start < support");
  }
  if (omega == 0.0) {
    if (std::isfinite(opt.support)) return integrate_adaptive(radial, opt.start, opt.support, qopt);
    return integrate_semi_infinite(radial, opt.start, qopt);
  }

  auto integrand = [&g, omega](double rho) { return rho * detail::bessel_j0_value(omega * rho) * g(rho); };
  BasicQuadratureResult<T> out;
  std::vector<T> partial;
  T sum{};
  double lo = opt.start;
  int first = 1;
  while (detail::bessel_j0_zero_value(first) / omega <= opt.start) ++first;
  int small_run = 0;
  for (int n = first; n < first + opt.max_intervals; ++n) {
    double hi = detail::bessel_j0_zero_value(n) / omega;
    const bool last = hi >= opt.support;
    if (last) hi = opt.support;
    // Absolute floor keeps tiny tail panels from chasing relative precision.
    QuadratureOptions step = qopt;
    step.abs_tol = std::max(qopt.abs_tol, 1e-3 * opt.rel_tol * magnitude_of(sum));
    const auto piece = integrate_adaptive(integrand, lo, hi, step);
    sum += piece.value;
    out.evals += piece.evals;
    out.err_est += piece.err_est;
    partial.push_back(sum);
    lo = hi;
    if (last) {
      out.value = sum;
      return out;
    }
    const double scale = std::max(opt.abs_tol, opt.rel_tol * magnitude_of(sum));
    small_run = (magnitude_of(piece.value) < 1e-3 * scale) ? small_run + 1 : 0;
    if (small_run >= 4) {
      out.value = sum;
      return out;
    }
    if (partial.size() >= 12) {
      const auto [est, delta] = accelerate(partial);
      const auto [est_prev, delta_prev] =
          accelerate(std::span<const T>(partial.data(), partial.size() - 1));
      const double change = magnitude_of(est - est_prev);
      if (change <= scale && magnitude_of(delta) <= 10.0 * scale &&
          magnitude_of(delta_prev) <= 10.0 * scale) {
        out.value = est;
        out.err_est += change;
        return out;
      }
    }
  }
  std::vector<double> sums;
  for (const auto& s : partial) sums.push_back(std::real(s));
  throw NonConvergenceError("integrate_bessel_oscillatory: acceleration did not converge",
                            std::real(sum), out.err_est, std::move(sums));
}


template <class G>
auto integrate_bessel_oscillatory(G&& g, double omega, double rel_tol = 1e-7) {
  OscillatoryOptions opt;
  opt.rel_tol = rel_tol;
  return integrate_bessel_oscillatory(std::forward<G>(g), omega, opt);
}

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Brent's method on a sign-changing bracket. Stops when |g| <= tol or the
/// bracket collapses to machine resolution.
RootResult find_root_bracketed(const std::function<double(double)>& g, double lo, double hi,
                               double tol, int max_iter = 300);

/// Geometric search (x2 up and /2 down from seed, up to 60 doublings each way)
/// for a positive bracket with a sign change.
std::pair<double, double> expand_bracket(const std::function<double(double)>& g, double seed,
                                         int max_doublings = 60);

struct SignChange {
  double lo;
  double hi;
};

/// Sample g on a log-spaced grid over [lo, hi] and report every sign change.
std::vector<SignChange> scan_sign_changes(const std::function<double(double)>& g, double lo,
                                          double hi, int samples);

}  // namespace scatter
