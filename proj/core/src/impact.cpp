#include "scatter/impact.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "scatter/error.hpp"
#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

namespace scatter::impact {
namespace {

constexpr double kPi = std::numbers::pi;
// Below the radius where |w| Y reaches this phase the singular chord is
// integrated in the phase variable instead of rho.
constexpr double kHeadPhase = 8.0 * kPi;
// exp(-kNegligible) is dropped against O(1) terms.
constexpr double kNegligible = 45.0;

QuadratureOptions options(double rel_tol) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_evals = 4'000'000;
  return opt;
}

// 1 - exp(-z) without cancellation for small |z|.
Complex one_minus_exp_neg(Complex z) {
  const double x = -z.real();
  const double y = -z.imag();
  const double s = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return -Complex(re, im);
}

// 1 - e^{-x} (1 + x), x >= 0.
double threshold_kernel(double x) {
  if (x > 700.0) return 1.0;
  if (x < 1e-3) return x * x * (0.5 - x * (1.0 / 3.0 - x / 8.0));
  return -std::expm1(-x) - x * std::exp(-x);
}

struct SquareShape {
  double R;
  double slope;  // Y = slope * sqrt(R^2 - rho^2)
};

SquareShape square_shape(const Potential& pot) {
  const auto& s = std::get<SquareBarrier>(pot.variant());
  return {s.R, pot.radial_factor() * s.G};
}

// Singular chord: Y = C rho^{-p}.
struct PowerLaw {
  double C;
  double p;
  double rho_at(double y) const { return std::pow(C / y, 1.0 / p); }
  double value(double rho) const { return C * std::pow(rho, -p); }
};

PowerLaw power_law(const Potential& pot) {
  const auto& s = std::get<Singular>(pot.variant());
  return {pot.reduced_chord(1.0), 2.0 * s.N - 1.0};
}

// int_{s0}^inf h(s) e^{-w s} ds for smooth, slowly decaying h.
template <class H>
Complex phase_tail(H&& h, Complex w, double s0, double rel_tol) {
  auto f = [&](double s) -> Complex { return h(s) * std::exp(-w * s); };
  QuadratureOptions opt = options(rel_tol);
  const double damping = w.real();
  const double freq = std::fabs(w.imag());
  if (freq <= 1e-3 * damping) return integrate_semi_infinite(f, s0, opt).value;

  const double half_period = kPi / freq;
  std::vector<Complex> partial;
  Complex sum{};
  double lo = s0;
  for (int n = 0; n < 200000; ++n) {
    const double hi = lo + half_period;
    QuadratureOptions step = opt;
    step.abs_tol = 1e-3 * rel_tol * std::abs(sum);
    sum += integrate_adaptive(f, lo, hi, step).value;
    partial.push_back(sum);
    lo = hi;
    if (damping * lo > kNegligible) return sum;
    if (partial.size() >= 12) {
      const double scale = rel_tol * std::abs(sum);
      const auto [est, delta] = accelerate(std::span<const Complex>(partial));
      const auto [est_prev, delta_prev] =
          accelerate(std::span<const Complex>(partial.data(), partial.size() - 1));
      if (std::abs(est - est_prev) <= scale && std::abs(delta) <= 10.0 * scale &&
          std::abs(delta_prev) <= 10.0 * scale) {
        return est;
      }
    }
  }
  throw NonConvergenceError("phase_tail: acceleration did not converge", sum.real(), 0.0);
}

// int_0^{rho0} rho J0(omega rho) [1 - e^{-w Y}] d rho for the singular chord.
Complex singular_head(const PowerLaw& law, Complex w, double omega, double rho0,
                      double rel_tol) {
  const double plain = omega > 0.0 ? rho0 * specfun::bessel_j1(omega * rho0) / omega
                                   : 0.5 * rho0 * rho0;
  const double s0 = law.value(rho0);
  if (w.real() * s0 > kNegligible) return plain;
  auto h = [&](double s) {
    const double rho = law.rho_at(s);
    return rho * rho * specfun::bessel_j0(omega * rho) / (law.p * s);
  };
  return plain - phase_tail(h, w, s0, rel_tol);
}

double head_radius(const PowerLaw& law, double scale) {
  return std::pow(law.C * scale / kHeadPhase, 1.0 / law.p);
}

void require_nonnegative_real_part(Complex w) {
  if (!(w.real() >= 0.0) || !std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw_domain("impact: damping parameter must have Re w >= 0");
  }
}

// Composite Gauss-Legendre rules on [-1, 1], nodes ascending.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

template <int N>
Rule make_rule() {
  using boost::math::quadrature::gauss;
  const auto& a = gauss<double, N>::abscissa();
  const auto& wt = gauss<double, N>::weights();
  std::vector<std::pair<double, double>> nodes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    nodes.emplace_back(a[i], wt[i]);
    if (a[i] != 0.0) nodes.emplace_back(-a[i], wt[i]);
  }
  std::sort(nodes.begin(), nodes.end());
  Rule r;
  for (const auto& [x, w] : nodes) {
    r.x.push_back(x);
    r.w.push_back(w);
  }
  return r;
}

const Rule& panel_rule() {
  static const Rule r = make_rule<8>();
  return r;
}

const Rule& gap_rule() {
  static const Rule r = make_rule<5>();
  return r;
}

// Inner line integral for the Yukawa family at impact parameter rho:
// int dz v exp(i alpha z - w F(z)), F(z) = int_z^inf v ds. With z = rho sinh u
// the weight v dz becomes c e^{-rho cosh u} du.
Complex yukawa_line(double c, double rho, double alpha, Complex w) {
  const double u_max = std::acosh(1.0 + kNegligible / rho);
  auto density = [&](double u) { return c * std::exp(-rho * std::cosh(u)); };
  const double wmag = std::abs(w);
  auto step_at = [&](double u) {
    const double ch = std::cosh(u);
    double s = 0.25;
    if (alpha > 0.0) s = std::min(s, 1.0 / (alpha * rho * ch));
    s = std::min(s, 1.0 / (wmag * density(u) + 1e-300));
    s = std::min(s, 2.0 / (rho * std::fabs(std::sinh(u)) + 2.0 * std::sqrt(rho)));
    return s;
  };

  // Panel edges from the right so F accumulates from +infinity.
  std::vector<double> edges{u_max};
  double u = u_max;
  while (u > -u_max) {
    double s = step_at(u);
    s = std::min(s, step_at(u - s));
    u = std::max(-u_max, u - s);
    edges.push_back(u);
  }

  const Rule& pr = panel_rule();
  const Rule& gr = gap_rule();
  auto gap = [&](double a, double b) {
    const double m = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < gr.x.size(); ++i) acc += gr.w[i] * density(m + h * gr.x[i]);
    return acc * h;
  };

  Complex total{};
  double F = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double b = edges[e];
    const double a = edges[e + 1];
    const double m = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double upper = b;
    for (std::size_t i = pr.x.size(); i-- > 0;) {
      const double node = m + h * pr.x[i];
      F += gap(node, upper);
      upper = node;
      const double weight = pr.w[i] * h * density(node);
      const double z = rho * std::sinh(node);
      total += weight * std::exp(Complex(0.0, alpha * z) - w * F);
    }
    F += gap(a, upper);
  }
  return total;
}

}  // namespace

Complex transmission_integral(const Potential& pot, Complex w, double omega, double rel_tol) {
  require_nonnegative_real_part(w);
  if (!(omega >= 0.0)) throw_domain("transmission_integral: omega must be >= 0");
  if (pot.coupling() == 0.0 || w == Complex{}) return {};

  switch (pot.family()) {
    case Family::Square: {
      const auto sq = square_shape(pot);
      auto f = [&](double t) -> Complex {
        const double rho = std::sqrt(std::max(0.0, sq.R * sq.R - t * t));
        return t * specfun::bessel_j0(omega * rho) * one_minus_exp_neg(w * (sq.slope * t));
      };
      return integrate_adaptive(f, 0.0, sq.R, options(rel_tol)).value;
    }
    case Family::Yukawa: {
      auto g = [&](double rho) -> Complex {
        if (rho <= 0.0) return {};
        return one_minus_exp_neg(w * pot.reduced_chord(rho));
      };
      OscillatoryOptions opt;
      opt.rel_tol = rel_tol;
      opt.max_evals_per_interval = 4'000'000;
      return integrate_bessel_oscillatory(g, omega, opt).value;
    }
    case Family::Singular: {
      const PowerLaw law = power_law(pot);
      const double rho0 = head_radius(law, std::abs(w));
      auto g = [&](double rho) -> Complex { return one_minus_exp_neg(w * law.value(rho)); };
      OscillatoryOptions opt;
      opt.rel_tol = rel_tol;
      opt.start = rho0;
      opt.max_evals_per_interval = 4'000'000;
      return singular_head(law, w, omega, rho0, rel_tol) +
             integrate_bessel_oscillatory(g, omega, opt).value;
    }
  }
  return {};
}

double sin2_integral(const Potential& pot, double c, double rel_tol) {
  if (!(c > 0.0) || !std::isfinite(c)) throw_domain("sin2_integral: c must be > 0");
  if (pot.coupling() == 0.0) return 0.0;
  const QuadratureOptions opt = options(rel_tol);
  switch (pot.family()) {
    case Family::Square: {
      const auto sq = square_shape(pot);
      const double alpha = c * sq.slope;
      auto f = [&](double t) {
        const double s = std::sin(alpha * t);
        return t * s * s;
      };
      // One panel per period, otherwise a coarse first pass can alias.
      const auto panels = static_cast<std::size_t>(std::min(1e5, std::ceil(alpha * sq.R / kPi))) + 1;
      std::vector<double> pts(panels + 1);
      for (std::size_t i = 0; i <= panels; ++i) pts[i] = sq.R * static_cast<double>(i) / panels;
      return integrate_adaptive(f, std::span<const double>(pts), opt).value;
    }
    case Family::Yukawa: {
      auto f = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double s = std::sin(c * pot.reduced_chord(rho));
        return rho * s * s;
      };
      // The phase grows like log(1/rho) at small rho with slope at most
      // c * lambda * G; panels uniform in log(rho), each under half a period.
      const double rate = c * pot.radial_factor() * pot.coupling();
      const double step = std::clamp(kPi / (2.0 * rate), 2e-3, 0.5);
      constexpr double kLo = 1e-8, kHi = 40.0;
      const auto panels = static_cast<std::size_t>(std::ceil(std::log(kHi / kLo) / step));
      std::vector<double> pts{0.0};
      for (std::size_t i = 0; i <= panels; ++i)
        pts.push_back(kLo * std::exp(std::log(kHi / kLo) * static_cast<double>(i) / panels));
      return integrate_adaptive(f, std::span<const double>(pts), opt).value +
             integrate_semi_infinite(f, kHi, opt).value;
    }
    case Family::Singular: {
      // sin^2 x = Re(1 - e^{-2ix}) / 2 on the head.
      const PowerLaw law = power_law(pot);
      const Complex w(0.0, 2.0 * c);
      const double rho0 = head_radius(law, 2.0 * c);
      const double head = 0.5 * singular_head(law, w, 0.0, rho0, rel_tol).real();
      auto f = [&](double rho) {
        const double s = std::sin(c * law.value(rho));
        return rho * s * s;
      };
      return head + integrate_semi_infinite(f, rho0, opt).value;
    }
  }
  return 0.0;
}

double threshold_integral(const Potential& pot, double kc, double rel_tol) {
  if (!(kc > 0.0) || !std::isfinite(kc)) throw_domain("threshold_integral: kc must be > 0");
  if (pot.coupling() == 0.0) return 0.0;
  const QuadratureOptions opt = options(rel_tol);
  if (pot.family() == Family::Square) {
    const auto sq = square_shape(pot);
    auto f = [&](double t) { return t * threshold_kernel(sq.slope * t / kc); };
    return integrate_adaptive(f, 0.0, sq.R, opt).value;
  }
  auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    return rho * threshold_kernel(pot.reduced_chord(rho) / kc);
  };
  return integrate_semi_infinite(f, 0.0, opt).value;
}

double damped_forward_integral(const Potential& pot, double k, double kc, double rel_tol) {
  if (!(kc > 0.0) || !std::isfinite(kc)) throw_domain("damped_forward_integral: kc must be > 0");
  if (!(k >= 0.0) || !std::isfinite(k)) throw_domain("damped_forward_integral: k must be >= 0");
  if (k == 0.0) return threshold_integral(pot, kc, rel_tol);
  if (pot.coupling() == 0.0) return 0.0;
  const double d = kc * kc + k * k;
  auto kernel = [&](double y) {
    const double damp = y * kc / d;
    if (damp > 700.0) return 1.0;
    const double g = y * k / d;
    const double E = std::exp(-damp);
    return 1.0 - E * (std::cos(g) + (kc / k) * std::sin(g));
  };
  const QuadratureOptions opt = options(rel_tol);
  if (pot.family() == Family::Square) {
    const auto sq = square_shape(pot);
    auto f = [&](double t) { return t * kernel(sq.slope * t); };
    return integrate_adaptive(f, 0.0, sq.R, opt).value;
  }
  auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    return rho * kernel(pot.reduced_chord(rho));
  };
  return integrate_semi_infinite(f, 0.0, opt).value;
}

double chord_square_moment(const Potential& pot, double rel_tol) {
  if (pot.coupling() == 0.0) return 0.0;
  const QuadratureOptions opt = options(rel_tol);
  switch (pot.family()) {
    case Family::Square: {
      const auto sq = square_shape(pot);
      auto f = [&](double t) { return t * sq.slope * sq.slope * t * t; };
      return integrate_adaptive(f, 0.0, sq.R, opt).value;
    }
    case Family::Yukawa: {
      auto f = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double y = pot.reduced_chord(rho);
        return rho * y * y;
      };
      return integrate_semi_infinite(f, 0.0, opt).value;
    }
    case Family::Singular:
      throw Error(ErrorCode::Divergence,
                  "chord_square_moment: diverges at small impact parameter for the singular family");
  }
  return 0.0;
}

Complex line_amplitude(const Potential& pot, double k, double theta, Complex w, double rel_tol) {
  require_nonnegative_real_part(w);
  if (w == Complex{}) throw_domain("line_amplitude: w must be nonzero");
  if (!(k >= 0.0) || !std::isfinite(k)) throw_domain("line_amplitude: k must be >= 0");
  if (!(theta >= 0.0 && theta <= kPi)) throw_domain("line_amplitude: theta must lie in [0, pi]");
  if (pot.coupling() == 0.0) return {};

  const double half = std::sin(0.5 * theta);
  const double alpha = 2.0 * k * half * half;
  const double q = k * std::sin(theta);
  if (alpha == 0.0) return -transmission_integral(pot, w, q, rel_tol) / w;

  switch (pot.family()) {
    case Family::Square: {
      // Constant weight g on the chord [-t, t]: F(z) = g (t - z), so the
      // z integral is elementary.
      const auto sq = square_shape(pot);
      const double g = 0.5 * sq.slope;
      const Complex rate = Complex(0.0, alpha) + w * g;
      auto f = [&](double t) -> Complex {
        const double rho = std::sqrt(std::max(0.0, sq.R * sq.R - t * t));
        const Complex inner =
            g / rate *
            (std::exp(Complex(0.0, alpha * t)) - std::exp(Complex(0.0, -alpha * t) - 2.0 * w * g * t));
        return t * specfun::bessel_j0(q * rho) * inner;
      };
      return -integrate_adaptive(f, 0.0, sq.R, options(rel_tol)).value;
    }
    case Family::Yukawa: {
      const double c = 0.5 * pot.radial_factor() * pot.coupling();
      auto g = [&](double rho) -> Complex {
        if (rho <= 0.0) return {};
        return yukawa_line(c, rho, alpha, w);
      };
      OscillatoryOptions opt;
      opt.rel_tol = rel_tol;
      opt.support = kNegligible + std::log1p(pot.coupling());
      return -integrate_bessel_oscillatory(g, q, opt).value;
    }
    case Family::Singular:
      throw Error(ErrorCode::Unsupported,
                  "line_amplitude: off-forward amplitudes are not available for the singular family");
  }
  return {};
}

}  // namespace scatter::impact
