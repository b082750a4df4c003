#include "scatter/eikonal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "scatter/error.hpp"
#include "scatter/impact.hpp"
#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

namespace scatter::eikonal {
namespace {

constexpr double kPi = std::numbers::pi;

void require_momentum(double k, const Options& opt) {
  if (!std::isfinite(k) || !(k >= opt.k_min) || !(k > 0.0)) {
    throw_domain("eikonal: k must be >= k_min (" + std::to_string(opt.k_min) + ")");
  }
}

void require_angle(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw_domain("eikonal: theta must lie in [0, pi]");
}

}  // namespace

Amplitude eikonal_amplitude(const Potential& pot, double k, double theta, const Options& opt) {
  require_momentum(k, opt);
  require_angle(theta);
  const Amplitude w(0.0, 1.0 / k);
  return Amplitude(0.0, k) * impact::transmission_integral(pot, w, k * theta, opt.rel_tol);
}

Amplitude eikonal_amplitude_all_angle(const Potential& pot, double k, double theta,
                                      const Options& opt) {
  require_momentum(k, opt);
  require_angle(theta);
  return impact::line_amplitude(pot, k, theta, Amplitude(0.0, 1.0 / k), opt.rel_tol);
}

double eikonal_cross_section(const Potential& pot, double k, const Options& opt) {
  require_momentum(k, opt);
  return 8.0 * kPi * impact::sin2_integral(pot, 0.5 / k, opt.rel_tol);
}

double eikonal_cross_section_all_angle(const Potential& pot, double k, const Options& opt) {
  require_momentum(k, opt);
  if (pot.coupling() == 0.0) return 0.0;
  Options inner = opt;
  inner.rel_tol = std::min(opt.rel_tol, 1e-8);
  auto integrand = [&](double theta) {
    const double f = std::abs(eikonal_amplitude_all_angle(pot, k, theta, inner));
    return std::sin(theta) * f * f;
  };
  const std::array<double, 5> breaks{0.0, kPi / 16.0, kPi / 4.0, kPi / 2.0, kPi};
  QuadratureOptions qopt;
  qopt.rel_tol = std::max(opt.rel_tol, 1e-6);
  return 2.0 * kPi * integrate_adaptive(integrand, std::span<const double>(breaks), qopt).value;
}

double eikonal_forward_im(const Potential& pot, double k, const Options& opt) {
  return eikonal_amplitude(pot, k, 0.0, opt).imag();
}

double unitarity_ratio(const Potential& pot, double k, const Options& opt) {
  const double im = eikonal_forward_im(pot, k, opt);
  if (im == 0.0) throw Error(ErrorCode::Degenerate, "unitarity_ratio: Im f vanishes");
  return eikonal_cross_section(pot, k, opt) * k / (4.0 * kPi * im);
}

double high_momentum_limit(const Potential& pot) {
  return 2.0 * kPi * impact::chord_square_moment(pot);
}

double singular_eikonal_sigma(double G, int N, double k) {
  if (!(G >= 0.0)) throw_domain("singular_eikonal_sigma: G must be >= 0");
  if (N < 2) throw_domain("singular_eikonal_sigma: N must be >= 2");
  if (!(k > 0.0)) throw_domain("singular_eikonal_sigma: k must be > 0");
  if (G == 0.0) return 0.0;
  // Phase (g/k) int_0^inf d tau / (tau^2 + rho^2)^N with g = G/2 in these units.
  const double g = 0.5 * G;
  const double m = 2.0 * N - 1.0;
  const double shape = std::sqrt(kPi) * specfun::gamma(N - 0.5) / specfun::gamma(N);
  return 2.0 * kPi * std::pow(g / k * shape, 2.0 / m) * specfun::gamma((2.0 * N - 3.0) / m) *
         std::sin(kPi * (2.0 * N + 1.0) / (2.0 * m));
}

}  // namespace scatter::eikonal
