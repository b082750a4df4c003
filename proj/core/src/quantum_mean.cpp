#include "scatter/quantum_mean.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "scatter/detail/series.hpp"
#include "scatter/error.hpp"
#include "scatter/impact.hpp"
#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

namespace scatter::qma {
namespace {

constexpr double kPi = std::numbers::pi;
// Quadrature accuracy inside calibration residuals, tight enough that the
// root can be resolved to the solver tolerance.
constexpr double kCalibrationRelTol = 1e-13;
constexpr double kCalibrationTol = 1e-11;

void require_spread(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw_domain("qma: b must be > 0");
}

void require_kc(double kc) {
  if (!(kc > 0.0) || !std::isfinite(kc)) throw_domain("qma: k_c must be > 0");
}

void require_k(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw_domain("qma: k must be >= 0");
}

void require_coupling(const Potential& pot, CalibrationVariant v) {
  if (pot.coupling() == 0.0) {
    throw CalibrationError(ErrorCode::Degenerate,
                           std::string("calibration (") + std::string(to_string(v)) +
                               "): undefined for vanishing coupling");
  }
}

}  // namespace

double qma_scattering_length(const Potential& pot, double b, double rel_tol) {
  require_spread(b);
  if (pot.coupling() == 0.0) return 0.0;
  const double lambda = pot.radial_factor();
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double exponent = lambda / b * pot.tail_moment(r);
    if (exponent > 700.0) return 0.0;
    return r * r * pot.radial(r) * std::exp(-exponent);
  };
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_evals = 4'000'000;
  const double R = pot.support_radius();
  if (std::isfinite(R)) return integrate_adaptive(f, 0.0, R, opt).value;
  return integrate_semi_infinite(f, 0.0, opt).value;
}

double square_qma_length_closed(double G, double R, double b) {
  require_spread(b);
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square_qma_length_closed: need G >= 0, R > 0");
  const double c = G * R * R / (2.0 * b);
  if (c < 1e-4) return b * R * c * (2.0 / 3.0 - c * (4.0 / 15.0 - c * 8.0 / 105.0));
  const double x = std::sqrt(c);
  return b * R * (1.0 - std::sqrt(kPi) / (2.0 * x) * specfun::scaled_erfi(x));
}

double singular_qma_shape(int N, double b) {
  require_spread(b);
  if (N < 2) throw_domain("singular_qma_shape: N must be >= 2");
  const double e = 1.0 / (2.0 * (N - 1.0));
  return std::pow(0.5, e) * std::pow(b, 1.0 - e) * specfun::gamma(1.0 - e);
}

double singular_qma_length(double G, int N, double b) {
  if (!(G >= 0.0)) throw_domain("singular_qma_length: G must be >= 0");
  const double shape = singular_qma_shape(N, b);
  if (G == 0.0) return 0.0;
  return std::pow(G / (N - 1.0), 1.0 / (2.0 * (N - 1.0))) * shape;
}

double qma_sigma_zero(const Potential& pot, double b) {
  const double a = qma_scattering_length(pot, b);
  return 4.0 * kPi * a * a;
}

Amplitude qma_amplitude(const Potential& pot, double k, double theta, double kc, double rel_tol) {
  require_kc(kc);
  require_k(k);
  const Amplitude w = 1.0 / Amplitude(kc, -k);
  return impact::line_amplitude(pot, k, theta, w, rel_tol);
}

double square_qma_amplitude_zero_closed(double G, double R, double ka) {
  require_kc(ka);
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square_qma_amplitude_zero_closed: need G >= 0, R > 0");
  const double A = G * R / ka;
  return -0.5 * ka * R * R * (1.0 - detail::edge_ratio(A));
}

Calibration calibrate_kc_amplitude(const Potential& pot, double b) {
  require_spread(b);
  require_coupling(pot, CalibrationVariant::Amplitude);
  const double a = qma_scattering_length(pot, b, kCalibrationRelTol);
  auto residual = [&](double kc) {
    const auto t = impact::transmission_integral(pot, 1.0 / kc, 0.0, kCalibrationRelTol);
    return a - kc * t.real();
  };
  return solve_calibration(residual, CalibrationVariant::Amplitude, RootChoice::Smallest,
                           kCalibrationTol);
}

double qma_sigma(const Potential& pot, double k, double kc, double rel_tol) {
  require_kc(kc);
  require_k(k);
  const double scale = std::hypot(kc, k);
  return 8.0 * kPi * impact::sin2_integral(pot, 0.5 / scale, rel_tol);
}

double square_qma_sigma_closed(double G, double R, double k, double ks) {
  require_kc(ks);
  require_k(k);
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square_qma_sigma_closed: need G >= 0, R > 0");
  const double B = G * R / (2.0 * std::hypot(ks, k));
  const double B2 = B * B;
  if (B < 1e-2) {
    return kPi * R * R * B2 * (2.0 - B2 * (4.0 / 9.0 - B2 * (2.0 / 45.0 - B2 * 8.0 / 3150.0)));
  }
  return kPi * R * R / B2 *
         (1.0 + 2.0 * B2 - std::cos(2.0 * B) - 2.0 * B * std::sin(2.0 * B));
}

Calibration calibrate_kc_sigma(const Potential& pot, double b) {
  require_spread(b);
  require_coupling(pot, CalibrationVariant::CrossSection);
  const double a = qma_scattering_length(pot, b, kCalibrationRelTol);
  const double target = 4.0 * kPi * a * a;
  auto residual = [&](double kc) { return target - qma_sigma(pot, 0.0, kc, kCalibrationRelTol); };
  return solve_calibration(residual, CalibrationVariant::CrossSection, RootChoice::Largest,
                           kCalibrationTol * std::max(1.0, target));
}

double qma_cross_section_from_amplitude(const Potential& pot, double k, double kc,
                                        double rel_tol) {
  require_kc(kc);
  require_k(k);
  if (pot.coupling() == 0.0) return 0.0;
  const double inner_tol = std::min(1e-8, 1e-2 * rel_tol);
  if (k == 0.0) {
    const double f = std::abs(qma_amplitude(pot, 0.0, 0.0, kc, inner_tol));
    return 4.0 * kPi * f * f;
  }
  auto integrand = [&](double theta) {
    const double f = std::abs(qma_amplitude(pot, k, theta, kc, inner_tol));
    return std::sin(theta) * f * f;
  };
  const std::array<double, 5> breaks{0.0, kPi / 16.0, kPi / 4.0, kPi / 2.0, kPi};
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  return 2.0 * kPi * integrate_adaptive(integrand, std::span<const double>(breaks), opt).value;
}

}  // namespace scatter::qma
