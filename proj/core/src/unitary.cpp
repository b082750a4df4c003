#include "scatter/unitary.hpp"

#include <cmath>
#include <numbers>

#include "scatter/calibration.hpp"
#include "scatter/detail/series.hpp"
#include "scatter/error.hpp"
#include "scatter/impact.hpp"
#include "scatter/quantum_mean.hpp"

namespace scatter::unitary {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCalibrationRelTol = 1e-13;
constexpr double kCalibrationTol = 1e-12;

void require_kc(double kc) {
  if (!(kc > 0.0) || !std::isfinite(kc)) throw_domain("unitary: k_c must be > 0");
}

void require_k(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw_domain("unitary: k must be >= 0");
}

double threshold_series(double D) {
  // sum_{n>=2} (-1)^n (n - 1) D^n / (n! (n + 2))
  double sum = 0.0;
  double power = D * D;
  double factorial = 2.0;
  for (int n = 2; n <= 18; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (n - 1) * power / (factorial * (n + 2));
    power *= D;
    factorial *= (n + 1);
  }
  return sum;
}

}  // namespace

Amplitude unitary_forward_amplitude(const Potential& pot, double k, double kc, double rel_tol) {
  require_kc(kc);
  require_k(k);
  const Amplitude prefactor(-kc, k);
  const Amplitude w = 1.0 / Amplitude(kc, -k);
  return prefactor * impact::transmission_integral(pot, w, 0.0, rel_tol);
}

Amplitude square_forward_amplitude_closed(double G, double R, double k, double kc) {
  require_kc(kc);
  require_k(k);
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square_forward_amplitude_closed: need G >= 0, R > 0");
  const Amplitude D = G * R / Amplitude(kc, -k);
  return 0.5 * R * R * Amplitude(-kc, k) * (1.0 - detail::edge_ratio(D));
}

double unitary_im_f(const Potential& pot, double k, double kc, double rel_tol) {
  if (!(k > 0.0)) throw_domain("unitary_im_f: k must be > 0");
  return k * impact::damped_forward_integral(pot, k, kc, rel_tol);
}

double unitary_im_f_over_k(const Potential& pot, double k, double kc, double rel_tol) {
  require_k(k);
  return impact::damped_forward_integral(pot, k, kc, rel_tol);
}

double square_threshold_closed(double G, double R, double kc) {
  require_kc(kc);
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square_threshold_closed: need G >= 0, R > 0");
  const double D = G * R / kc;
  if (D < 0.1) return R * R * threshold_series(D);
  const double inv = 1.0 / D;
  return R * R * (0.5 - 3.0 * inv * inv + std::exp(-D) * (1.0 + 3.0 * inv + 3.0 * inv * inv));
}

UnitarySolution solve_unitary(const Potential& pot) {
  if (pot.coupling() == 0.0) {
    throw CalibrationError(ErrorCode::Degenerate,
                           "calibration (unitary): undefined for vanishing coupling");
  }
  auto amplitude = [&](double kc) {
    return -kc * impact::transmission_integral(pot, 1.0 / kc, 0.0, kCalibrationRelTol).real();
  };
  auto residual = [&](double kc) {
    const double A = amplitude(kc);
    return A * A - impact::threshold_integral(pot, kc, kCalibrationRelTol);
  };
  const Calibration cal =
      solve_calibration(residual, CalibrationVariant::Unitary, RootChoice::Smallest, kCalibrationTol);

  UnitarySolution sol;
  sol.k_c = cal.k_c;
  sol.forward_amplitude = amplitude(cal.k_c);
  sol.scattering_length = -sol.forward_amplitude;
  sol.threshold = impact::threshold_integral(pot, cal.k_c, kCalibrationRelTol);
  sol.residual = sol.forward_amplitude * sol.forward_amplitude - sol.threshold;
  sol.candidates = cal.candidates;
  return sol;
}

double unitary_sigma(const Potential& pot, double k, const UnitarySolution& solution,
                     double rel_tol) {
  return 4.0 * kPi * unitary_im_f_over_k(pot, k, solution.k_c, rel_tol);
}

double amplitude_sigma_ratio(const Potential& pot, double k, const UnitarySolution& solution) {
  const double sigma = unitary_sigma(pot, k, solution);
  if (sigma == 0.0) throw Error(ErrorCode::Degenerate, "amplitude_sigma_ratio: vanishing cross section");
  return qma::qma_cross_section_from_amplitude(pot, k, solution.k_c) / sigma;
}

}  // namespace scatter::unitary
