#pragma once

#include <complex>
#include <vector>

#include "scatter/potential.hpp"

/// Unitary approximation: the forward amplitude
///   f(k, 0) = (-k_c + i k) int rho [1 - exp(-Y / (k_c - i k))] d rho
/// with k_c fixed by the optical theorem at threshold,
///   A(k_c)^2 = int rho [1 - e^{-x}(1 + x)] d rho,  x = Y / k_c,  A = f(0, 0),
/// and sigma(k) = 4 pi Im f(k, 0) / k.
namespace scatter::unitary {

using Amplitude = std::complex<double>;

struct UnitarySolution {
  double k_c = 0.0;
  /// f(0, 0) = A(k_c) < 0 for repulsion.
  double forward_amplitude = 0.0;
  /// Reported length -A(k_c) > 0.
  double scattering_length = 0.0;
  /// lim_{k -> 0} Im f(k, 0) / k at k_c.
  double threshold = 0.0;
  /// A^2 - threshold.
  double residual = 0.0;
  /// All roots found in the scanned range, ascending; k_c is the smallest.
  std::vector<double> candidates;
};

Amplitude unitary_forward_amplitude(const Potential& pot, double k, double kc,
                                    double rel_tol = 1e-10);

/// Square barrier: (R^2 / 2)(-k_c + i k)[1 - (2 / D^2)(1 - (1 + D) e^{-D})], D = G R / (k_c - i k).
Amplitude square_forward_amplitude_closed(double G, double R, double k, double kc);

/// Im f(k, 0) = k int rho [1 - E (cos g + (k_c / k) sin g)] d rho,
/// E = exp(-Y k_c / (k_c^2 + k^2)), g = Y k / (k_c^2 + k^2). k > 0.
double unitary_im_f(const Potential& pot, double k, double kc, double rel_tol = 1e-10);

/// Im f(k, 0) / k including k = 0 (the threshold integral).
double unitary_im_f_over_k(const Potential& pot, double k, double kc, double rel_tol = 1e-10);

/// Square barrier threshold: R^2 [1/2 - 3/D^2 + e^{-D}(1 + 3/D + 3/D^2)], D = G R / k_c.
double square_threshold_closed(double G, double R, double kc);

/// Smallest positive root of A(k_c)^2 = threshold(k_c).
UnitarySolution solve_unitary(const Potential& pot);

/// 4 pi Im f(k, 0) / k at the solved k_c; k = 0 gives 4 pi threshold.
double unitary_sigma(const Potential& pot, double k, const UnitarySolution& solution,
                     double rel_tol = 1e-10);

/// Cross section from the angle-integrated |f|^2 of the all-angle amplitude at the
/// same k_c, divided by unitary_sigma. Diagnostic only.
double amplitude_sigma_ratio(const Potential& pot, double k, const UnitarySolution& solution);

}  // namespace scatter::unitary
