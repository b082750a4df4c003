#pragma once

#include <complex>

#include "scatter/calibration.hpp"
#include "scatter/potential.hpp"

/// Quantum-mean approximation. The zero-energy length replaces the exact
/// phase by its mean over paths of spread b:
///   a(b) = int r^2 U(r) exp(-(lambda / b) T(r)) dr,   T(r) = int_r^inf s V(s) ds,
/// and the finite-momentum amplitude damps the eikonal phase with a scale k_c:
///   f = -int rho J0(k rho sin t) int dz v e^{2 i k z sin^2(t/2) - F(z) / (k_c - i k)} dz.
namespace scatter::qma {

using Amplitude = std::complex<double>;

/// Reported lengths are positive for repulsion.
double qma_scattering_length(const Potential& pot, double b = 1.0, double rel_tol = 1e-11);

/// Square barrier: b R [1 - sqrt(pi / c) e^{-c} erfi(sqrt c) / 2], c = G R^2 / (2b).
double square_qma_length_closed(double G, double R, double b);

/// U = G / r^{2N}, e = 1/(2(N-1)): (G / (N - 1))^e 2^{-e} b^{1-e} Gamma(1 - e).
double singular_qma_length(double G, int N, double b = 1.0);
/// 2^{-e} b^{1-e} Gamma(1 - e), comparable with exact::singular_exact_shape.
double singular_qma_shape(int N, double b = 1.0);

/// 4 pi a(b)^2.
double qma_sigma_zero(const Potential& pot, double b = 1.0);

Amplitude qma_amplitude(const Potential& pot, double k, double theta, double kc,
                        double rel_tol = 1e-8);

/// Square barrier, k = 0: -(k_a R^2 / 2) [1 - (2 / A^2)(1 - (1 + A) e^{-A})], A = G R / k_a.
double square_qma_amplitude_zero_closed(double G, double R, double ka);

/// a(b) = k_c int rho [1 - exp(-Y / k_c)] d rho.
Calibration calibrate_kc_amplitude(const Potential& pot, double b = 1.0);

/// 8 pi int rho sin^2(Y / (2 sqrt(k_c^2 + k^2))) d rho.
double qma_sigma(const Potential& pot, double k, double kc, double rel_tol = 1e-10);

/// Square barrier: (pi R^2 / B^2)(1 + 2B^2 - cos 2B - 2B sin 2B), B = G R / (2 sqrt(k_s^2 + k^2)).
double square_qma_sigma_closed(double G, double R, double k, double ks);

/// 4 pi a(b)^2 = qma_sigma(pot, 0, k_c). The residual is not monotone; when
/// it changes sign more than once the largest root is taken.
Calibration calibrate_kc_sigma(const Potential& pot, double b = 1.0);

/// 2 pi int_0^pi sin t |f(k, t)|^2 dt over qma_amplitude.
double qma_cross_section_from_amplitude(const Potential& pot, double k, double kc,
                                        double rel_tol = 1e-6);

}  // namespace scatter::qma
