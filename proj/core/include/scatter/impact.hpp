#pragma once

#include <complex>

#include "scatter/potential.hpp"

/// Impact-parameter integrals shared by the eikonal, quantum-mean and unitary
/// schemes. Y(rho) below is Potential::reduced_chord (the straight-line
/// integral of U/2) and v(r) = Potential::path_weight.
namespace scatter::impact {

using Complex = std::complex<double>;

/// int_0^inf rho J0(omega rho) [1 - exp(-w Y(rho))] d rho, Re w >= 0.
Complex transmission_integral(const Potential& pot, Complex w, double omega,
                              double rel_tol = 1e-9);

/// int_0^inf rho sin^2(c Y(rho)) d rho, c > 0.
double sin2_integral(const Potential& pot, double c, double rel_tol = 1e-9);

/// int_0^inf rho (1 - e^{-x}(1 + x)) d rho, x = Y(rho) / kc.
double threshold_integral(const Potential& pot, double kc, double rel_tol = 1e-9);

/// int_0^inf rho [1 - E (cos g + (kc/k) sin g)] d rho with
/// E = exp(-Y kc / (kc^2 + k^2)), g = Y k / (kc^2 + k^2).
double damped_forward_integral(const Potential& pot, double k, double kc,
                               double rel_tol = 1e-9);

/// int_0^inf rho Y(rho)^2 d rho.
double chord_square_moment(const Potential& pot, double rel_tol = 1e-10);

/// -int_0^inf rho J0(k rho sin t) int dz v(sqrt(rho^2 + z^2))
///     exp(2 i k z sin^2(t/2) - w int_z^inf v ds) dz.
/// Forward direction reduces to -(1/w) transmission_integral. Away from the
/// forward direction only Square and Yukawa are supported.
Complex line_amplitude(const Potential& pot, double k, double theta, Complex w,
                       double rel_tol = 1e-8);

}  // namespace scatter::impact
