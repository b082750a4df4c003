#pragma once

#include <complex>

#include "scatter/potential.hpp"

/// Straight-line (eikonal) scattering. With Y the reduced chord
/// (Potential::reduced_chord):
///   f(k, t)      = i k int rho J0(k rho t) [1 - exp(-i Y / k)] d rho
///   sigma(k)     = 8 pi int rho sin^2(Y / (2k)) d rho
///   Im f(k, 0)   = k int rho [1 - cos(Y / k)] d rho
/// The phase diverges as k -> 0, so momenta below k_min are rejected.
namespace scatter::eikonal {

using Amplitude = std::complex<double>;

struct Options {
  double k_min = 1e-3;
  double rel_tol = 1e-9;
};

Amplitude eikonal_amplitude(const Potential& pot, double k, double theta, const Options& opt = {});

/// Exact straight-line phase for every angle: the momentum transfer enters
/// through J0(k rho sin t) and a longitudinal phase 2 k z sin^2(t/2).
Amplitude eikonal_amplitude_all_angle(const Potential& pot, double k, double theta,
                                      const Options& opt = {});

double eikonal_cross_section(const Potential& pot, double k, const Options& opt = {});

/// 2 pi int_0^pi sin t |f(k, t)|^2 dt over eikonal_amplitude_all_angle.
double eikonal_cross_section_all_angle(const Potential& pot, double k, const Options& opt = {});

double eikonal_forward_im(const Potential& pot, double k, const Options& opt = {});

/// sigma k / (4 pi Im f(k, 0)); equal to 1 up to quadrature error.
double unitarity_ratio(const Potential& pot, double k, const Options& opt = {});

/// lim sigma k^2 = 2 pi int rho Y^2 d rho (finite-range families).
double high_momentum_limit(const Potential& pot);

/// Closed form of the eikonal cross section for U = G / r^{2N}. Depends on G/k only
/// and tends to 2 pi as N grows.
double singular_eikonal_sigma(double G, int N, double k);

}  // namespace scatter::eikonal
