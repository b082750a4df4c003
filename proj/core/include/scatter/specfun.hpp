#pragma once

#include <vector>

/// Special functions used by the closed forms and the partial-wave solvers.
///
/// All functions are pure. Accuracy target is 1e-12 relative on the domains
/// exercised by the library (x in [1e-3, 100], l <= 40 for the spherical
/// families); the unit tests check this against independent series,
/// quadrature and identity oracles.
namespace scatter::specfun {

/// Bessel function J0 for any finite x.
double bessel_j0(double x);
/// Bessel function J1 for any finite x.
double bessel_j1(double x);
/// n-th positive zero of J0, n >= 1.
double bessel_j0_zero(int n);

/// Modified Bessel function K0, x > 0.
double bessel_k0(double x);

/// Gamma function for x > 0.
double gamma(double x);

/// Imaginary error function (2/sqrt(pi)) int_0^x exp(t^2) dt.
double erfi(double x);
/// exp(-x^2) * erfi(x); finite for every x (equals 2 D(x)/sqrt(pi), D = Dawson).
double scaled_erfi(double x);

struct SphericalPair {
  double j;
  double dj;
  double y;
  double dy;
};

/// Spherical Bessel j_l, y_l and their x-derivatives, x > 0.
SphericalPair spherical_bessel_pair(int l, double x);

struct ModifiedPair {
  double i;
  double di;
};

/// Modified spherical Bessel i_l(x) = sqrt(pi/2x) I_{l+1/2}(x) and derivative.
/// Overflows to infinity for x beyond ~700; use the scaled variant there.
ModifiedPair modified_spherical_i_pair(int l, double x);
/// exp(-x) * (i_l, i_l'), finite for all x >= 0.
ModifiedPair scaled_modified_spherical_i_pair(int l, double x);

/// Tables j_0..j_lmax and y_0..y_lmax at a single argument (one recurrence pass).
struct SphericalTable {
  std::vector<double> j;
  std::vector<double> y;
};
SphericalTable spherical_bessel_table(int lmax, double x);

/// exp(-x) * i_l for l = 0..lmax.
std::vector<double> scaled_modified_spherical_i_table(int lmax, double x);

}  // namespace scatter::specfun
