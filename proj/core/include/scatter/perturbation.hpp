#pragma once

#include "scatter/potential.hpp"

/// Zero-energy cumulant phase functions and the bounds built from them.
/// All quantities use U(r) = radial_factor * V(r), the term entering the radial equation.
namespace scatter::perturbation {

struct PhaseFunctions {
  double phi1;
  double phi2;
};

/// Phi1(r) = -[(1/r) int_0^r y^2 U dy + int_r^inf y U dy]  (<= 0).
double phi1_zero_k(const Potential& pot, double r);
/// Phi1'(y) = (1/y^2) int_0^y s^2 U ds.
double phi1_derivative(const Potential& pot, double y);
/// Phi2(r) = (1/r) int_0^r y^2 Phi1'(y)^2 dy + int_r^inf y Phi1'(y)^2 dy  (>= 0).
double phi2_zero_k(const Potential& pot, double r);
PhaseFunctions phase_functions(const Potential& pot, double r);

/// a_B = int_0^inf r^2 U(r) dr.
double born_length(const Potential& pot);
/// int_0^inf r^2 U(r) exp(Phi1(r)) dr; a lower bound on the exact length.
double jensen_length_bound(const Potential& pot);

}  // namespace scatter::perturbation
