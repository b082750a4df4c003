#pragma once

#include <vector>

#include "scatter/potential.hpp"

/// Converged reference values the approximation schemes are measured against.
///
/// Phase-shift convention: the regular radial solution behaves as
/// sin(kr - l pi/2 + delta_l) at large r, so repulsion gives delta_0 < 0 and
/// the reported scattering length is a = -lim delta_0(k)/k > 0.
namespace scatter::exact {

struct PhaseShift {
  int l;
  double delta;  // radians
};

struct PhaseShiftTable {
  double k = 0.0;
  std::vector<PhaseShift> entries;
  int l_max = 0;
  bool converged = false;
};

struct CrossSection {
  double sigma = 0.0;
  int l_max = 0;
  bool converged = false;
};

/// Square-barrier phase shift on the branch continuous in k with delta(0+) = 0.
double square_phase_shift(double G, double R, double k, int l);
/// Same, reduced to (-pi/2, pi/2]. Cheaper; enough wherever only sin^2 matters.
double square_phase_shift_principal(double G, double R, double k, int l);
/// Principal-branch shifts for l = 0.. until |delta_l| < cutoff past l ~ kR.
PhaseShiftTable square_phase_shifts(double G, double R, double k, double cutoff = 1e-12);
/// R [1 - tanh(sqrt G) / sqrt G].
double square_scattering_length(double G, double R = 1.0);
/// (4 pi / k^2) sum (2l + 1) sin^2 delta_l.
CrossSection square_cross_section(double G, double R, double k);

struct RadialGrid {
  double r_max;
  double h;
  double match_radius;
};

/// Grid for the Numerov solver: match radius where U(r) < 1e-14 and r >= 25.
RadialGrid default_grid(const Potential& pot);

/// Numerov integration of u'' = [l(l+1)/r^2 + U(r) - k^2] u (Yukawa only),
/// phase from two-point matching to j_l, y_l, Richardson step halving until
/// successive extrapolants agree to 1e-8.
double numerov_phase_shift(const Potential& pot, double k, int l, const RadialGrid& grid);
double numerov_phase_shift(const Potential& pot, double k, int l);

/// Zero-energy Numerov solution: a = r - u/u' outside the potential.
double numerov_scattering_length(const Potential& pot, const RadialGrid& grid);
double numerov_scattering_length(const Potential& pot);

/// Partial-wave sum over Numerov phase shifts, truncated once
/// (2l+1) sin^2 delta_l stays below 1e-12 of the running sum past l ~ k r_match.
CrossSection yukawa_cross_section(const Potential& pot, double k, const RadialGrid& grid);
CrossSection yukawa_cross_section(const Potential& pot, double k);

/// Exact scattering length of U = G / r^{2N}:
/// (G/(N-1))^{1/(2(N-1))} f(N), f(N) = 2^{-1/(N-1)} Gamma(1 - 1/(2(N-1))) / Gamma(1 + 1/(2(N-1))).
double singular_exact_length(double G, int N);
/// f(N) above.
double singular_exact_shape(int N);

}  // namespace scatter::exact
