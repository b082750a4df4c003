#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "scatter/potential.hpp"
#include "scatter/rng.hpp"

/// Brownian-path estimates of the zero-energy solution. For a standard 3D
/// Brownian path xi started at the origin,
///   psi(r) = E[exp(-int_0^inf v(|r e_z - xi(nu)|) d nu)],   v = U / 2,
/// solves psi'' + (2/r) psi' = U psi with psi -> 1, and a = int r^2 U psi dr.
namespace scatter::mc {

struct McConfig {
  /// Paths per radial point (antithetic pairs count as two).
  std::size_t n_paths = 2000;
  double d_nu = 0.01;
  double nu_max = 40.0;
  std::uint64_t seed = 0x5eed5eedULL;
  bool antithetic = true;
  /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
  /// Batches for the jackknife error of the scattering length.
  std::size_t batches = 20;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  /// Effective sample size (sum w)^2 / sum w^2; minimum over radial points for lengths.
  double ess = 0.0;
  std::size_t n_paths = 0;
  double d_nu = 0.0;
  double nu_max = 0.0;
  /// Paths whose weight underflowed to zero (core hits of the singular family).
  std::size_t zero_weights = 0;
};

using Point = std::array<double, 3>;

/// xi_0 = 0, xi_j = xi_{j-1} + sqrt(d_nu) eta_j; nu_max / d_nu + 1 points.
std::vector<Point> sample_path(CounterStream& rng, const McConfig& cfg);

/// Truncated estimator E[exp(-sum_j v(|r e_z - xi_{j-1/2}|) d_nu)] over the
/// horizon nu_max, v evaluated at step midpoints.
McEstimate mc_phi(const Potential& pot, double r, const McConfig& cfg);

enum class TailTreatment {
  /// Drop everything after nu_max.
  Truncate,
  /// Continue each path exactly through psi at its endpoint, using
  /// psi(x) = 1 - int y^2 U(y) psi(y) / max(|x|, y) dy on the radial grid.
  Closure,
};

struct McNode {
  double r;
  double weight;  // radial quadrature weight
  double psi;
  double psi_std_error;
  double ess;
};

struct McLength {
  McEstimate estimate;
  std::vector<McNode> nodes;
  TailTreatment tail = TailTreatment::Closure;
};

/// Radial quadrature nodes (r, weight) used by mc_scattering_length.
std::vector<std::array<double, 2>> radial_grid(const Potential& pot);

/// a = int r^2 U psi dr on radial_grid with independent streams per node; the
/// error is a delete-one-batch jackknife over path batches.
McLength mc_scattering_length(const Potential& pot, const McConfig& cfg,
                              TailTreatment tail = TailTreatment::Closure);

}  // namespace scatter::mc
