#pragma once

#include <functional>
#include <string_view>
#include <vector>

/// Root search shared by the k_c calibration equations.
namespace scatter {

enum class CalibrationVariant { Amplitude, CrossSection, Unitary };

std::string_view to_string(CalibrationVariant v);

struct Calibration {
  double k_c = 0.0;
  /// lhs - rhs of the calibration equation at k_c.
  double residual = 0.0;
  CalibrationVariant variant = CalibrationVariant::Amplitude;
  /// Every root found in the scanned range, ascending.
  std::vector<double> candidates;
};

enum class RootChoice { Smallest, Largest };

struct CalibrationSearch {
  double lo = 1e-3;
  double hi = 1e3;
  int samples_per_decade = 12;
  /// Upper limit of the geometric extension tried when [lo, hi] has no root.
  double extended_hi = 1e6;
};

/// Finds the roots of residual(k_c) on a log grid, refines each with Brent to
/// |residual| <= tol, and returns the one selected by `choice`. Throws
/// CalibrationError (carrying the scan) when no sign change exists.
Calibration solve_calibration(const std::function<double(double)>& residual,
                              CalibrationVariant variant, RootChoice choice, double tol,
                              const CalibrationSearch& search = {});

}  // namespace scatter
