#include "scatter/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scatter/error.hpp"
#include "scatter/numerics.hpp"

namespace scatter {

std::string_view to_string(CalibrationVariant v) {
  switch (v) {
    case CalibrationVariant::Amplitude:
      return "amplitude";
    case CalibrationVariant::CrossSection:
      return "sigma";
    case CalibrationVariant::Unitary:
      return "unitary";
  }
  return "unknown";
}

Calibration solve_calibration(const std::function<double(double)>& residual,
                              CalibrationVariant variant, RootChoice choice, double tol,
                              const CalibrationSearch& search) {
  std::vector<CalibrationError::Sample> scan;
  auto sampled = [&](double kc) {
    double r = std::numeric_limits<double>::quiet_NaN();
    try {
      r = residual(kc);
    } catch (const NonConvergenceError&) {
      // treated as a gap in the scan
    }
    scan.push_back({kc, r});
    return r;
  };

  auto samples_for = [&](double lo, double hi) {
    return std::max(2, static_cast<int>(std::ceil(search.samples_per_decade *
                                                  std::log10(hi / lo))) + 1);
  };
  auto changes = scan_sign_changes(sampled, search.lo, search.hi, samples_for(search.lo, search.hi));
  if (changes.empty() && search.extended_hi > search.hi) {
    changes = scan_sign_changes(sampled, search.hi, search.extended_hi,
                                samples_for(search.hi, search.extended_hi));
  }
  if (changes.empty()) {
    std::sort(scan.begin(), scan.end(),
              [](const auto& a, const auto& b) { return a.k_c < b.k_c; });
    throw CalibrationError(ErrorCode::CalibrationFailure,
                           std::string("calibration (") + std::string(to_string(variant)) +
                               "): no sign change of the residual in the scanned range",
                           std::move(scan));
  }

  Calibration out;
  out.variant = variant;
  std::vector<RootResult> roots;
  for (const auto& c : changes) roots.push_back(find_root_bracketed(residual, c.lo, c.hi, tol));
  for (const auto& r : roots) out.candidates.push_back(r.root);
  const RootResult& pick = (choice == RootChoice::Smallest) ? roots.front() : roots.back();
  out.k_c = pick.root;
  out.residual = pick.residual;
  return out;
}

}  // namespace scatter
