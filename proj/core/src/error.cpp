#include "scatter/error.hpp"

namespace scatter {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::Unsupported: return "unsupported_potential";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::NoSignChange: return "no_sign_change";
    case ErrorCode::CalibrationFailure: return "calibration_failure";
    case ErrorCode::Degenerate: return "degenerate_calibration";
    case ErrorCode::Usage: return "usage_error";
  }
  return "unknown";
}

void throw_domain(const std::string& message) {
  throw Error(ErrorCode::Domain, message);
}

}  // namespace scatter
