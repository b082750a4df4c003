#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scatter {

/// Machine-readable failure classes; the CLI serializes these verbatim.
enum class ErrorCode {
  Domain,              // argument outside the operation's domain
  Unsupported,         // operation undefined for this potential family
  Divergence,          // the requested quantity is infinite
  NonConvergence,      // iterative numerics gave up; best estimate attached
  NoSignChange,        // root bracket invalid or could not be found
  CalibrationFailure,  // calibration equation has no root in the scanned range
  Degenerate,          // calibration undefined (e.g. vanishing coupling)
  Usage,               // malformed CLI / config input
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown when an iteration stops short of its tolerance. Carries whatever
/// partial information the routine had.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, double best_estimate,
                      double error_estimate,
                      std::vector<double> partial_sums = {})
      : Error(ErrorCode::NonConvergence, message),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate),
        partial_sums_(std::move(partial_sums)) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }
  const std::vector<double>& partial_sums() const noexcept { return partial_sums_; }

 private:
  double best_estimate_;
  double error_estimate_;
  std::vector<double> partial_sums_;
};

/// A calibration equation without a usable root. `scan` holds (k_c, residual)
/// pairs sampled while searching.
class CalibrationError : public Error {
 public:
  struct Sample {
    double k_c;
    double residual;
  };

  CalibrationError(ErrorCode code, const std::string& message,
                   std::vector<Sample> scan = {})
      : Error(code, message), scan_(std::move(scan)) {}

  const std::vector<Sample>& scan() const noexcept { return scan_; }

 private:
  std::vector<Sample> scan_;
};

[[noreturn]] void throw_domain(const std::string& message);

}  // namespace scatter
