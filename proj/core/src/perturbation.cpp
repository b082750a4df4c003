#include "scatter/perturbation.hpp"

#include <array>
#include <cmath>

#include "scatter/error.hpp"
#include "scatter/numerics.hpp"

namespace scatter::perturbation {
namespace {

void require_regular(const Potential& pot, const char* what) {
  if (pot.family() == Family::Singular) {
    throw Error(ErrorCode::Unsupported,
                std::string(what) + ": diverges for the singular family");
  }
}

void require_r(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) throw_domain(std::string(what) + ": r must be > 0");
}

// Integrates f over [a, inf), splitting at the barrier edge when there is one.
template <class F>
double integrate_from(const Potential& pot, F&& f, double a) {
  QuadratureOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-300;
  const double R = pot.support_radius();
  if (std::isfinite(R)) {
    if (a >= R) return 0.0;
    return integrate_adaptive(f, a, R, opt).value;
  }
  return integrate_semi_infinite(f, a, opt).value;
}

}  // namespace

double phi1_zero_k(const Potential& pot, double r) {
  require_regular(pot, "phi1_zero_k");
  require_r(r, "phi1_zero_k");
  const double lambda = pot.radial_factor();
  return -lambda * (pot.interior_moment(r) / r + pot.tail_moment(r));
}

double phi1_derivative(const Potential& pot, double y) {
  require_regular(pot, "phi1_derivative");
  require_r(y, "phi1_derivative");
  return pot.radial_factor() * pot.interior_moment(y) / (y * y);
}

double phi2_zero_k(const Potential& pot, double r) {
  require_regular(pot, "phi2_zero_k");
  require_r(r, "phi2_zero_k");
  if (pot.coupling() == 0.0) return 0.0;
  auto d2 = [&](double y) {
    if (y <= 0.0) return 0.0;
    const double d = phi1_derivative(pot, y);
    return d * d;
  };
  QuadratureOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-300;
  const double R = pot.support_radius();
  double inner = 0.0;
  if (std::isfinite(R) && r > R) {
    inner = integrate_adaptive([&](double y) { return y * y * d2(y); }, 0.0, R, opt).value +
            integrate_adaptive([&](double y) { return y * y * d2(y); }, R, r, opt).value;
  } else {
    inner = integrate_adaptive([&](double y) { return y * y * d2(y); }, 0.0, r, opt).value;
  }
  double outer = 0.0;
  auto tail = [&](double y) { return y * d2(y); };
  if (std::isfinite(R)) {
    // Outside the barrier Phi1' = c / y^2 exactly, so the tail is closed form.
    const double c = pot.radial_factor() * pot.interior_moment(R);
    const double start = std::max(r, R);
    outer = c * c / (2.0 * start * start);
    if (r < R) outer += integrate_adaptive(tail, r, R, opt).value;
  } else {
    outer = integrate_semi_infinite(tail, r, opt).value;
  }
  return inner / r + outer;
}

PhaseFunctions phase_functions(const Potential& pot, double r) {
  return {phi1_zero_k(pot, r), phi2_zero_k(pot, r)};
}

double born_length(const Potential& pot) {
  const double lambda = pot.radial_factor();
  switch (pot.family()) {
    case Family::Square: {
      const double R = pot.support_radius();
      return lambda * pot.coupling() * R * R * R / 3.0;
    }
    case Family::Yukawa:
      return lambda * pot.coupling();
    case Family::Singular:
      if (pot.coupling() == 0.0) return 0.0;
      throw Error(ErrorCode::Divergence, "born_length: diverges for the singular family");
  }
  return 0.0;
}

double jensen_length_bound(const Potential& pot) {
  require_regular(pot, "jensen_length_bound");
  if (pot.coupling() == 0.0) return 0.0;
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    return r * r * pot.radial(r) * std::exp(phi1_zero_k(pot, r));
  };
  return integrate_from(pot, f, 0.0);
}

}  // namespace scatter::perturbation
