#include "scatter/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "scatter/error.hpp"
#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

namespace scatter {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// sqrt(pi) Gamma(N - 1/2) / Gamma(N)
double singular_chord_constant(int N) {
  return std::sqrt(std::numbers::pi) *
         std::exp(std::lgamma(N - 0.5) - std::lgamma(static_cast<double>(N)));
}

}  // namespace

Potential::Potential(Variant v) : v_(v) {
  std::visit(overloaded{
                 [](const SquareBarrier& p) {
                   if (!(p.G >= 0.0) || !std::isfinite(p.G)) throw_domain("square barrier: G must be >= 0");
                   if (!(p.R > 0.0) || !std::isfinite(p.R)) throw_domain("square barrier: R must be > 0");
                 },
                 [](const Singular& p) {
                   if (!(p.G >= 0.0) || !std::isfinite(p.G)) throw_domain("singular: G must be >= 0");
                   if (p.N < 2) throw_domain("singular: N must be >= 2");
                 },
                 [](const Yukawa& p) {
                   if (!(p.G >= 0.0) || !std::isfinite(p.G)) throw_domain("yukawa: G must be >= 0");
                 },
             },
             v_);
}

Family Potential::family() const noexcept {
  return std::visit(overloaded{
                        [](const SquareBarrier&) { return Family::Square; },
                        [](const Singular&) { return Family::Singular; },
                        [](const Yukawa&) { return Family::Yukawa; },
                    },
                    v_);
}

double Potential::coupling() const noexcept {
  return std::visit([](const auto& p) { return p.G; }, v_);
}

Potential Potential::with_coupling(double G) const {
  Variant v = v_;
  std::visit([G](auto& p) { p.G = G; }, v);
  return Potential(v);
}

std::string Potential::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const SquareBarrier& p) { os << "square(G=" << p.G << ",R=" << p.R << ")"; },
                 [&](const Singular& p) { os << "singular(G=" << p.G << ",N=" << p.N << ")"; },
                 [&](const Yukawa& p) { os << "yukawa(G=" << p.G << ")"; },
             },
             v_);
  return os.str();
}

double Potential::radial_factor() const noexcept {
  return family() == Family::Yukawa ? 2.0 : 1.0;
}

double Potential::support_radius() const noexcept {
  if (const auto* sq = std::get_if<SquareBarrier>(&v_)) return sq->R;
  return std::numeric_limits<double>::infinity();
}

double Potential::value(double r) const {
  if (!(r > 0.0)) throw_domain("potential value: r must be > 0");
  return std::visit(overloaded{
                        [r](const SquareBarrier& p) { return r < p.R ? p.G : 0.0; },
                        [r](const Singular& p) { return p.G * std::pow(r, -2.0 * p.N); },
                        [r](const Yukawa& p) { return p.G * std::exp(-r) / r; },
                    },
                    v_);
}

double Potential::tail_moment(double r) const {
  if (!(r >= 0.0)) throw_domain("tail_moment: r must be >= 0");
  if (std::isinf(r)) return 0.0;
  return std::visit(overloaded{
                        [r](const SquareBarrier& p) {
                          return 0.5 * p.G * std::max(p.R * p.R - r * r, 0.0);
                        },
                        [r](const Singular& p) -> double {
                          if (r == 0.0) {
                            if (p.G == 0.0) return 0.0;
                            throw Error(ErrorCode::Divergence, "tail_moment: singular potential diverges at r = 0");
                          }
                          return p.G / ((2.0 * p.N - 2.0) * std::pow(r, 2.0 * p.N - 2.0));
                        },
                        [r](const Yukawa& p) { return p.G * std::exp(-r); },
                    },
                    v_);
}

double Potential::chord_integral(double rho) const {
  if (!(rho > 0.0)) throw_domain("chord_integral: rho must be > 0");
  return std::visit(overloaded{
                        [rho](const SquareBarrier& p) {
                          return rho < p.R ? 2.0 * p.G * std::sqrt(p.R * p.R - rho * rho) : 0.0;
                        },
                        [rho](const Singular& p) {
                          return p.G * singular_chord_constant(p.N) * std::pow(rho, 1.0 - 2.0 * p.N);
                        },
                        [rho](const Yukawa& p) {
                          if (rho > 700.0) return 0.0;
                          return 2.0 * p.G * specfun::bessel_k0(rho);
                        },
                    },
                    v_);
}

double Potential::interior_moment(double r) const {
  if (!(r > 0.0)) throw_domain("interior_moment: r must be > 0");
  return std::visit(overloaded{
                        [r](const SquareBarrier& p) {
                          const double m = std::min(r, p.R);
                          return p.G * m * m * m / 3.0;
                        },
                        [](const Singular&) -> double {
                          throw Error(ErrorCode::Unsupported,
                                      "interior_moment: diverges for the singular family");
                        },
                        [r](const Yukawa& p) {
                          // 1 - (1 + r) e^{-r}, written to avoid cancellation at small r.
                          const double em1 = -std::expm1(-r);
                          return p.G * (em1 - r * std::exp(-r));
                        },
                    },
                    v_);
}

double Potential::line_tail(double rho, double z) const {
  if (!(rho > 0.0)) throw_domain("line_tail: rho must be > 0");
  return std::visit(
      overloaded{
          [rho, z](const SquareBarrier& p) {
            if (rho >= p.R) return 0.0;
            const double half = std::sqrt(p.R * p.R - rho * rho);
            const double lo = std::clamp(z, -half, half);
            return p.G * (half - lo);
          },
          [rho, z](const Singular& p) {
            // s = rho tan(phi): G rho^{1-2N} int_{atan(z/rho)}^{pi/2} cos^{2N-2}(phi) dphi
            const double phi0 = std::atan2(z, rho);
            const double pw = 2.0 * p.N - 2.0;
            const auto r = integrate_adaptive(
                [pw](double phi) { return std::pow(std::cos(phi), pw); }, phi0,
                0.5 * std::numbers::pi, 1e-13);
            return p.G * std::pow(rho, 1.0 - 2.0 * p.N) * r.value;
          },
          [rho, z](const Yukawa& p) {
            // s = rho sinh(u): G int_{asinh(z/rho)}^inf exp(-rho cosh u) du
            const double u0 = std::asinh(z / rho);
            const double u_max = std::acosh(std::max(1.0, 745.0 / rho)) + 1.0;
            if (u0 >= u_max) return 0.0;
            const auto r = integrate_adaptive(
                [rho](double u) { return std::exp(-rho * std::cosh(u)); }, u0, u_max, 1e-13);
            return p.G * r.value;
          },
      },
      v_);
}

}  // namespace scatter
