#include "scatter/exact_reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scatter/error.hpp"
#include "scatter/specfun.hpp"

namespace scatter::exact {
namespace {

constexpr double kPi = std::numbers::pi;

// Wraps an angle difference into (-pi/2, pi/2].
double wrap_half_pi(double d) {
  d = std::fmod(d, kPi);
  if (d > 0.5 * kPi) d -= kPi;
  if (d <= -0.5 * kPi) d += kPi;
  return d;
}

struct Interior {
  std::vector<double> f;   // interior radial function at R (any common scale)
  std::vector<double> df;  // d/dr at R, same scale
};

// Interior solutions of u'' = [l(l+1)/r^2 + G - k^2] u expressed as R(r) = u/r.
Interior interior_solutions(double G, double R, double k, int lmax) {
  Interior in;
  in.f.resize(lmax + 1);
  in.df.resize(lmax + 1);
  const double q2 = G - k * k;
  if (q2 > 0.0) {
    const double kappa = std::sqrt(q2);
    const double x = kappa * R;
    const auto t = specfun::scaled_modified_spherical_i_table(lmax + 1, x);
    for (int l = 0; l <= lmax; ++l) {
      in.f[l] = t[l];
      in.df[l] = kappa * (t[l + 1] + l / x * t[l]);
    }
  } else if (q2 < 0.0) {
    const double kb = std::sqrt(-q2);
    const double x = kb * R;
    const auto t = specfun::spherical_bessel_table(lmax + 1, x);
    for (int l = 0; l <= lmax; ++l) {
      in.f[l] = t.j[l];
      in.df[l] = kb * (l / x * t.j[l] - t.j[l + 1]);
    }
  } else {
    for (int l = 0; l <= lmax; ++l) {
      in.f[l] = 1.0;  // r^l scaled by R^-l
      in.df[l] = l / R;
    }
  }
  return in;
}

std::vector<double> principal_shifts(double G, double R, double k, int lmax) {
  std::vector<double> out(lmax + 1, 0.0);
  if (G == 0.0) return out;
  const Interior in = interior_solutions(G, R, k, lmax);
  const double x = k * R;
  const auto ext = specfun::spherical_bessel_table(lmax + 1, x);
  for (int l = 0; l <= lmax; ++l) {
    const double j = ext.j[l];
    const double y = ext.y[l];
    const double dj = k * (l / x * j - ext.j[l + 1]);
    const double dy = k * (l / x * y - ext.y[l + 1]);
    const double num = dj * in.f[l] - in.df[l] * j;
    const double den = dy * in.f[l] - in.df[l] * y;
    out[l] = (den == 0.0) ? 0.5 * kPi : std::atan(num / den);
  }
  return out;
}

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw_domain("phase shift: k must be > 0");
}

}  // namespace

double square_phase_shift_principal(double G, double R, double k, int l) {
  require_k(k);
  if (l < 0) throw_domain("phase shift: l must be >= 0");
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square barrier: need G >= 0, R > 0");
  return principal_shifts(G, R, k, l)[l];
}

double square_phase_shift(double G, double R, double k, int l) {
  const double target = square_phase_shift_principal(G, R, k, l);
  if (G == 0.0) return 0.0;
  // Follow the branch from k -> 0+ where delta -> 0; steps keep |d delta| well below pi/2.
  const int steps = 64 + static_cast<int>(std::ceil(16.0 * (k * R + std::sqrt(G) * R)));
  double branch = 0.0;
  double prev = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double ki = k * i / steps;
    const double p = (i == steps) ? target : square_phase_shift_principal(G, R, ki, l);
    branch += wrap_half_pi(p - prev);
    prev = p;
  }
  return branch;
}

PhaseShiftTable square_phase_shifts(double G, double R, double k, double cutoff) {
  require_k(k);
  PhaseShiftTable table;
  table.k = k;
  int lmax = static_cast<int>(std::ceil(k * R)) + 30;
  for (int attempt = 0; attempt < 8; ++attempt, lmax *= 2) {
    const auto d = principal_shifts(G, R, k, lmax);
    const int classical = static_cast<int>(std::ceil(k * R));
    for (int l = 0; l <= lmax; ++l) {
      if (l > classical && std::fabs(d[l]) < cutoff) {
        table.entries.clear();
        for (int m = 0; m <= l; ++m) table.entries.push_back({m, d[m]});
        table.l_max = l;
        table.converged = true;
        return table;
      }
    }
  }
  throw NonConvergenceError("square_phase_shifts: partial waves did not converge", 0.0, 0.0);
}

double square_scattering_length(double G, double R) {
  if (!(G >= 0.0) || !(R > 0.0)) throw_domain("square_scattering_length: need G >= 0, R > 0");
  const double x = std::sqrt(G) * R;  // the barrier enters through sqrt(G) R
  if (x < 1e-3) {
    const double x2 = x * x;
    return R * x2 / 3.0 * (1.0 - 0.4 * x2 * (1.0 - 17.0 / 42.0 * x2));
  }
  return R * (1.0 - std::tanh(x) / x);
}

CrossSection square_cross_section(double G, double R, double k) {
  const PhaseShiftTable t = square_phase_shifts(G, R, k);
  double sum = 0.0;
  for (const auto& e : t.entries) {
    const double s = std::sin(e.delta);
    sum += (2 * e.l + 1) * s * s;
  }
  return {4.0 * kPi / (k * k) * sum, t.l_max, t.converged};
}

RadialGrid default_grid(const Potential& pot) {
  if (pot.family() != Family::Yukawa) {
    throw Error(ErrorCode::Unsupported, "numerov: only the Yukawa family is supported");
  }
  double r = 25.0;
  while (pot.radial(r) >= 1e-14) r += 0.5;
  return {r + 5.0, 0.01, r};
}

namespace {

void require_yukawa(const Potential& pot) {
  if (pot.family() != Family::Yukawa) {
    throw Error(ErrorCode::Unsupported, "numerov: only the Yukawa family is supported");
  }
}

struct MatchValues {
  double r1, u1, r2, u2;
};

// Outward Numerov integration on a uniform grid of step h; returns u at the
// grid points nearest match_radius and r_max.
MatchValues numerov_integrate(const Potential& pot, double k, int l, double h, double match_radius,
                              double r_max) {
  const double G = pot.coupling();
  const double k2 = k * k;
  const double ll = l * (l + 1.0);
  auto Q = [&](double r) { return ll / (r * r) + pot.radial(r) - k2; };

  const int n1 = static_cast<int>(std::lround(match_radius / h));
  const int n2 = static_cast<int>(std::lround(r_max / h));
  const int j0 = std::max(1, l / 4);
  if (j0 + 2 >= n1) throw_domain("numerov: grid too coarse for this partial wave");

  // Regular series u = r^{l+1} (1 + a1 r + a2 r^2) for U = 2G e^{-r}/r.
  const double cm1 = 2.0 * G;
  const double c0 = -2.0 * G;
  const double a1 = cm1 / (2.0 * (l + 1.0));
  const double a2 = (cm1 * a1 + c0 - k2) / (4.0 * l + 6.0);
  auto series = [&](double r) { return 1.0 + a1 * r + a2 * r * r; };

  const double r0 = j0 * h;
  const double ra = (j0 + 1) * h;
  double u_prev = series(r0);
  double u_cur = std::exp((l + 1.0) * std::log(ra / r0)) * series(ra);
  const double c = h * h / 12.0;
  double w_prev = (1.0 - c * Q(r0)) * u_prev;
  double w_cur = (1.0 - c * Q(ra)) * u_cur;

  MatchValues mv{};
  for (int n = j0 + 1; n < n2; ++n) {
    const double r = n * h;
    const double rn = (n + 1) * h;
    const double q = Q(r);
    const double w_next = 2.0 * w_cur - w_prev + h * h * q * u_cur;
    const double u_next = w_next / (1.0 - c * Q(rn));
    w_prev = w_cur;
    w_cur = w_next;
    u_cur = u_next;
    if (n + 1 == n1) {
      mv.r1 = rn;
      mv.u1 = u_next;
    }
    if (std::fabs(u_cur) > 1e200) {
      w_prev *= 1e-200;
      w_cur *= 1e-200;
      u_cur *= 1e-200;
      mv.u1 *= 1e-200;
    }
  }
  mv.r2 = n2 * h;
  mv.u2 = u_cur;
  return mv;
}

double match_phase(const MatchValues& mv, double k, int l) {
  const auto p1 = specfun::spherical_bessel_pair(l, k * mv.r1);
  const auto p2 = specfun::spherical_bessel_pair(l, k * mv.r2);
  // R(r) = u/r proportional to j cos(delta) - y sin(delta)
  const double K = (mv.u2 / mv.r2) / (mv.u1 / mv.r1);
  const double num = K * p1.j - p2.j;
  const double den = K * p1.y - p2.y;
  return std::atan(num / den);
}

template <class Solve>
double richardson(Solve&& solve, double h0, bool angular, const char* what) {
  double prev = solve(h0);
  double h = h0;
  double extrap_prev = 0.0;
  for (int level = 1; level <= 6; ++level) {
    h *= 0.5;
    const double cur = solve(h);
    const double diff = angular ? wrap_half_pi(cur - prev) : cur - prev;
    const double extrap = cur + diff / 15.0;
    if (level >= 2) {
      const double change = angular ? wrap_half_pi(extrap - extrap_prev) : extrap - extrap_prev;
      if (std::fabs(change) < 1e-8 * std::max(1.0, std::fabs(extrap))) return extrap;
    }
    extrap_prev = extrap;
    prev = cur;
  }
  throw NonConvergenceError(std::string(what) + ": step halving did not converge", extrap_prev,
                            0.0);
}

}  // namespace

double numerov_phase_shift(const Potential& pot, double k, int l, const RadialGrid& grid) {
  require_yukawa(pot);
  require_k(k);
  if (l < 0) throw_domain("numerov_phase_shift: l must be >= 0");
  if (!(grid.h > 0.0) || !(grid.match_radius < grid.r_max)) throw_domain("numerov: invalid grid");
  auto solve = [&](double h) {
    return match_phase(numerov_integrate(pot, k, l, h, grid.match_radius, grid.r_max), k, l);
  };
  return richardson(solve, grid.h, true, "numerov_phase_shift");
}

double numerov_phase_shift(const Potential& pot, double k, int l) {
  return numerov_phase_shift(pot, k, l, default_grid(pot));
}

double numerov_scattering_length(const Potential& pot, const RadialGrid& grid) {
  require_yukawa(pot);
  if (pot.coupling() == 0.0) return 0.0;
  auto solve = [&](double h) {
    const MatchValues mv = numerov_integrate(pot, 0.0, 0, h, grid.match_radius, grid.r_max);
    // u = C (r - a) outside the potential.
    return (mv.r1 * mv.u2 - mv.r2 * mv.u1) / (mv.u2 - mv.u1);
  };
  return richardson(solve, grid.h, false, "numerov_scattering_length");
}

double numerov_scattering_length(const Potential& pot) {
  return numerov_scattering_length(pot, default_grid(pot));
}

CrossSection yukawa_cross_section(const Potential& pot, double k, const RadialGrid& grid) {
  require_yukawa(pot);
  require_k(k);
  CrossSection out;
  if (pot.coupling() == 0.0) {
    out.converged = true;
    return out;
  }
  double sum = 0.0;
  int quiet = 0;
  const int classical = static_cast<int>(std::ceil(k * 3.0));
  const int cap = static_cast<int>(k * grid.match_radius) + 400;
  for (int l = 0; l <= cap; ++l) {
    const double d = numerov_phase_shift(pot, k, l, grid);
    const double s = std::sin(d);
    const double term = (2 * l + 1) * s * s;
    sum += term;
    out.l_max = l;
    quiet = (l > classical && term < 1e-12 * sum) ? quiet + 1 : 0;
    if (quiet >= 3) {
      out.converged = true;
      break;
    }
  }
  out.sigma = 4.0 * kPi / (k * k) * sum;
  return out;
}

CrossSection yukawa_cross_section(const Potential& pot, double k) {
  return yukawa_cross_section(pot, k, default_grid(pot));
}

double singular_exact_shape(int N) {
  if (N < 2) throw_domain("singular: N must be >= 2");
  const double e = 1.0 / (2.0 * (N - 1.0));
  return std::pow(2.0, -1.0 / (N - 1.0)) * specfun::gamma(1.0 - e) / specfun::gamma(1.0 + e);
}

double singular_exact_length(double G, int N) {
  if (!(G >= 0.0)) throw_domain("singular: G must be >= 0");
  if (G == 0.0) return 0.0;
  return std::pow(G / (N - 1.0), 1.0 / (2.0 * (N - 1.0))) * singular_exact_shape(N);
}

}  // namespace scatter::exact
