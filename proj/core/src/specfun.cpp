#include "scatter/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scatter/error.hpp"

namespace scatter::specfun {
namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw_domain(std::string(name) + ": non-finite argument");
}

void require_positive(double x, const char* name) {
  require_finite(x, name);
  if (x <= 0.0) throw_domain(std::string(name) + ": argument must be positive");
}

// Starting order for Miller's backward recurrence.
int miller_start(int lmax, double x) {
  const double top = std::max(static_cast<double>(lmax), x);
  return lmax + 20 + static_cast<int>(std::ceil(x + std::sqrt(40.0 * (top + 1.0))));
}

constexpr double kRescale = 1e250;

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  return std::cyl_bessel_j(0.0, std::fabs(x));
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double v = std::cyl_bessel_j(1.0, std::fabs(x));
  return x < 0.0 ? -v : v;
}

double bessel_j0_zero(int n) {
  if (n < 1) throw_domain("bessel_j0_zero: index must be >= 1");
  // McMahon expansion, then Newton on J0 (J0' = -J1).
  const double beta = (n - 0.25) * std::numbers::pi;
  const double b2 = 1.0 / (8.0 * beta);
  double z = beta + b2 - 4.0 * 31.0 * b2 * b2 * b2 / 3.0;
  for (int it = 0; it < 6; ++it) {
    const double step = bessel_j0(z) / bessel_j1(z);
    z += step;
    if (std::fabs(step) < 1e-16 * z) break;
  }
  return z;
}

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  return std::cyl_bessel_k(0.0, x);
}

double gamma(double x) {
  require_positive(x, "gamma");
  return std::tgamma(x);
}

double scaled_erfi(double x) {
  require_finite(x, "erfi");
  const double ax = std::fabs(x);
  double value;
  if (ax <= 6.0) {
    // All series terms are positive, so no cancellation.
    const double x2 = ax * ax;
    double term = ax;
    double sum = ax;
    for (int n = 1; n < 500; ++n) {
      term *= x2 / n;
      const double add = term / (2 * n + 1);
      sum += add;
      if (add < 1e-17 * sum) break;
    }
    value = 2.0 / std::sqrt(std::numbers::pi) * sum * std::exp(-x2);
  } else {
    // Dawson asymptotics: D(x) ~ 1/(2x) sum (2n-1)!!/(2x^2)^n.
    const double inv = 1.0 / (2.0 * ax * ax);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 60; ++n) {
      const double next = term * (2 * n - 1) * inv;
      if (next > term) break;
      term = next;
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    value = 2.0 / std::sqrt(std::numbers::pi) * sum / (2.0 * ax);
  }
  return x < 0.0 ? -value : value;
}

double erfi(double x) {
  return scaled_erfi(x) * std::exp(x * x);
}

SphericalTable spherical_bessel_table(int lmax, double x) {
  if (lmax < 0) throw_domain("spherical_bessel_table: negative order");
  require_positive(x, "spherical_bessel_table");
  SphericalTable t;
  t.j.assign(lmax + 1, 0.0);
  t.y.assign(lmax + 1, 0.0);

  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;

  // y_l: upward recurrence is stable for the irregular solution.
  t.y[0] = -c / x;
  if (lmax >= 1) t.y[1] = -c / (x * x) - s / x;
  for (int l = 1; l < lmax; ++l) {
    t.y[l + 1] = (2 * l + 1) / x * t.y[l] - t.y[l - 1];
  }

  if (x > lmax + 1.0) {
    t.j[0] = j0;
    if (lmax >= 1) t.j[1] = s / (x * x) - c / x;
    for (int l = 1; l < lmax; ++l) {
      t.j[l + 1] = (2 * l + 1) / x * t.j[l] - t.j[l - 1];
    }
    return t;
  }

  // Miller backward recurrence, normalized to whichever of j0, j1 is larger.
  const int start = miller_start(lmax, x);
  double next = 0.0;
  double cur = 1e-300;
  double f0 = 0.0;
  double f1 = 0.0;
  for (int l = start; l >= 1; --l) {
    const double prev = (2 * l + 1) / x * cur - next;
    next = cur;
    cur = prev;  // cur now holds f_{l-1}
    if (l - 1 <= lmax) t.j[l - 1] = cur;
    if (l <= lmax) t.j[l] = next;
    if (std::fabs(cur) > kRescale) {
      cur /= kRescale;
      next /= kRescale;
      for (int m = l - 1; m <= lmax; ++m) t.j[m] /= kRescale;
    }
    if (l == 1) {
      f0 = cur;
      f1 = next;
    }
  }
  const double j1 = (x < 0.1)
      ? x / 3.0 * (1.0 - x * x / 10.0 * (1.0 - x * x / 28.0 * (1.0 - x * x / 54.0)))
      : s / (x * x) - c / x;
  const double scale = (std::fabs(j0) >= std::fabs(j1)) ? j0 / f0 : j1 / f1;
  for (double& v : t.j) v *= scale;
  return t;
}

SphericalPair spherical_bessel_pair(int l, double x) {
  if (l < 0) throw_domain("spherical_bessel_pair: negative order");
  const SphericalTable t = spherical_bessel_table(l + 1, x);
  return {t.j[l], l / x * t.j[l] - t.j[l + 1], t.y[l], l / x * t.y[l] - t.y[l + 1]};
}

std::vector<double> scaled_modified_spherical_i_table(int lmax, double x) {
  if (lmax < 0) throw_domain("scaled_modified_spherical_i_table: negative order");
  require_finite(x, "scaled_modified_spherical_i_table");
  if (x < 0.0) throw_domain("scaled_modified_spherical_i_table: argument must be >= 0");
  std::vector<double> out(lmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double i0 = (x < 1e-8) ? 1.0 - x : -std::expm1(-2.0 * x) / (2.0 * x);

  if (x > 2.0 * (lmax + 1)) {
    // Upward recurrence loses nothing while l stays well below x.
    out[0] = i0;
    if (lmax >= 1) out[1] = ((x - 1.0) + (x + 1.0) * std::exp(-2.0 * x)) / (2.0 * x * x);
    for (int l = 1; l < lmax; ++l) out[l + 1] = out[l - 1] - (2 * l + 1) / x * out[l];
    return out;
  }

  const int start = miller_start(lmax, x);
  double next = 0.0;
  double cur = 1e-300;
  for (int l = start; l >= 1; --l) {
    const double prev = (2 * l + 1) / x * cur + next;
    next = cur;
    cur = prev;
    if (l - 1 <= lmax) out[l - 1] = cur;
    if (l <= lmax) out[l] = next;
    if (cur > kRescale) {
      cur /= kRescale;
      next /= kRescale;
      for (int m = l - 1; m <= lmax; ++m) out[m] /= kRescale;
    }
  }
  const double scale = i0 / out[0];
  for (double& v : out) v *= scale;
  return out;
}

ModifiedPair scaled_modified_spherical_i_pair(int l, double x) {
  if (l < 0) throw_domain("modified_spherical_i_pair: negative order");
  const std::vector<double> t = scaled_modified_spherical_i_table(l + 1, x);
  if (x == 0.0) return {t[l], l == 1 ? 1.0 / 3.0 : 0.0};
  return {t[l], t[l + 1] + l / x * t[l]};
}

ModifiedPair modified_spherical_i_pair(int l, double x) {
  const ModifiedPair s = scaled_modified_spherical_i_pair(l, x);
  const double e = std::exp(x);
  return {s.i * e, s.di * e};
}

}  // namespace scatter::specfun
