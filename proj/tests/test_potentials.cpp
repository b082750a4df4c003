#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "scatter/error.hpp"
#include "scatter/numerics.hpp"
#include "scatter/potential.hpp"
#include "scatter/specfun.hpp"

using scatter::Potential;
using std::numbers::pi;

namespace {

double chord_by_quadrature(const Potential& p, double rho) {
  auto f = [&](double s) {
    const double r = std::hypot(s, rho);
    if (r >= p.support_radius()) return 0.0;
    return p.value(r);
  };
  if (std::isfinite(p.support_radius())) {
    const double half = std::sqrt(std::max(0.0, p.support_radius() * p.support_radius() - rho * rho));
    if (half == 0.0) return 0.0;
    return 2.0 * scatter::integrate_adaptive(f, 0.0, half, 1e-13).value;
  }
  return 2.0 * scatter::integrate_semi_infinite(f, 0.0, 1e-13).value;
}

}  // namespace

TEST(Potentials, PointValues) {
  EXPECT_EQ(Potential::square(5, 1).value(0.5), 5.0);
  EXPECT_EQ(Potential::square(5, 1).value(2.0), 0.0);
  EXPECT_NEAR(Potential::yukawa(2).value(1.0), 2.0 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(Potential::yukawa(2).value(1.0), 0.735759, 1e-6);
  EXPECT_NEAR(Potential::singular(3, 2).value(2.0), 3.0 / 16.0, 1e-15);
}

TEST(Potentials, Validation) {
  EXPECT_THROW(Potential::square(-1, 1), scatter::Error);
  EXPECT_THROW(Potential::square(1, 0), scatter::Error);
  EXPECT_THROW(Potential::singular(1, 1), scatter::Error);
  EXPECT_THROW(Potential::yukawa(std::nan("")), scatter::Error);
  EXPECT_THROW(Potential::yukawa(1).value(0.0), scatter::Error);
}

TEST(Potentials, TailMoment) {
  EXPECT_NEAR(Potential::square(4, 1).tail_moment(0.0), 2.0, 1e-15);
  EXPECT_NEAR(Potential::yukawa(3).tail_moment(0.0), 3.0, 1e-14);
  EXPECT_NEAR(Potential::yukawa(3).tail_moment(200.0), 0.0, 1e-80);
  EXPECT_EQ(Potential::square(4, 1).tail_moment(5.0), 0.0);
  // dT/dr = -r V(r)
  for (const auto& p : {Potential::square(2, 1.5), Potential::yukawa(1.3), Potential::singular(0.7, 3)}) {
    for (double r : {0.3, 0.9, 2.0}) {
      if (p.value(r) == 0.0) continue;
      const double h = 1e-5 * r;
      const double d = (p.tail_moment(r + h) - p.tail_moment(r - h)) / (2 * h);
      EXPECT_NEAR(d / (-r * p.value(r)), 1.0, 1e-6) << p.describe() << " r=" << r;
    }
  }
}

TEST(Potentials, ChordIntegral) {
  EXPECT_EQ(Potential::square(1, 1).chord_integral(1.0), 0.0);
  EXPECT_NEAR(Potential::yukawa(1).chord_integral(1.0), 2.0 * scatter::specfun::bessel_k0(1.0), 1e-14);
  // 2 K0(1), K0(1) = 0.42102443824070834 (scipy.special.k0)
  EXPECT_NEAR(Potential::yukawa(1).chord_integral(1.0), 0.8420488764814167, 1e-14);
  // int (s^2 + 4)^{-2} ds = pi / 16
  EXPECT_NEAR(Potential::singular(1, 2).chord_integral(2.0), pi / 16.0, 1e-14);
  for (const auto& p : {Potential::square(2, 3.0), Potential::yukawa(1.7), Potential::singular(2.0, 2),
                        Potential::singular(0.5, 5)}) {
    for (double rho : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double ref = chord_by_quadrature(p, rho);
      if (ref == 0.0) {
        EXPECT_EQ(p.chord_integral(rho), 0.0);
      } else {
        EXPECT_NEAR(p.chord_integral(rho) / ref, 1.0, 1e-9) << p.describe() << " rho=" << rho;
      }
    }
  }
}

TEST(Potentials, InteriorMoment) {
  EXPECT_NEAR(Potential::square(3, 1).interior_moment(2.0), 1.0, 1e-15);
  EXPECT_NEAR(Potential::yukawa(1).interior_moment(60.0), 1.0, 1e-14);
  EXPECT_NEAR(Potential::yukawa(1).interior_moment(1e-9), 0.0, 1e-15);
  EXPECT_THROW(Potential::singular(1, 2).interior_moment(1.0), scatter::Error);
}

TEST(Potentials, MonotoneNonnegativeAndLinearInG) {
  const Potential a = Potential::yukawa(1.0), b = Potential::yukawa(3.5);
  const Potential s1 = Potential::square(1.0, 1.2), s2 = Potential::square(3.5, 1.2);
  double prev_t = INFINITY, prev_y = INFINITY;
  for (double r = 0.05; r < 8; r += 0.25) {
    const double t = a.tail_moment(r), y = a.chord_integral(r);
    EXPECT_GE(t, 0.0);
    EXPECT_GE(y, 0.0);
    EXPECT_LE(t, prev_t);
    EXPECT_LE(y, prev_y);
    prev_t = t;
    prev_y = y;
    EXPECT_NEAR(b.tail_moment(r), 3.5 * t, 1e-14 * b.tail_moment(r) + 1e-300);
    EXPECT_NEAR(b.chord_integral(r), 3.5 * y, 1e-14 * b.chord_integral(r) + 1e-300);
    EXPECT_NEAR(s2.chord_integral(r), 3.5 * s1.chord_integral(r), 1e-14);
    EXPECT_NEAR(s2.interior_moment(r), 3.5 * s1.interior_moment(r), 1e-14);
  }
}

TEST(Potentials, LineTailSplitsChord) {
  for (const auto& p : {Potential::square(2, 1.0), Potential::yukawa(1.0), Potential::singular(1.0, 3)}) {
    for (double rho : {0.3, 0.8}) {
      const double full = p.chord_integral(rho);
      EXPECT_NEAR(p.line_tail(rho, -1e3), full, 1e-10 * full) << p.describe();
      EXPECT_NEAR(p.line_tail(rho, 0.0), 0.5 * full, 1e-10 * full) << p.describe();
      EXPECT_NEAR(p.line_tail(rho, 0.4) + p.line_tail(rho, -0.4), full, 1e-10 * full) << p.describe();
    }
  }
}

TEST(Potentials, UnitConvention) {
  EXPECT_EQ(Potential::square(1, 1).radial_factor(), 1.0);
  EXPECT_EQ(Potential::singular(1, 2).radial_factor(), 1.0);
  EXPECT_EQ(Potential::yukawa(1).radial_factor(), 2.0);
  const auto y = Potential::yukawa(1.5);
  EXPECT_NEAR(y.radial(0.7), 2.0 * y.value(0.7), 0.0);
  EXPECT_NEAR(y.path_weight(0.7), y.value(0.7), 0.0);
  EXPECT_NEAR(y.reduced_chord(0.7), y.chord_integral(0.7), 0.0);
}
