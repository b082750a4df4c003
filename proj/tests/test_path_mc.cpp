#include <gtest/gtest.h>

#include <cmath>

#include "scatter/error.hpp"
#include "scatter/exact_reference.hpp"
#include "scatter/path_mc.hpp"
#include "scatter/rng.hpp"

namespace mc = scatter::mc;
using scatter::Potential;

namespace {

mc::McConfig small_config() {
  mc::McConfig c;
  c.n_paths = 200;
  c.d_nu = 0.02;
  c.nu_max = 20.0;
  c.seed = 7;
  c.threads = 1;
  c.batches = 10;
  return c;
}

}  // namespace

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  scatter::CounterStream a(1, 5), b(1, 5), c(1, 6);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  scatter::CounterStream a2(1, 5);
  EXPECT_NE(a2.next_u64(), c.next_u64());
  scatter::CounterStream n(3, 0);
  double s = 0, s2 = 0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double x = n.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / m, 0.0, 0.01);
  EXPECT_NEAR(s2 / m, 1.0, 0.01);
}

TEST(Paths, FreeDiffusionVariance) {
  auto cfg = small_config();
  cfg.d_nu = 0.05;
  cfg.nu_max = 4.0;
  scatter::CounterStream rng(11, 0);
  const int n = 4000;
  double s2 = 0;
  for (int i = 0; i < n; ++i) {
    const auto path = mc::sample_path(rng, cfg);
    ASSERT_EQ(path.size(), 81u);
    EXPECT_EQ(path.front()[0], 0.0);
    const auto& e = path.back();
    s2 += e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
  }
  // E|xi(nu)|^2 = 3 nu
  EXPECT_NEAR(s2 / n / (3 * cfg.nu_max), 1.0, 0.06);
}

TEST(Phi, FreeAndBounded) {
  const auto cfg = small_config();
  const auto free = mc::mc_phi(Potential::yukawa(0.0), 0.5, cfg);
  EXPECT_EQ(free.mean, 1.0);
  EXPECT_EQ(free.std_error, 0.0);
  const auto e = mc::mc_phi(Potential::yukawa(2.0), 0.5, cfg);
  EXPECT_GT(e.mean, 0.0);
  EXPECT_LT(e.mean, 1.0);
  EXPECT_GT(e.ess, 0.0);
  EXPECT_LE(e.ess, static_cast<double>(cfg.n_paths));
  // farther from the core, less absorption
  EXPECT_GT(mc::mc_phi(Potential::yukawa(2.0), 3.0, cfg).mean, e.mean);
}

TEST(Phi, ThreadIndependence) {
  auto cfg = small_config();
  const auto p = Potential::yukawa(1.0);
  const double one = mc::mc_phi(p, 1.0, cfg).mean;
  cfg.threads = 3;
  EXPECT_EQ(mc::mc_phi(p, 1.0, cfg).mean, one);
  cfg.seed = 8;
  EXPECT_NE(mc::mc_phi(p, 1.0, cfg).mean, one);
}

TEST(Length, AgreesWithNumerov) {
  const auto p = Potential::yukawa(1.0);
  const auto cfg = small_config();
  const auto res = mc::mc_scattering_length(p, cfg);
  const double ref = scatter::exact::numerov_scattering_length(p);
  EXPECT_GT(res.estimate.std_error, 0.0);
  EXPECT_LT(std::abs(res.estimate.mean - ref), 4 * res.estimate.std_error + 0.02);
  for (const auto& n : res.nodes) {
    EXPECT_GE(n.psi, 0.0);
    EXPECT_LE(n.psi, 1.0);
  }
  const auto again = mc::mc_scattering_length(p, cfg);
  EXPECT_EQ(again.estimate.mean, res.estimate.mean);
  EXPECT_EQ(again.estimate.std_error, res.estimate.std_error);
}

TEST(Length, Validation) {
  auto cfg = small_config();
  cfg.n_paths = 3;
  EXPECT_THROW(mc::mc_phi(Potential::yukawa(1.0), 1.0, cfg), scatter::Error);
  cfg = small_config();
  cfg.d_nu = 0.03;
  EXPECT_THROW(mc::mc_phi(Potential::yukawa(1.0), 1.0, cfg), scatter::Error);
  EXPECT_THROW(mc::mc_phi(Potential::yukawa(1.0), 0.0, small_config()), scatter::Error);
}
