#include "scatter/path_mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <thread>
#include <variant>

#include "scatter/error.hpp"

namespace scatter::mc {
namespace {

struct Walk {
  double weight;
  double end_distance;
};

// Up to two walkers: the second, if present, uses negated increments.
struct Unit {
  std::array<Walk, 2> walks;
  int count;
};

void validate(const McConfig& cfg) {
  if (!(cfg.d_nu > 0.0) || !(cfg.nu_max > 0.0)) throw_domain("mc: d_nu and nu_max must be > 0");
  const double steps = cfg.nu_max / cfg.d_nu;
  if (std::fabs(steps - std::round(steps)) > 1e-9 * steps) {
    throw_domain("mc: nu_max / d_nu must be an integer");
  }
  if (cfg.n_paths < 2) throw_domain("mc: n_paths must be >= 2");
  if (cfg.antithetic && cfg.n_paths % 2 != 0) throw_domain("mc: antithetic sampling needs even n_paths");
  if (cfg.batches < 2) throw_domain("mc: batches must be >= 2");
}

std::size_t step_count(const McConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.nu_max / cfg.d_nu));
}

std::size_t unit_count(const McConfig& cfg) {
  return cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
}

// Radius beyond which v contributes less than 1e-17 over the whole horizon.
double cutoff_radius(const Potential& pot, double nu_max) {
  const double R = pot.support_radius();
  if (std::isfinite(R)) return R;
  double hi = 1.0;
  while (pot.path_weight(hi) * nu_max >= 1e-17) hi *= 2.0;
  double lo = 0.5 * hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pot.path_weight(mid) * nu_max >= 1e-17 ? lo : hi) = mid;
  }
  return hi;
}

class Walker {
 public:
  Walker(const Potential& pot, const McConfig& cfg)
      : pot_(pot),
        cfg_(cfg),
        steps_(step_count(cfg)),
        sd_(std::sqrt(cfg.d_nu)),
        cut2_(std::pow(cutoff_radius(pot, cfg.nu_max), 2)) {}

  Unit run(double r, CounterStream& rng) const {
    const int count = cfg_.antithetic ? 2 : 1;
    std::array<Point, 2> x{Point{0.0, 0.0, r}, Point{0.0, 0.0, r}};
    std::array<double, 2> action{0.0, 0.0};
    for (std::size_t j = 0; j < steps_; ++j) {
      const Point step{sd_ * rng.normal(), sd_ * rng.normal(), sd_ * rng.normal()};
      for (int w = 0; w < count; ++w) {
        const double sign = (w == 0) ? 1.0 : -1.0;
        Point& p = x[w];
        // x = r e_z - xi; the midpoint sits half a step back.
        const double mx = p[0] - 0.5 * sign * step[0];
        const double my = p[1] - 0.5 * sign * step[1];
        const double mz = p[2] - 0.5 * sign * step[2];
        const double d2 = mx * mx + my * my + mz * mz;
        if (d2 < cut2_) action[w] += pot_.path_weight(std::sqrt(d2));
        p[0] -= sign * step[0];
        p[1] -= sign * step[1];
        p[2] -= sign * step[2];
      }
    }
    Unit u{};
    u.count = count;
    for (int w = 0; w < count; ++w) {
      const double weight = std::exp(-action[w] * cfg_.d_nu);
      if (!(weight >= 0.0 && weight <= 1.0)) {
        throw Error(ErrorCode::Domain, "mc: path weight outside [0, 1]; potential must be repulsive");
      }
      const Point& p = x[w];
      u.walks[w] = {weight, std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])};
    }
    return u;
  }

 private:
  const Potential& pot_;
  const McConfig& cfg_;
  std::size_t steps_;
  double sd_;
  double cut2_;
};

// Runs fn(i) for i in [0, n) on the configured number of threads. Each index
// owns its output slot, so the schedule never affects results.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::size_t>(t, n));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += t) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double ess_of(const std::vector<Unit>& units) {
  double s = 0.0;
  double s2 = 0.0;
  for (const auto& u : units) {
    for (int w = 0; w < u.count; ++w) {
      s += u.walks[w].weight;
      s2 += u.walks[w].weight * u.walks[w].weight;
    }
  }
  return s2 > 0.0 ? s * s / s2 : 0.0;
}

std::size_t zeros_of(const std::vector<Unit>& units) {
  std::size_t z = 0;
  for (const auto& u : units) {
    for (int w = 0; w < u.count; ++w) z += (u.walks[w].weight == 0.0);
  }
  return z;
}

std::uint64_t node_seed(std::uint64_t seed, std::size_t node) {
  return mix64(seed ^ mix64(0x9e3779b97f4a7c15ULL * (node + 1)));
}

void append_panels(std::vector<std::array<double, 2>>& out, const std::vector<double>& edges) {
  using boost::math::quadrature::gauss;
  const auto& x = gauss<double, 8>::abscissa();
  const auto& w = gauss<double, 8>::weights();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double m = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t i = x.size(); i-- > 0;) out.push_back({m - h * x[i], h * w[i]});
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back({m + h * x[i], h * w[i]});
  }
}

}  // namespace

std::vector<Point> sample_path(CounterStream& rng, const McConfig& cfg) {
  validate(cfg);
  const std::size_t steps = step_count(cfg);
  const double sd = std::sqrt(cfg.d_nu);
  std::vector<Point> path(steps + 1, Point{0.0, 0.0, 0.0});
  for (std::size_t j = 1; j <= steps; ++j) {
    for (int c = 0; c < 3; ++c) path[j][c] = path[j - 1][c] + sd * rng.normal();
  }
  return path;
}

McEstimate mc_phi(const Potential& pot, double r, const McConfig& cfg) {
  validate(cfg);
  if (!(r > 0.0) || !std::isfinite(r)) throw_domain("mc_phi: r must be > 0");
  McEstimate est;
  est.n_paths = cfg.n_paths;
  est.d_nu = cfg.d_nu;
  est.nu_max = cfg.nu_max;
  if (pot.coupling() == 0.0) {
    est.mean = 1.0;
    est.ess = static_cast<double>(cfg.n_paths);
    return est;
  }
  const Walker walker(pot, cfg);
  const std::size_t n = unit_count(cfg);
  std::vector<Unit> units(n);
  const std::uint64_t key = node_seed(cfg.seed, 0);
  parallel_for(n, cfg.threads, [&](std::size_t u) {
    CounterStream rng(key, u);
    units[u] = walker.run(r, rng);
  });
  // Antithetic pairs are one sample each.
  double sum = 0.0;
  double sum2 = 0.0;
  for (const auto& u : units) {
    double v = 0.0;
    for (int w = 0; w < u.count; ++w) v += u.walks[w].weight;
    v /= u.count;
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
  est.mean = mean;
  est.std_error = std::sqrt(var / n);
  est.ess = ess_of(units);
  est.zero_weights = zeros_of(units);
  return est;
}

std::vector<std::array<double, 2>> radial_grid(const Potential& pot) {
  std::vector<std::array<double, 2>> out;
  switch (pot.family()) {
    case Family::Square: {
      const double R = pot.support_radius();
      append_panels(out, {0.0, 0.5 * R, R});
      break;
    }
    case Family::Yukawa:
      append_panels(out, {0.0, 2.0, 6.0, 14.0, 40.0});
      break;
    case Family::Singular: {
      const auto& s = std::get<Singular>(pot.variant());
      const double scale = std::pow(std::max(s.G, 1e-300) / (s.N - 1.0), 1.0 / (2.0 * (s.N - 1.0)));
      append_panels(out, {0.0, 0.5 * scale, scale, 2.0 * scale, 4.0 * scale, 16.0 * scale});
      break;
    }
  }
  return out;
}

McLength mc_scattering_length(const Potential& pot, const McConfig& cfg, TailTreatment tail) {
  validate(cfg);
  McLength out;
  out.tail = tail;
  out.estimate.n_paths = cfg.n_paths;
  out.estimate.d_nu = cfg.d_nu;
  out.estimate.nu_max = cfg.nu_max;
  const auto grid = radial_grid(pot);
  const std::size_t m = grid.size();
  if (pot.coupling() == 0.0) {
    for (const auto& g : grid) out.nodes.push_back({g[0], g[1], 1.0, 0.0, double(cfg.n_paths)});
    out.estimate.ess = static_cast<double>(cfg.n_paths);
    return out;
  }

  const Walker walker(pot, cfg);
  const std::size_t n = unit_count(cfg);
  std::vector<std::vector<Unit>> units(m, std::vector<Unit>(n));
  parallel_for(m * n, cfg.threads, [&](std::size_t idx) {
    const std::size_t node = idx / n;
    const std::size_t u = idx % n;
    CounterStream rng(node_seed(cfg.seed, node + 1), u);
    units[node][u] = walker.run(grid[node][0], rng);
  });

  std::vector<double> c(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = grid[i][0];
    c[i] = grid[i][1] * r * r * pot.radial(r);
  }

  // Per-batch sums of W and W / max(|x_T|, r_j) for every node.
  const std::size_t B = std::min(cfg.batches, n);
  std::vector<Eigen::VectorXd> b_sum(B, Eigen::VectorXd::Zero(m));
  std::vector<Eigen::MatrixXd> k_sum(B, Eigen::MatrixXd::Zero(m, m));
  std::vector<double> count(B, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t batch = u * B / n;
      const Unit& unit = units[i][u];
      for (int w = 0; w < unit.count; ++w) {
        const Walk& wk = unit.walks[w];
        b_sum[batch](i) += wk.weight;
        if (tail == TailTreatment::Closure && wk.weight > 0.0) {
          for (std::size_t j = 0; j < m; ++j) {
            k_sum[batch](i, j) += wk.weight / std::max(wk.end_distance, grid[j][0]);
          }
        }
      }
      if (i == 0) count[batch] += unit.count;
    }
  }

  auto solve = [&](const Eigen::VectorXd& bsum, const Eigen::MatrixXd& ksum, double paths) {
    const Eigen::VectorXd b = bsum / paths;
    if (tail == TailTreatment::Truncate) return b;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    for (std::size_t j = 0; j < m; ++j) A.col(j) += c[j] * ksum.col(j) / paths;
    return Eigen::VectorXd(A.partialPivLu().solve(b));
  };
  auto length_of = [&](const Eigen::VectorXd& psi) {
    double a = 0.0;
    for (std::size_t i = 0; i < m; ++i) a += c[i] * psi(i);
    return a;
  };

  Eigen::VectorXd b_all = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd k_all = Eigen::MatrixXd::Zero(m, m);
  double total = 0.0;
  for (std::size_t q = 0; q < B; ++q) {
    b_all += b_sum[q];
    k_all += k_sum[q];
    total += count[q];
  }
  const Eigen::VectorXd psi = solve(b_all, k_all, total);
  const double a = length_of(psi);

  // Delete-one-batch jackknife.
  double a_bar = 0.0;
  std::vector<double> a_jack(B);
  std::vector<Eigen::VectorXd> psi_jack(B);
  for (std::size_t q = 0; q < B; ++q) {
    psi_jack[q] = solve(b_all - b_sum[q], k_all - k_sum[q], total - count[q]);
    a_jack[q] = length_of(psi_jack[q]);
    a_bar += a_jack[q] / B;
  }
  Eigen::VectorXd psi_bar = Eigen::VectorXd::Zero(m);
  for (const auto& p : psi_jack) psi_bar += p / double(B);
  double var_a = 0.0;
  Eigen::VectorXd var_psi = Eigen::VectorXd::Zero(m);
  for (std::size_t q = 0; q < B; ++q) {
    var_a += (a_jack[q] - a_bar) * (a_jack[q] - a_bar);
    var_psi += (psi_jack[q] - psi_bar).cwiseAbs2();
  }
  const double factor = (B - 1.0) / B;

  out.estimate.mean = a;
  out.estimate.std_error = std::sqrt(factor * var_a);
  out.estimate.ess = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double ess = ess_of(units[i]);
    out.estimate.ess = std::min(out.estimate.ess, ess);
    out.estimate.zero_weights += zeros_of(units[i]);
    out.nodes.push_back({grid[i][0], grid[i][1], psi(i), std::sqrt(factor * var_psi(i)), ess});
  }
  return out;
}

}  // namespace scatter::mc
