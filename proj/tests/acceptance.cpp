#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scatter/eikonal.hpp"
#include "scatter/error.hpp"
#include "scatter/exact_reference.hpp"
#include "scatter/numerics.hpp"
#include "scatter/path_mc.hpp"
#include "scatter/perturbation.hpp"
#include "scatter/quantum_mean.hpp"
#include "scatter/specfun.hpp"
#include "scatter/unitary.hpp"
#include "scatter_cli/cli.hpp"

using scatter::Potential;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return v;
}

// The error code thrown by fn, or "" if it returned.
template <class F>
std::string thrown_code(F fn) {
  try {
    const double x = fn();
    return std::isnan(x) ? "nan" : "";
  } catch (const scatter::Error& e) {
    return std::string(scatter::to_string(e.code()));
  } catch (...) {
    return "foreign";
  }
}

Outcome c1() {
  Outcome o;
  double worst = 0;
  for (double G : {1.0, 5.0, 10.0, 25.0}) {
    auto d0 = [&](double k) { return scatter::exact::square_phase_shift(G, 1.0, k, 0); };
    const double k = 1e-4;
    const double a1 = -d0(k) / k, a2 = -d0(k / 2) / (k / 2);
    const double extrap = (4 * a2 - a1) / 3;
    const double diff = std::abs(scatter::exact::square_scattering_length(G, 1.0) - extrap);
    worst = std::max(worst, diff);
    o.check(diff <= 1e-5, "G=" + fmt("%g", G) + " diff " + fmt("%.3g", diff));
  }
  const double a25 = scatter::exact::square_scattering_length(25.0, 1.0);
  // python math.tanh
  o.check(std::abs(a25 - (1 - std::tanh(5.0) / 5)) <= 1e-15 && std::abs(a25 - 0.800018159147481) <= 1e-12,
          "a(25) = " + fmt("%.9g", a25));
  if (o.pass) o.detail = "max |a_closed - a_threshold| " + fmt("%.2e", worst) + ", a(25) " + fmt("%.6f", a25);
  return o;
}

Outcome c2() {
  Outcome o;
  double worst = 0;
  auto cmp = [&](double closed, double quad, const std::string& what) {
    const double r = rel(closed, quad);
    worst = std::max(worst, r);
    o.check(r <= 1e-8, what + " rel " + fmt("%.2e", r));
  };
  for (double G : {1.0, 5.0, 15.0, 50.0})
    for (double b : {0.7, 0.8, 1.0})
      cmp(scatter::qma::square_qma_length_closed(G, 1.0, b),
          scatter::qma::qma_scattering_length(Potential::square(G, 1.0), b), "qma square length");
  for (double G : {5.0, 15.0})
    for (double k : {0.0, 0.1, 2.0, 10.0})
      for (double ks : {0.3, 3.0})
        cmp(scatter::qma::square_qma_sigma_closed(G, 1.0, k, ks),
            scatter::qma::qma_sigma(Potential::square(G, 1.0), k, ks), "qma square sigma");
  for (double G : {5.0, 15.0}) {
    const auto p = Potential::square(G, 1.0);
    for (double kc : {0.5, 2.0, 8.0}) {
      for (double k : {0.0, 1.0}) {
        const auto c = scatter::unitary::square_forward_amplitude_closed(G, 1.0, k, kc);
        const auto q = scatter::unitary::unitary_forward_amplitude(p, k, kc);
        const double r = std::abs(c - q) / std::abs(c);
        worst = std::max(worst, r);
        o.check(r <= 1e-8, "unitary square amplitude rel " + fmt("%.2e", r));
      }
      cmp(scatter::unitary::square_threshold_closed(G, 1.0, kc), scatter::unitary::unitary_im_f_over_k(p, 0.0, kc),
          "unitary square threshold");
    }
  }
  for (int N : {2, 3, 5})
    for (double G : {0.5, 2.0})
      cmp(scatter::qma::singular_qma_length(G, N, 1.0),
          scatter::qma::qma_scattering_length(Potential::singular(G, N), 1.0), "singular qma length");
  for (int N : {2, 3, 5})
    for (double k : {0.5, 3.0})
      cmp(scatter::eikonal::singular_eikonal_sigma(1.5, N, k),
          scatter::eikonal::eikonal_cross_section(Potential::singular(1.5, N), k), "singular eikonal sigma");
  for (double G : {1.0, 5.0}) {
    const auto p = Potential::yukawa(G);
    for (double rho : {0.05, 0.5, 2.0, 8.0}) {
      auto line = [&](double s) {
        const double r = std::hypot(s, rho);
        return G * std::exp(-r) / r;
      };
      const double quad = 2 * scatter::integrate_semi_infinite(line, 0.0, 1e-13).value;
      cmp(2 * G * scatter::specfun::bessel_k0(rho), quad, "yukawa chord");
      cmp(p.reduced_chord(rho), quad, "yukawa reduced chord");
    }
  }
  if (o.pass) o.detail = "max rel diff " + fmt("%.2e", worst);
  return o;
}

Outcome c3() {
  Outcome o;
  double worst = 0;
  for (const auto& p : {Potential::yukawa(5), Potential::yukawa(10), Potential::yukawa(15),
                        Potential::square(5, 1), Potential::square(10, 1), Potential::square(15, 1)}) {
    try {
      const auto sol = scatter::unitary::solve_unitary(p);
      const double A = scatter::unitary::unitary_forward_amplitude(p, 0.0, sol.k_c).real();
      const double sigma0 = 4 * pi * A * A;
      const double optical = 4 * pi * scatter::unitary::unitary_im_f_over_k(p, 0.0, sol.k_c);
      const double r = std::abs(sigma0 - optical) / sigma0;
      worst = std::max(worst, r);
      o.check(r <= 1e-9, p.describe() + " rel " + fmt("%.2e", r));
    } catch (const std::exception& e) {
      o.check(false, p.describe() + ": " + e.what());
    }
  }
  if (o.pass) o.detail = "max |4 pi A^2 - 4 pi Im f/k| / sigma(0) " + fmt("%.2e", worst);
  return o;
}

Outcome c4() {
  Outcome o;
  std::string vals;
  for (double G : {5.0, 10.0}) {
    const double r = scatter::eikonal::unitarity_ratio(Potential::yukawa(G), 100.0);
    o.check(std::abs(r - 1) <= 0.05, "G=" + fmt("%g", G) + " ratio " + fmt("%.4f", r));
    vals += (vals.empty() ? "" : ", ") + fmt("%.4f", r);
  }
  if (o.pass) o.detail = "ratios " + vals;
  return o;
}

Outcome c5() {
  Outcome o;
  namespace pt = scatter::perturbation;
  for (double G : {1.0, 5.0, 10.0}) {
    for (const auto& p : {Potential::square(G, 1.0), Potential::yukawa(G)}) {
      const double j = pt::jensen_length_bound(p);
      const double a = p.family() == scatter::Family::Square ? scatter::exact::square_scattering_length(G, 1.0)
                                                                     : scatter::exact::numerov_scattering_length(p);
      const double born = pt::born_length(p);
      o.check(j < a, p.describe() + " jensen " + fmt("%.6g", j) + " >= exact " + fmt("%.6g", a));
      o.check(j < born, p.describe() + " jensen >= born");
    }
  }
  if (o.pass) o.detail = "jensen < exact and jensen < born at 6 settings";
  return o;
}

Outcome c6() {
  Outcome o;
  const double d20 = std::abs(scatter::qma::singular_qma_shape(20, 1.0) - scatter::exact::singular_exact_shape(20));
  const double d40 = std::abs(scatter::qma::singular_qma_shape(40, 1.0) - scatter::exact::singular_exact_shape(40));
  o.check(d20 <= 0.05, "N=20 diff " + fmt("%.4f", d20));
  o.check(d40 <= 0.02, "N=40 diff " + fmt("%.4f", d40));
  if (o.pass) o.detail = "N=20 " + fmt("%.4f", d20) + ", N=40 " + fmt("%.4f", d40);
  return o;
}

Outcome c7() {
  Outcome o;
  double worst = 0;
  for (double G : log_space(1.0, 50.0, 20)) {
    const double r = scatter::qma::qma_scattering_length(Potential::square(G, 1.0), 1.0) /
                         scatter::exact::square_scattering_length(G, 1.0) - 1;
    worst = std::max(worst, std::abs(r));
    o.check(std::abs(r) <= 0.35, "G=" + fmt("%.3g", G) + " ratio-1 " + fmt("%.3f", r));
  }
  if (o.pass) o.detail = "max |a_qma/a_exact - 1| " + fmt("%.3f", worst);
  return o;
}

Outcome c8() {
  Outcome o;
  const auto p = Potential::yukawa(1.0);
  scatter::mc::McConfig cfg;
  cfg.n_paths = 1000;
  cfg.d_nu = 0.01;
  cfg.nu_max = 40.0;
  cfg.seed = 20240611;
  const auto run1 = scatter::mc::mc_scattering_length(p, cfg);
  const auto run2 = scatter::mc::mc_scattering_length(p, cfg);
  const double ref = scatter::exact::numerov_scattering_length(p);
  const double total = double(cfg.n_paths) * run1.nodes.size();
  const auto& e = run1.estimate;
  o.check(total <= 2e5, "total paths " + fmt("%g", total));
  o.check(std::abs(e.mean - ref) <= 3 * e.std_error,
          "|a_mc - a_numerov| " + fmt("%.4g", std::abs(e.mean - ref)) + " > 3 stderr " + fmt("%.4g", 3 * e.std_error));
  o.check(e.std_error <= 0.02 * ref, "stderr " + fmt("%.4g", e.std_error));
  bool same = run2.estimate.mean == e.mean && run2.estimate.std_error == e.std_error;
  for (std::size_t i = 0; same && i < run1.nodes.size(); ++i) same = run1.nodes[i].psi == run2.nodes[i].psi;
  o.check(same, "rerun differs");
  if (o.pass)
    o.detail = "a_mc " + fmt("%.5f", e.mean) + " +- " + fmt("%.5f", e.std_error) + ", numerov " + fmt("%.5f", ref) +
               ", " + fmt("%g", total) + " paths, rerun identical";
  return o;
}

Outcome c9() {
  Outcome o;
  int solved = 0;
  double worst = 0;
  auto solve = [&](const std::string& what, const std::function<double()>& fn) {
    try {
      const double r = std::abs(fn());
      worst = std::max(worst, r);
      o.check(r <= 1e-10, what + " residual " + fmt("%.2e", r));
      ++solved;
    } catch (const scatter::Error& e) {
      o.check(false, what + ": " + std::string(scatter::to_string(e.code())));
    }
  };
  for (double G : {5.0, 10.0, 15.0}) {
    for (double b : {1.0, 0.8}) {
      const auto sq = Potential::square(G, 1.0);
      const std::string tag = "square G=" + fmt("%g", G) + " b=" + fmt("%g", b);
      solve("qma sigma " + tag, [&] { return scatter::qma::calibrate_kc_sigma(sq, b).residual; });
      solve("qma amplitude " + tag, [&] { return scatter::qma::calibrate_kc_amplitude(sq, b).residual; });
    }
    const auto y = Potential::yukawa(G);
    solve("qma sigma yukawa G=" + fmt("%g", G), [&] { return scatter::qma::calibrate_kc_sigma(y).residual; });
    solve("qma amplitude yukawa G=" + fmt("%g", G), [&] { return scatter::qma::calibrate_kc_amplitude(y).residual; });
    solve("unitary square G=" + fmt("%g", G),
          [&] { return scatter::unitary::solve_unitary(Potential::square(G, 1.0)).residual; });
    solve("unitary yukawa G=" + fmt("%g", G), [&] { return scatter::unitary::solve_unitary(y).residual; });
  }
  for (double G : log_space(0.5, 50.0, 20))
    solve("unitary yukawa G=" + fmt("%.3g", G),
          [&] { return scatter::unitary::solve_unitary(Potential::yukawa(G)).residual; });

  const std::string want = std::string(scatter::to_string(scatter::ErrorCode::Degenerate));
  const std::vector<std::pair<std::string, std::function<double()>>> degenerate = {
      {"qma sigma", [] { return scatter::qma::calibrate_kc_sigma(Potential::square(0.0, 1.0)).k_c; }},
      {"qma amplitude", [] { return scatter::qma::calibrate_kc_amplitude(Potential::yukawa(0.0)).k_c; }},
      {"unitary square", [] { return scatter::unitary::solve_unitary(Potential::square(0.0, 1.0)).k_c; }},
      {"unitary yukawa", [] { return scatter::unitary::solve_unitary(Potential::yukawa(0.0)).k_c; }},
  };
  for (const auto& [name, fn] : degenerate) {
    const auto code = thrown_code(fn);
    o.check(code == want, "G=0 " + name + " gave '" + code + "'");
  }
  std::ostringstream out, err;
  const int rc = scatter::cli::run({"calibrate", "--potential", "yukawa", "--G", "0", "--variant", "unitary"}, out, err);
  try {
    o.check(rc == 1 && nlohmann::json::parse(err.str()).at("error").at("code") == "degenerate_calibration",
            "cli G=0 error record");
  } catch (const std::exception&) {
    o.check(false, "cli G=0 stderr is not an error record");
  }
  if (o.pass) o.detail = fmt("%g", solved) + " solves, max |residual| " + fmt("%.2e", worst) + ", G=0 structured";
  return o;
}

Outcome c10() {
  Outcome o;
  const std::vector<std::vector<std::string>> schema = {
      {"G", "a_exact", "a_qma_b1", "a_qma_b08"},
      {"G", "k", "sigma_exact", "sigma_qma_b1", "sigma_qma_b08"},
      {"N", "f_qma", "f_exact"},
      {"G", "a_numerov", "a_qma_b1", "a_qma_b07"},
      {"G", "k", "sigma_qma", "sigma_numerov"},
      {"G", "a_numerov", "a_unitary"},
      {"G", "k", "sigma_numerov", "sigma_unitary"},
      {"G", "k", "sigma_exact", "sigma_unitary"},
  };
  for (int id = 1; id <= 8; ++id) {
    const std::string tag = "fig" + std::to_string(id);
    scatter::cli::Table t;
    try {
      t = scatter::cli::figure_table(id);
    } catch (const std::exception& e) {
      o.check(false, tag + ": " + e.what());
      continue;
    }
    o.check(t.columns == schema[id - 1], tag + " columns");
    std::ostringstream csv;
    scatter::cli::write_csv(t, csv);
    std::string header;
    std::getline(std::istringstream(csv.str()) >> std::ws, header);
    std::string expect;
    for (const auto& c : schema[id - 1]) expect += c + ",";
    o.check(header == expect + "error", tag + " csv header");

    std::size_t bad = 0;
    for (const auto& row : t.rows)
      for (const auto& c : row) bad += !std::isfinite(c.value);
    o.check(bad == 0, tag + " " + std::to_string(bad) + " non-finite cells");

    const auto col = [&](const std::string& name) {
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
      return t.columns.size();
    };
    for (const char* name : {"a_exact", "a_numerov"}) {
      const auto c = col(name);
      if (c == t.columns.size()) continue;
      for (std::size_t i = 1; i < t.rows.size(); ++i)
        o.check(t.rows[i][c].value > t.rows[i - 1][c].value, tag + " " + name + " not increasing at row " + std::to_string(i));
    }
    for (const char* name : {"sigma_exact", "sigma_numerov"}) {
      const auto c = col(name);
      if (c == t.columns.size()) continue;
      for (const auto& row : t.rows) {
        if (row[1].value != t.rows.front()[1].value) continue;  // smallest k of each coupling
        const double G = row[0].value;
        const double a = id == 2 || id == 8 ? scatter::exact::square_scattering_length(G, 1.0)
                                            : scatter::exact::numerov_scattering_length(Potential::yukawa(G));
        const double r = row[c].value / (4 * pi * a * a) - 1;
        o.check(std::abs(r) <= 0.01, tag + " G=" + fmt("%g", G) + " sigma(k_min)/4 pi a^2 - 1 = " + fmt("%.3g", r));
      }
    }
  }
  if (o.pass) o.detail = "8 figures, schema, finiteness, monotone lengths, sigma(k->0) within 1%";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*fn)();
    double budget_s;  // <= 0: no runtime requirement
  };
  const Criterion all[] = {
      {1, "square barrier exact closure", c1, 1.0},
      {2, "closed forms vs quadrature", c2, 10.0},
      {3, "optical theorem at threshold", c3, 0},
      {4, "eikonal unitarity at k=100", c4, 10.0},
      {5, "jensen lower bound", c5, 0},
      {6, "singular shape convergence", c6, 0},
      {7, "qma accuracy envelope", c7, 0},
      {8, "monte carlo vs numerov", c8, 300.0},
      {9, "calibration robustness", c9, 0},
      {10, "figure reproduction", c10, 0},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.check(false, std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) o.check(secs < c.budget_s, "runtime " + fmt("%.2f", secs) + " s over budget");
    failed += !o.pass;
    std::printf("criterion %2d %s: %s (%s) [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(std::size(all)) - failed, std::size(all));
  return failed == 0 ? 0 : 1;
}
