#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <thread>

#include "evaluate.hpp"
#include "scatter/eikonal.hpp"
#include "scatter/error.hpp"
#include "scatter/exact_reference.hpp"
#include "scatter/perturbation.hpp"
#include "scatter/quantum_mean.hpp"
#include "scatter/unitary.hpp"

namespace scatter::cli {
namespace detail {

double exact_length(const Potential& pot) {
  if (const auto* s = std::get_if<SquareBarrier>(&pot.variant()))
    return exact::square_scattering_length(s->G, s->R);
  if (const auto* s = std::get_if<Singular>(&pot.variant()))
    return exact::singular_exact_length(s->G, s->N);
  return exact::numerov_scattering_length(pot);
}

double exact_sigma(const Potential& pot, double k) {
  exact::CrossSection cs;
  if (const auto* s = std::get_if<SquareBarrier>(&pot.variant())) {
    cs = exact::square_cross_section(s->G, s->R, k);
  } else if (pot.family() == Family::Yukawa) {
    cs = exact::yukawa_cross_section(pot, k);
  } else {
    throw Error(ErrorCode::Unsupported, "exact cross section: singular potential at k > 0");
  }
  if (!cs.converged) {
    throw Error(ErrorCode::NonConvergence,
                "exact cross section: partial-wave sum not converged at l = " + std::to_string(cs.l_max));
  }
  return cs.sigma;
}

std::vector<exact::PhaseShift> phase_shifts(const Potential& pot, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw_domain("phase shifts: k must be > 0");
  if (const auto* s = std::get_if<SquareBarrier>(&pot.variant())) {
    auto table = exact::square_phase_shifts(s->G, s->R, k);
    if (!table.converged) throw Error(ErrorCode::NonConvergence, "phase shifts: table not converged");
    return table.entries;
  }
  if (pot.family() != Family::Yukawa) {
    throw Error(ErrorCode::Unsupported, "phase shifts: singular potential at k > 0");
  }
  constexpr int kMaxL = 4000;
  const auto grid = exact::default_grid(pot);
  std::vector<exact::PhaseShift> out;
  int small = 0;
  for (int l = 0; l <= kMaxL && small < 3; ++l) {
    const double d = exact::numerov_phase_shift(pot, k, l, grid);
    out.push_back({l, d});
    small = std::abs(d) < 1e-12 ? small + 1 : 0;
  }
  if (small < 3) throw Error(ErrorCode::NonConvergence, "phase shifts: no decay by l = 4000");
  return out;
}

void parallel_rows(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

Cell guarded(const std::function<double()>& fn) {
  Cell c;
  try {
    c.value = fn();
  } catch (...) {
    c.error = describe_current_exception();
  }
  return c;
}

}  // namespace detail

namespace {

using detail::guarded;

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::Usage, message); }

bool has(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Calibrated scale shared by a whole column; failures poison every row of it.
struct SharedScale {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::optional<ErrorInfo> error;

  template <class F>
  static SharedScale resolve(std::optional<double> given, F&& solve) {
    SharedScale s;
    if (given) {
      s.value = *given;
      return s;
    }
    try {
      s.value = solve();
    } catch (...) {
      s.error = describe_current_exception();
    }
    return s;
  }

  Cell cell(const std::function<double(double)>& fn) const {
    if (error) return Cell{std::numeric_limits<double>::quiet_NaN(), error};
    return guarded([&] { return fn(value); });
  }
};

Potential at_point(const Potential& base, Sweep sweep, double x) {
  switch (sweep) {
    case Sweep::G: return base.with_coupling(x);
    case Sweep::b: return base;
    case Sweep::N: {
      const auto* s = std::get_if<Singular>(&base.variant());
      if (!s) usage("N sweep needs the singular potential");
      return Potential::singular(s->G, static_cast<int>(std::lround(x)));
    }
  }
  return base;
}

std::complex<double> partial_wave_amplitude(const Potential& pot, double k, double theta) {
  const double c = std::cos(theta);
  std::complex<double> sum = 0.0;
  for (const auto& [l, d] : detail::phase_shifts(pot, k)) {
    sum += static_cast<double>(2 * l + 1) * std::polar(std::sin(d), d) *
           std::legendre(static_cast<unsigned>(l), c);
  }
  return sum / k;
}

}  // namespace

Table length_table(const LengthRequest& req) {
  if (req.grid.empty()) usage("length: empty grid");
  if (req.schemes.empty()) usage("length: no schemes");
  for (const auto& s : req.schemes) {
    if (s == "eikonal" || s == "eikonal-allangle" || s == "qma-amp")
      usage("length: scheme '" + s + "' has no scattering length; use xsec or amp");
  }
  if (req.sweep == Sweep::N) {
    for (double x : req.grid)
      if (x != std::round(x) || x < 2) usage("length: N grid needs integers >= 2");
  }

  Table t;
  t.columns.push_back(req.sweep == Sweep::G ? "G" : req.sweep == Sweep::b ? "b" : "N");
  for (const auto& s : req.schemes) {
    t.columns.push_back("a_" + s);
    if (s == "mc") t.columns.push_back("a_mc_stderr");
  }
  t.rows.resize(req.grid.size());

  auto row = [&](std::size_t i) {
    const double x = req.grid[i];
    const double b = req.sweep == Sweep::b ? x : req.b;
    auto& r = t.rows[i];
    r.push_back(Cell{x, {}});
    Potential pot = req.base;
    try {
      pot = at_point(req.base, req.sweep, x);
    } catch (...) {
      const auto info = describe_current_exception();
      for (std::size_t c = 1; c < t.columns.size(); ++c)
        r.push_back(Cell{std::numeric_limits<double>::quiet_NaN(), info});
      return;
    }
    for (const auto& s : req.schemes) {
      if (s == "born") r.push_back(guarded([&] { return perturbation::born_length(pot); }));
      else if (s == "jensen") r.push_back(guarded([&] { return perturbation::jensen_length_bound(pot); }));
      else if (s == "qma") r.push_back(guarded([&] { return qma::qma_scattering_length(pot, b); }));
      else if (s == "exact") r.push_back(guarded([&] { return detail::exact_length(pot); }));
      else if (s == "unitary")
        r.push_back(guarded([&] { return unitary::solve_unitary(pot).scattering_length; }));
      else if (s == "mc") {
        Cell mean, err;
        try {
          const auto res = mc::mc_scattering_length(pot, req.mc);
          mean.value = res.estimate.mean;
          err.value = res.estimate.std_error;
          if (res.estimate.ess < 100.0) {
            mean.error = ErrorInfo{"low_ess", "effective sample size " +
                                                  std::to_string(res.estimate.ess) + " < 100"};
          }
        } catch (...) {
          mean.error = describe_current_exception();
        }
        r.push_back(mean);
        r.push_back(err);
      }
    }
  };
  // MC parallelizes internally; keep its rows sequential.
  if (has(req.schemes, "mc")) {
    for (std::size_t i = 0; i < req.grid.size(); ++i) row(i);
  } else {
    detail::parallel_rows(req.grid.size(), row);
  }
  return t;
}

Table xsec_table(const XsecRequest& req) {
  if (req.k.empty()) usage("xsec: empty grid");
  if (req.schemes.empty()) usage("xsec: no schemes");
  for (const auto& s : req.schemes) {
    if (s == "born" || s == "jensen" || s == "mc")
      usage("xsec: scheme '" + s + "' has no cross section; use length");
  }
  const auto& pot = req.pot;
  SharedScale ks, ka, ku;
  if (has(req.schemes, "qma"))
    ks = SharedScale::resolve(req.kc, [&] { return qma::calibrate_kc_sigma(pot, req.b).k_c; });
  if (has(req.schemes, "qma-amp"))
    ka = SharedScale::resolve(req.kc, [&] { return qma::calibrate_kc_amplitude(pot, req.b).k_c; });
  if (has(req.schemes, "unitary"))
    ku = SharedScale::resolve(req.kc, [&] { return unitary::solve_unitary(pot).k_c; });

  eikonal::Options eopt;
  eopt.rel_tol = req.rel_tol;

  Table t;
  t.columns.push_back("k");
  for (const auto& s : req.schemes) t.columns.push_back("sigma_" + s);
  t.rows.resize(req.k.size());
  detail::parallel_rows(req.k.size(), [&](std::size_t i) {
    const double k = req.k[i];
    auto& r = t.rows[i];
    r.push_back(Cell{k, {}});
    for (const auto& s : req.schemes) {
      if (s == "eikonal") r.push_back(guarded([&] { return eikonal::eikonal_cross_section(pot, k, eopt); }));
      else if (s == "eikonal-allangle")
        r.push_back(guarded([&] { return eikonal::eikonal_cross_section_all_angle(pot, k, eopt); }));
      else if (s == "qma") r.push_back(ks.cell([&](double kc) { return qma::qma_sigma(pot, k, kc); }));
      else if (s == "qma-amp")
        r.push_back(ka.cell([&](double kc) { return qma::qma_cross_section_from_amplitude(pot, k, kc); }));
      else if (s == "unitary")
        r.push_back(ku.cell([&](double kc) {
          unitary::UnitarySolution sol;
          sol.k_c = kc;
          return unitary::unitary_sigma(pot, k, sol);
        }));
      else if (s == "exact") r.push_back(guarded([&] { return detail::exact_sigma(pot, k); }));
    }
  });
  return t;
}

Table amp_table(const AmpRequest& req) {
  if (req.theta.empty()) usage("amp: empty grid");
  if (req.schemes.empty()) usage("amp: no schemes");
  for (const auto& s : req.schemes) {
    if (s == "born" || s == "jensen" || s == "mc" || s == "qma")
      usage("amp: scheme '" + s + "' has no amplitude (the quantum-mean amplitude is qma-amp)");
  }
  const auto& pot = req.pot;
  const double k = req.k;
  SharedScale ka, ku;
  if (has(req.schemes, "qma-amp"))
    ka = SharedScale::resolve(req.kc, [&] { return qma::calibrate_kc_amplitude(pot, req.b).k_c; });
  if (has(req.schemes, "unitary"))
    ku = SharedScale::resolve(req.kc, [&] { return unitary::solve_unitary(pot).k_c; });
  eikonal::Options eopt;
  eopt.rel_tol = req.rel_tol;

  Table t;
  t.columns.push_back("theta");
  for (const auto& s : req.schemes) {
    t.columns.push_back(s + "_re");
    t.columns.push_back(s + "_im");
  }
  t.rows.resize(req.theta.size());
  detail::parallel_rows(req.theta.size(), [&](std::size_t i) {
    const double theta = req.theta[i];
    auto& r = t.rows[i];
    r.push_back(Cell{theta, {}});
    for (const auto& s : req.schemes) {
      std::complex<double> f;
      Cell re, im;
      const SharedScale* scale = s == "qma-amp" ? &ka : s == "unitary" ? &ku : nullptr;
      if (scale && scale->error) {
        re.error = im.error = scale->error;
        r.push_back(re);
        r.push_back(im);
        continue;
      }
      try {
        if (s == "eikonal") f = eikonal::eikonal_amplitude(pot, k, theta, eopt);
        else if (s == "eikonal-allangle") f = eikonal::eikonal_amplitude_all_angle(pot, k, theta, eopt);
        else if (s == "qma-amp") {
          f = qma::qma_amplitude(pot, k, theta, ka.value, req.rel_tol);
        } else if (s == "unitary") {
          if (theta != 0.0) throw Error(ErrorCode::Unsupported, "unitary amplitude: forward direction only");
          f = unitary::unitary_forward_amplitude(pot, k, ku.value);
        } else if (s == "exact") {
          f = partial_wave_amplitude(pot, k, theta);
        }
        re.value = f.real();
        im.value = f.imag();
      } catch (...) {
        re.error = describe_current_exception();
        im.error = re.error;
      }
      r.push_back(re);
      r.push_back(im);
    }
  });
  return t;
}

Table phase_shift_table(const Potential& pot, double k) {
  Table t;
  t.columns = {"l", "delta"};
  for (const auto& [l, d] : detail::phase_shifts(pot, k)) {
    t.rows.push_back({Cell{static_cast<double>(l), {}}, Cell{d, {}}});
  }
  return t;
}

}  // namespace scatter::cli
