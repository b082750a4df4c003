#include <cmath>
#include <functional>
#include <string>

#include "evaluate.hpp"
#include "scatter/error.hpp"
#include "scatter/exact_reference.hpp"
#include "scatter/quantum_mean.hpp"
#include "scatter/unitary.hpp"

namespace scatter::cli {
namespace {

using detail::guarded;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCouplings[] = {5.0, 10.0, 15.0};

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  return parse_grid(std::to_string(lo) + ":" + std::to_string(hi) + ":" + std::to_string(n) + ":log");
}

using Factory = std::function<Potential(double)>;
using LengthFn = std::function<double(const Potential&)>;

// One row per coupling; one column per curve.
Table length_figure(const Factory& make, const std::vector<double>& couplings,
                    const std::vector<std::pair<std::string, LengthFn>>& curves) {
  Table t;
  t.columns.push_back("G");
  for (const auto& c : curves) t.columns.push_back(c.first);
  t.rows.resize(couplings.size());
  detail::parallel_rows(couplings.size(), [&](std::size_t i) {
    const Potential pot = make(couplings[i]);
    auto& r = t.rows[i];
    r.push_back(Cell{couplings[i], {}});
    for (const auto& c : curves) r.push_back(guarded([&] { return c.second(pot); }));
  });
  return t;
}

// Curve evaluated at k once its per-coupling scale is known.
struct SigmaCurve {
  std::string name;
  std::function<double(const Potential&)> scale;  // may throw; empty = none
  std::function<double(const Potential&, double k, double scale)> sigma;
};

// Rows ordered by coupling, then k.
Table sigma_figure(const Factory& make, const std::vector<double>& ks,
                   const std::vector<SigmaCurve>& curves) {
  Table t;
  t.columns = {"G", "k"};
  for (const auto& c : curves) t.columns.push_back(c.name);
  const std::size_t nk = ks.size();
  t.rows.resize(std::size(kCouplings) * nk);

  for (std::size_t g = 0; g < std::size(kCouplings); ++g) {
    const Potential pot = make(kCouplings[g]);
    std::vector<double> scales(curves.size(), kNaN);
    std::vector<std::optional<ErrorInfo>> failures(curves.size());
    detail::parallel_rows(curves.size(), [&](std::size_t c) {
      if (!curves[c].scale) return;
      try {
        scales[c] = curves[c].scale(pot);
      } catch (...) {
        failures[c] = describe_current_exception();
      }
    });
    detail::parallel_rows(nk, [&](std::size_t j) {
      auto& r = t.rows[g * nk + j];
      r.push_back(Cell{kCouplings[g], {}});
      r.push_back(Cell{ks[j], {}});
      for (std::size_t c = 0; c < curves.size(); ++c) {
        if (failures[c]) {
          r.push_back(Cell{kNaN, failures[c]});
          continue;
        }
        r.push_back(guarded([&] { return curves[c].sigma(pot, ks[j], scales[c]); }));
      }
    });
  }
  return t;
}

Potential square(double G) { return Potential::square(G, 1.0); }
Potential yukawa(double G) { return Potential::yukawa(G); }

double exact_sigma(const Potential& pot, double k, double) { return detail::exact_sigma(pot, k); }

SigmaCurve qma_sigma_curve(std::string name, double b) {
  return {std::move(name),
          [b](const Potential& p) { return qma::calibrate_kc_sigma(p, b).k_c; },
          [](const Potential& p, double k, double ks) { return qma::qma_sigma(p, k, ks); }};
}

SigmaCurve unitary_sigma_curve() {
  return {"sigma_unitary", [](const Potential& p) { return unitary::solve_unitary(p).k_c; },
          [](const Potential& p, double k, double kc) {
            unitary::UnitarySolution sol;
            sol.k_c = kc;
            return unitary::unitary_sigma(p, k, sol);
          }};
}

LengthFn qma_length(double b) {
  return [b](const Potential& p) { return qma::qma_scattering_length(p, b); };
}

}  // namespace

Table figure_table(int id, const FigureOptions& opt) {
  const auto couplings = opt.grid ? *opt.grid : log_grid(0.5, 50.0, 20);
  const auto momenta = opt.grid ? *opt.grid : log_grid(0.01, 10.0, 30);
  const LengthFn exact = detail::exact_length;

  switch (id) {
    case 1:
      return length_figure(square, couplings,
                           {{"a_exact", exact}, {"a_qma_b1", qma_length(1.0)}, {"a_qma_b08", qma_length(0.8)}});
    case 2:
      return sigma_figure(square, momenta,
                          {{"sigma_exact", {}, exact_sigma},
                           qma_sigma_curve("sigma_qma_b1", 1.0),
                           qma_sigma_curve("sigma_qma_b08", 0.8)});
    case 3: {
      std::vector<double> ns;
      if (opt.grid) {
        ns = *opt.grid;
        for (double n : ns)
          if (n != std::round(n) || n < 2) throw Error(ErrorCode::Usage, "figure 3: N grid needs integers >= 2");
      } else {
        for (int n = 2; n <= 40; ++n) ns.push_back(n);
      }
      Table t;
      t.columns = {"N", "f_qma", "f_exact"};
      for (double n : ns) {
        const int N = static_cast<int>(n);
        t.rows.push_back({Cell{n, {}}, guarded([&] { return qma::singular_qma_shape(N, 1.0); }),
                          guarded([&] { return exact::singular_exact_shape(N); })});
      }
      return t;
    }
    case 4:
      return length_figure(yukawa, couplings,
                           {{"a_numerov", exact}, {"a_qma_b1", qma_length(1.0)}, {"a_qma_b07", qma_length(0.7)}});
    case 5:
      return sigma_figure(yukawa, momenta,
                          {qma_sigma_curve("sigma_qma", 1.0), {"sigma_numerov", {}, exact_sigma}});
    case 6:
      return length_figure(yukawa, couplings,
                           {{"a_numerov", exact},
                            {"a_unitary", [](const Potential& p) {
                               return unitary::solve_unitary(p).scattering_length;
                             }}});
    case 7:
      return sigma_figure(yukawa, momenta, {{"sigma_numerov", {}, exact_sigma}, unitary_sigma_curve()});
    case 8:
      return sigma_figure(square, momenta, {{"sigma_exact", {}, exact_sigma}, unitary_sigma_curve()});
    default:
      throw Error(ErrorCode::Usage, "figure id must be 1..8, got " + std::to_string(id));
  }
}

}  // namespace scatter::cli
