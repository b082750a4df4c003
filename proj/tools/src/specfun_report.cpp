#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "scatter/specfun.hpp"
#include "scatter_cli/cli.hpp"

namespace scatter::cli {
namespace {

double rel_error(double value, double ref) {
  const double scale = std::max(std::abs(ref), 1e-300);
  return std::abs(value - ref) / scale;
}

// 2/sqrt(pi) int_0^x exp(t^2) dt, evaluated directly.
double erfi_reference(double x) {
  using boost::math::quadrature::gauss_kronrod;
  const double I = gauss_kronrod<double, 61>::integrate([](double t) { return std::exp(t * t); }, 0.0,
                                                       x, 15, 1e-15);
  return 2.0 / std::sqrt(std::numbers::pi) * I;
}

}  // namespace

nlohmann::json specfun_report() {
  namespace bm = boost::math;
  nlohmann::json rows = nlohmann::json::array();
  double worst = 0.0;
  auto add = [&](const char* fn, double x, int l, double value, double ref) {
    const double e = rel_error(value, ref);
    worst = std::max(worst, e);
    nlohmann::json r = {{"function", fn}, {"x", x}, {"value", value}, {"reference", ref}, {"rel_error", e}};
    if (l >= 0) r["l"] = l;
    rows.push_back(std::move(r));
  };

  const double xs[] = {0.1, 1.0, 2.5, 7.0, 20.0};
  for (double x : xs) {
    add("j0", x, -1, specfun::bessel_j0(x), bm::cyl_bessel_j(0, x));
    add("j1", x, -1, specfun::bessel_j1(x), bm::cyl_bessel_j(1, x));
    add("k0", x, -1, specfun::bessel_k0(x), bm::cyl_bessel_k(0, x));
    add("gamma", x, -1, specfun::gamma(x), bm::tgamma(x));
    for (int l : {0, 1, 3, 10}) {
      const auto p = specfun::spherical_bessel_pair(l, x);
      add("sph_j", x, l, p.j, bm::sph_bessel(l, x));
      add("sph_y", x, l, p.y, bm::sph_neumann(l, x));
      const double ref_i = bm::cyl_bessel_i(l + 0.5, x) * std::sqrt(std::numbers::pi / (2.0 * x));
      add("sph_i", x, l, specfun::modified_spherical_i_pair(l, x).i, ref_i);
    }
  }
  for (double x : {0.1, 1.0, 2.9, 3.1, 5.0, 7.0}) add("erfi", x, -1, specfun::erfi(x), erfi_reference(x));
  return {{"rows", rows}, {"max_rel_error", worst}};
}

}  // namespace scatter::cli
