#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "scatter/numerics.hpp"
#include "scatter/specfun.hpp"

namespace scatter {
namespace detail {

const GaussKronrod21& gauss_kronrod21() {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  static const GaussKronrod21 rule{
      std::span<const double>(gauss_kronrod<double, 21>::abscissa()),
      std::span<const double>(gauss_kronrod<double, 21>::weights()),
      std::span<const double>(gauss<double, 10>::weights()),
  };
  return rule;
}

double bessel_j0_value(double x) { return specfun::bessel_j0(x); }

double bessel_j0_zero_value(int n) {
  // Zeros are requested in order many times per integral; cache them.
  thread_local std::vector<double> cache;
  while (static_cast<int>(cache.size()) < n) {
    cache.push_back(specfun::bessel_j0_zero(static_cast<int>(cache.size()) + 1));
  }
  return cache[n - 1];
}

}  // namespace detail

namespace {

template <class T>
std::pair<T, T> euler_average(std::span<const T> partial) {
  if (partial.empty()) return {T{}, T{}};
  const std::size_t m = std::min<std::size_t>(partial.size(), 24);
  std::vector<T> row(partial.end() - m, partial.end());
  T last_delta{};
  while (row.size() > 1) {
    if (row.size() == 2) last_delta = row[1] - row[0];
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
  }
  return {row[0], last_delta};
}

}  // namespace

std::pair<double, double> accelerate(std::span<const double> partial) {
  return euler_average(partial);
}

std::pair<std::complex<double>, std::complex<double>> accelerate(
    std::span<const std::complex<double>> partial) {
  return euler_average(partial);
}

}  // namespace scatter
