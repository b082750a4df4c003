#pragma once

#include <cmath>
#include <complex>

namespace scatter::detail {

/// (2 / A^2)(1 - (1 + A) e^{-A}), stable for small |A|. Real or complex A.
template <class T>
T edge_ratio(T A) {
  using std::abs;
  using std::exp;
  if (abs(A) < 0.1) {
    // sum_{n>=2} 2 (-1)^n (n - 1) A^{n-2} / n!
    T sum{};
    T power{1.0};
    double factorial = 2.0;
    for (int n = 2; n <= 16; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      sum += power * (2.0 * sign * (n - 1) / factorial);
      power *= A;
      factorial *= (n + 1);
    }
    return sum;
  }
  return (T{2.0} / (A * A)) * (T{1.0} - (T{1.0} + A) * exp(-A));
}

}  // namespace scatter::detail
