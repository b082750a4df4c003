#include <cmath>
#include <limits>
#include <sstream>

#include "scatter/numerics.hpp"

namespace scatter {

RootResult find_root_bracketed(const std::function<double(double)>& g, double lo, double hi,
                               double tol, int max_iter) {
  if (!(lo < hi)) throw_domain("find_root_bracketed: require lo < hi");
  double a = lo;
  double b = hi;
  double fa = g(a);
  double fb = g(b);
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw Error(ErrorCode::NoSignChange, "find_root_bracketed: non-finite value at bracket end");
  }
  RootResult res;
  res.lo = lo;
  res.hi = hi;
  if (fa == 0.0) {
    res.root = a;
    return res;
  }
  if (fb == 0.0) {
    res.root = b;
    return res;
  }
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "find_root_bracketed: no sign change on [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::NoSignChange, os.str());
  }

  // Brent (1973): keep b as the best iterate, [b, c] as the bracket.
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 1; it <= max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b);
    const double xm = 0.5 * (c - b);
    res.iterations = it;
    if (std::fabs(fb) <= tol || std::fabs(xm) <= tol1) {
      res.root = b;
      res.residual = fb;
      if (std::fabs(fb) > tol) {
        throw NonConvergenceError("find_root_bracketed: bracket collapsed above residual tolerance",
                                  b, std::fabs(fb));
      }
      return res;
    }
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = g(b);
  }
  throw NonConvergenceError("find_root_bracketed: iteration limit", b, std::fabs(fb));
}

std::pair<double, double> expand_bracket(const std::function<double(double)>& g, double seed,
                                         int max_doublings) {
  if (!(seed > 0.0)) throw_domain("expand_bracket: seed must be > 0");
  const double f0 = g(seed);
  if (f0 == 0.0) return {seed, seed};
  double up = seed;
  double f_up = f0;
  double down = seed;
  double f_down = f0;
  for (int i = 0; i < max_doublings; ++i) {
    const double up2 = 2.0 * up;
    const double fu = g(up2);
    if ((fu > 0.0) != (f_up > 0.0) || fu == 0.0) return {up, up2};
    up = up2;
    f_up = fu;
    const double down2 = 0.5 * down;
    const double fd = g(down2);
    if ((fd > 0.0) != (f_down > 0.0) || fd == 0.0) return {down2, down};
    down = down2;
    f_down = fd;
  }
  throw Error(ErrorCode::NoSignChange, "expand_bracket: no sign change found");
}

std::vector<SignChange> scan_sign_changes(const std::function<double(double)>& g, double lo,
                                          double hi, int samples) {
  if (!(lo > 0.0 && hi > lo) || samples < 2) throw_domain("scan_sign_changes: bad grid");
  std::vector<SignChange> out;
  const double ratio = std::log(hi / lo) / (samples - 1);
  double x_prev = lo;
  double f_prev = g(lo);
  for (int i = 1; i < samples; ++i) {
    const double x = lo * std::exp(ratio * i);
    const double f = g(x);
    if (std::isfinite(f) && std::isfinite(f_prev) && ((f > 0.0) != (f_prev > 0.0))) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = f;
  }
  return out;
}

}  // namespace scatter
