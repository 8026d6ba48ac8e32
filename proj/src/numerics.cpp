#include "growthlab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace growthlab::num {

std::optional<QuadRoots> quadratic_roots(double a, double b, double c) {
  if (a == 0.0) return std::nullopt;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b >= 0.0 ? b + sq : b - sq);
  QuadRoots r;
  r.q_over_a = q / a;
  // q == 0 only when b == 0 and disc == 0, where both roots are 0
  r.c_over_q = (q != 0.0) ? c / q : 0.0;
  return r;
}

BracketScan scan_for_root(const std::function<double(double)>& f, double lo,
                          double hi, int grid) {
  BracketScan out;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / grid;
    const double fx = f(x);
    if (std::isfinite(f_prev) && std::isfinite(fx) &&
        (f_prev == 0.0 || std::signbit(f_prev) != std::signbit(fx))) {
      if (out.sign_changes == 0) {
        out.lo = x_prev;
        out.hi = x;
      }
      ++out.sign_changes;
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, double ftol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  // callers bracket first; treat a same-sign interval as the nearer endpoint
  if (std::signbit(fa) == std::signbit(fb))
    return std::fabs(fa) < std::fabs(fb) ? a : b;

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0 || std::fabs(fb) <= ftol) return b;

    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {  // inverse quadratic interpolation
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

}  // namespace growthlab::num
