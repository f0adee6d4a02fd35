#pragma once

#include <cmath>
#include <utility>

namespace wsci {

/// Root of f on [lo, hi] where f(lo) and f(hi) differ in sign (or one is
/// zero). Brent's method: inverse quadratic / secant steps, falling back to
/// bisection whenever a step would not shrink the bracket, so the bracket
/// width converges to `tol` at least as fast as plain bisection would.
template <class F>
double brent_root(F&& f, double lo, double hi, double f_lo, double f_hi, double tol,
                  int max_iter = 200) {
  double a = lo, b = hi, fa = f_lo, fb = f_hi;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < (min1 < min2 ? min1 : min2)) {
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
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

struct GoldenResult {
  double argmin;
  double value;
};

/// Golden-section minimisation of a unimodal f on [a, b], stopping when the
/// bracket is narrower than `tol`. Equal probe values move the bracket left,
/// so ties resolve toward the smaller argument.
template <class F>
GoldenResult golden_section_min(F&& f, double a, double b, double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x_left = b - ratio * (b - a);
  double x_right = a + ratio * (b - a);
  double f_left = f(x_left);
  double f_right = f(x_right);
  while (b - a > tol) {
    if (f_left <= f_right) {
      b = x_right;
      x_right = x_left;
      f_right = f_left;
      x_left = b - ratio * (b - a);
      f_left = f(x_left);
    } else {
      a = x_left;
      x_left = x_right;
      f_left = f_right;
      x_right = a + ratio * (b - a);
      f_right = f(x_right);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, f(mid)};
}

}  // namespace wsci
