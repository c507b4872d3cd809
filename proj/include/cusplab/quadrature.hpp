#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace cusplab {

namespace detail {

inline double simpson_step(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_step(a, fa, m, fm, flm);
  const double right = simpson_step(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson_step(a, fa, b, fb, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole,
                                      std::max(abs_tol, 1e-300), max_depth);
}

// Integral of sqrt(max(0, level - q(t))) over [a, b]. The integrand has
// square-root zeros at classical turning points; crossings are located on a
// scan grid and the adjacent pieces are integrated after the substitution
// t = t* -+ u^2 that removes the singularity.
template <class Q>
double phase_space_integral(Q&& q, double level, double a, double b,
                            double rel_tol = 1e-6) {
  if (!(b > a)) return 0.0;
  const auto f = [&](double t) { return std::sqrt(std::max(0.0, level - q(t))); };

  const int m = 1024;
  const double step = (b - a) / m;
  std::vector<double> node(m + 1), val(m + 1);
  for (int i = 0; i <= m; ++i) {
    node[i] = a + step * i;
    val[i] = level - q(node[i]);
  }

  // Refine a bracketed sign change of level - q to near machine accuracy.
  const auto refine = [&](double lo, double hi) {
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (((level - q(mid)) > 0.0) == ((level - q(lo)) > 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  // Rough total for scaling the absolute tolerances.
  double rough = 0.0;
  for (int i = 0; i < m; ++i) {
    rough += 0.5 * (std::sqrt(std::max(0.0, val[i])) + std::sqrt(std::max(0.0, val[i + 1]))) * step;
  }
  if (rough <= 0.0) return 0.0;
  const double tol = rel_tol * rough;

  double total = 0.0;
  int i = 0;
  while (i < m) {
    if (val[i] <= 0.0 && val[i + 1] <= 0.0) {
      ++i;
      continue;
    }
    // Segment of positivity: [lo, hi] with sqrt zeros possibly at either end.
    double lo = node[i];
    bool lo_is_zero = false;
    if (val[i] <= 0.0) {
      lo = refine(node[i], node[i + 1]);
      lo_is_zero = true;
    }
    int j = i;
    while (j < m && !(val[j] > 0.0 && val[j + 1] <= 0.0)) ++j;
    double hi;
    bool hi_is_zero = false;
    if (j >= m) {
      hi = b;
      j = m;
    } else {
      hi = refine(node[j], node[j + 1]);
      hi_is_zero = true;
      ++j;
    }
    if (hi > lo) {
      const double mid = 0.5 * (lo + hi);
      const double seg_tol = 0.25 * tol;
      if (lo_is_zero) {
        const double span = mid - lo;
        total += adaptive_simpson(
            [&](double u) { return 2.0 * u * f(lo + u * u); }, 0.0,
            std::sqrt(span), seg_tol);
      } else {
        total += adaptive_simpson(f, lo, mid, seg_tol);
      }
      if (hi_is_zero) {
        const double span = hi - mid;
        total += adaptive_simpson(
            [&](double u) { return 2.0 * u * f(hi - u * u); }, 0.0,
            std::sqrt(span), seg_tol);
      } else {
        total += adaptive_simpson(f, mid, hi, seg_tol);
      }
    }
    i = j;
  }
  return total;
}

}  // namespace cusplab
