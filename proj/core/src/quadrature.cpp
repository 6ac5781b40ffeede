#include "polarizon/quadrature.hpp"

#include <cmath>

namespace polarizon {

namespace {

Complex simpson(const std::function<Complex(double)>& f, double a, double fa_w, Complex fa,
                Complex fm, Complex fb, double tol, int depth, Complex whole) {
  const double m = a + fa_w / 2.0;
  const double lw = fa_w / 2.0;
  const double lm = a + lw / 2.0, rm = m + lw / 2.0;
  const Complex flm = f(lm), frm = f(rm);
  const Complex left = (lw / 6.0) * (fa + 4.0 * flm + fm);
  const Complex right = (lw / 6.0) * (fm + 4.0 * frm + fb);
  const Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, lw, fa, flm, fm, tol / 2.0, depth - 1, left) +
         simpson(f, m, lw, fm, frm, fb, tol / 2.0, depth - 1, right);
}

}  // namespace

Complex integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                           double tol, int max_depth) {
  if (a == b) return {0.0, 0.0};
  const Complex fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
  const Complex whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return simpson(f, a, b - a, fa, fm, fb, tol, max_depth, whole);
}

Complex integrate_pv(const std::function<Complex(double)>& f, double a, double b, double x0,
                     double tol) {
  const Complex f0 = f(x0);
  const double h = 1e-6 * (b - a);
  const Complex d0 = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
  auto g = [&](double x) -> Complex {
    if (std::abs(x - x0) < h) return d0;
    return (f(x) - f0) / (x - x0);
  };
  Complex res = integrate_adaptive(g, a, x0, tol) + integrate_adaptive(g, x0, b, tol);
  res += f0 * std::log((b - x0) / (x0 - a));
  return res;
}

}  // namespace polarizon
