#ifndef POLARIZON_QUADRATURE_HPP
#define POLARIZON_QUADRATURE_HPP

#include <functional>

#include "polarizon/types.hpp"

namespace polarizon {

// Adaptive Simpson on [a, b] for complex-valued integrands. Used as the
// independent quadrature oracle against closed forms.
Complex integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                           double tol = 1e-11, int max_depth = 48);

// Principal-value integral  PV int_a^b f(x)/(x - x0) dx  with a < x0 < b,
// via local subtraction: int [f(x)-f(x0)]/(x-x0) + f(x0) log((b-x0)/(x0-a)).
Complex integrate_pv(const std::function<Complex(double)>& f, double a, double b, double x0,
                     double tol = 1e-11);

// Midpoint-grid PV sum over nodes x_k = (k+1/2) h with the pole on node k0:
// symmetric cancellation plus the midpoint correction  h * f'(x0), where the
// derivative is taken analytically by the caller.
double lattice_pv_correction_weight();

}  // namespace polarizon

#endif
