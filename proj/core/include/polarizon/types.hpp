#ifndef POLARIZON_TYPES_HPP
#define POLARIZON_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace polarizon {

using Complex = std::complex<double>;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;

inline constexpr Complex I{0.0, 1.0};

// Natural units: hbar = eps0 = mu0 = c = 1. Kept as named constants so the
// formulas read like the physics.
inline constexpr double hbar = 1.0;
inline constexpr double eps0 = 1.0;
inline constexpr double mu0 = 1.0;
inline constexpr double c_light = 1.0;

// sqrt with branch on the upper half-plane (Im >= 0), used for wave numbers
// in absorptive media.
inline Complex sqrt_upper(Complex x) {
  Complex r = std::sqrt(x);
  if (r.imag() < 0.0) r = -r;
  return r;
}

}  // namespace polarizon

#endif
