#ifndef POLARIZON_MEDIUM_HPP
#define POLARIZON_MEDIUM_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "polarizon/types.hpp"

namespace polarizon {

// Minimum damping rate: the formalism degenerates for a non-absorptive
// dielectric, and several operations divide by Im(chi).
inline constexpr double gamma_min = 1e-4;

struct Layer {
  double z_start = 0.0;
  double z_end = 0.0;
  double alpha = 1.0;     // polarization coupling (natural units)
  double rho = 1.0;       // oscillator density
  double omega0 = 1.0;    // bare resonance frequency
  double gamma = 0.1;     // bath damping rate
  double cutoff_lambda = 10.0;  // Debye cutoff of the bath coupling

  void validate(const std::string& where) const;
};

struct MediumProfile {
  std::vector<Layer> layers;  // tile [0, L] contiguously
  Layer exterior;             // homogeneous medium outside [0, L]
  double L = 1.0;

  void validate() const;
  // Unique layer containing z. Left-closed, right-open intervals; the last
  // layer is closed at z = L. Out-of-domain z throws std::domain_error.
  const Layer& sample_at(double z) const;
  bool is_homogeneous() const;
};

struct SpectralGrid {
  int Nz = 32;
  int Nomega = 256;
  double omega_max = 6.0;

  double domega() const { return omega_max / Nomega; }
  // Midpoint nodes (k + 1/2) * domega, k = 0..Nomega-1; weights = domega.
  double omega_node(int k) const { return (k + 0.5) * domega(); }
  VecR omega_nodes() const;
  VecR omega_weights() const;

  void validate() const;
};

// Bath coupling amplitude v_omega for the Debye-cutoff family:
//   v = rho * sqrt((2/pi) * gamma * Lambda^2 / (omega^2 + Lambda^2)).
// Its square integrates to rho^2 * gamma * Lambda over (0, inf).
double coupling_v(const Layer& layer, double omega);

// Renormalized frequency squared, closed form for the Debye bath:
//   omega0^2 + gamma * Lambda.
double renormalized_frequency_sq(const Layer& layer);

// Same integral restricted to the band [0, Omega]:
//   omega0^2 + gamma*Lambda*(2/pi)*atan(Omega/Lambda).
double renormalized_frequency_sq_band(const Layer& layer, double omega_max);

// int_0^inf v^2 domega = rho^2 gamma Lambda (exact).
double bath_weight_total(const Layer& layer);

// Analytic tail int_Omega^inf v^2 domega.
double bath_weight_tail(const Layer& layer, double omega_max);

}  // namespace polarizon

#endif
