#ifndef POLARIZON_GREENFN_HPP
#define POLARIZON_GREENFN_HPP

#include <vector>

#include "polarizon/medium.hpp"
#include "polarizon/susceptibility.hpp"
#include "polarizon/types.hpp"

namespace polarizon {

enum class GreenBC { outgoing, dirichlet };

// Per-layer plane-wave coefficients of a solution:
//   u(z) = a e^{i k (z - z0)} + b e^{-i k (z - z0)} on [z0, z1].
struct LayerWave {
  double z0 = 0.0, z1 = 0.0;
  Complex k;
  Complex a, b;
  Complex value(double z) const;
  Complex deriv(double z) const;
};

// Two-solution representation of the stratified Green function at one
// frequency: G(z, z') = u_minus(z_<) u_plus(z_>) / W.
struct GreenFunction1D {
  double omega = 0.0;
  GreenBC bc = GreenBC::outgoing;
  double L = 0.0;
  int Nz = 0;
  double dz = 0.0;                 // interior-node spacing L/(Nz+1)
  VecR z;                          // nodes z_m = (m+1) dz
  VecC u_minus, u_plus;            // solutions sampled on nodes
  VecC du_minus, du_plus;
  std::vector<LayerWave> waves_minus, waves_plus;  // per-layer closed forms
  Complex wronskian;
  double wronskian_dev = 0.0;      // max relative deviation across nodes

  Complex eval(int i, int j) const;
  Complex eval_at(double zi, double zj) const;  // via layer waves
  MatC matrix() const;
};

// Builds the two-solution Green function; exact per-layer propagation.
// outgoing: radiation conditions in the homogeneous exterior.
// dirichlet: u(0) = u(L) = 0 walls.
GreenFunction1D build_green(const MediumProfile& profile, double omega, int Nz,
                            GreenBC bc = GreenBC::outgoing);

// Dense discretized-operator backend (oracle): G = K^-1 / dz with
// K = D2 + (omega^2/c^2) eps(z) and boundary closure matching `bc`
// (exact exterior ghost elimination for outgoing, hard walls for dirichlet).
MatC build_green_dense(const MediumProfile& profile, double omega, int Nz,
                       GreenBC bc = GreenBC::outgoing);

// max over sampled pairs of |G(z,z') - G(z',z)| / max |G|
double reciprocity_residual(const MatC& G, int n_pairs = 100, unsigned seed = 1);

// Applies the discrete operator to G columns (and rows, adjoint check) and
// returns max deviation from the discrete delta, relative to 1/dz.
struct DefiningResidual {
  double direct;
  double adjoint;
};
DefiningResidual defining_residual(const GreenFunction1D& G, const MediumProfile& profile);

// Generalized optical theorem (two-frequency Green identity), 1D reduction,
// with all z-integrals done analytically per layer and homogeneous-exterior
// corrections in closed form. Returns the max relative residual over sampled
// (z, z') pairs.
double optical_theorem_residual(const MediumProfile& profile, double omega, double omega2,
                                int n_pairs = 6);

// --- frequency sum rules ---

enum class SumRuleId { A4, A5, C6, C8a, C8b };

struct SumRuleReport {
  SumRuleId rule;
  double omega_max;
  int Nz;
  double diag_residual;      // max over diagonal entries, relative to target
  double offdiag_residual;   // max off-target-kernel entry relative to diag scale
  std::vector<std::pair<double, double>> convergence;  // (omega_max, residual)
};

// A4, A5, C8a, C8b: open-system real-axis quadrature folded onto omega > 0
// on a band matched to the grid Nyquist frequency (omega_max = pi c / dz by
// default when omega_max <= 0). C6: contour (upper-arc) evaluation on the
// Dirichlet lattice operator where the delta-column targets are exact.
SumRuleReport green_sum_rule(const MediumProfile& profile, SumRuleId rule, int Nz,
                             int Nomega, double omega_max = -1.0, bool with_table = false);

}  // namespace polarizon

#endif
