#ifndef POLARIZON_SUSCEPTIBILITY_HPP
#define POLARIZON_SUSCEPTIBILITY_HPP

#include <vector>

#include "polarizon/medium.hpp"
#include "polarizon/types.hpp"

namespace polarizon {

// --- Laplace / frequency susceptibility of the Debye-cutoff bath ---
//
// chi_bar(p) = (alpha^2 / (eps0 rho)) / (p^2 + omega0^2 + gamma Lambda p / (Lambda + p)),
// the closed form of Eq.-(3.7)-type denominator for this bath family.

// Denominator of chi_bar(p) (closed form); analytic for Re p > 0.
Complex chi_denominator(const Layer& layer, Complex p);

// chi_bar(p) for Re p > 0. Throws std::domain_error for Re p <= 0.
Complex chi_laplace(const Layer& layer, Complex p);

// chi(omega) = chi_bar(-i omega + 0), the eta->0 limit taken analytically in
// the closed-form denominator. omega > 0 required; conjugate=false gives
// chi(omega), conjugate=true gives chi(-omega) = conj(chi(omega)).
Complex chi_omega(const Layer& layer, double omega, bool conjugate = false);

// Quadrature oracle for the bath integral in the denominator:
// int_0^infty domega' omega'^2 v^2/(p^2+omega'^2) by adaptive quadrature plus
// analytic tail; used to validate the closed form.
Complex chi_denominator_by_quadrature(const Layer& layer, Complex p);

// --- verification probes ---

struct ZeroCandidate {
  Complex p;
  double abs_denominator;
};

// Scans |denominator| on a rectangle [re0,re1]x[im0,im1] (Re p > 0 required)
// and returns grid points where it dips below `threshold` times the local
// scale |p^2 + omega0^2|. Empty for any valid absorptive layer.
std::vector<ZeroCandidate> denominator_zero_scan(const Layer& layer, double re0, double re1,
                                                 double im0, double im1, int n_re, int n_im,
                                                 double threshold = 1e-2);

// Kramers-Kronig: reconstructs Re chi on interior nodes from Im chi by a
// principal-value Hilbert transform over (0, omega_max) plus the analytic
// high-frequency tail, and returns the max relative deviation.
double kramers_kronig_residual(const Layer& layer, const SpectralGrid& grid);

struct SumRuleResult {
  Complex value;
  Complex target;
  double residual;  // relative (or absolute when target == 0)
};

// C.9a:  int_-inf^inf omega chi domega = i pi alpha^2/(eps0 rho)
// C.9b:  int omega^3 [chi + (alpha^2/eps0 rho)/(omega+i0)^2] = i pi alpha^2 wtilde0^2/(eps0 rho)
// computed by folding onto omega > 0 plus analytic tails.
std::pair<SumRuleResult, SumRuleResult> chi_sum_rules(const Layer& layer,
                                                      const SpectralGrid& grid);

// Auxiliary bath identity (two-pole partial-fraction identity):
// int_0^inf domega omega^2 v^2 /((p^2+omega^2)(p2^2+omega^2))
//   = -rho^2 + (alpha^2 rho/eps0) (p^2-p2^2)^-1 [1/chi(p) - 1/chi(p2)].
// Left side by quadrature + tail, right side closed form; returns relative
// difference. p == p2 throws std::invalid_argument.
double bath_auxiliary_identity_residual(const Layer& layer, Complex p, Complex p2);

}  // namespace polarizon

#endif
