#include "polarizon/susceptibility.hpp"

#include <cmath>
#include <numbers>

#include "polarizon/quadrature.hpp"

namespace polarizon {

using std::numbers::pi;

Complex chi_denominator(const Layer& layer, Complex p) {
  const double lam = layer.cutoff_lambda;
  return p * p + layer.omega0 * layer.omega0 +
         layer.gamma * lam * p / (lam + p);
}

Complex chi_laplace(const Layer& layer, Complex p) {
  if (!(p.real() > 0.0))
    throw std::domain_error("chi_laplace: Re p must be > 0 (use chi_omega on the boundary)");
  const double A = layer.alpha * layer.alpha / (eps0 * layer.rho);
  return A / chi_denominator(layer, p);
}

Complex chi_omega(const Layer& layer, double omega, bool conjugate) {
  if (!(omega > 0.0)) throw std::domain_error("chi_omega: omega must be > 0");
  const double A = layer.alpha * layer.alpha / (eps0 * layer.rho);
  const Complex chi = A / chi_denominator(layer, Complex(0.0, -omega));
  return conjugate ? std::conj(chi) : chi;
}

Complex chi_denominator_by_quadrature(const Layer& layer, Complex p) {
  const double lam = layer.cutoff_lambda;
  const double pref = layer.rho * layer.rho * (2.0 / pi) * layer.gamma * lam * lam;
  const double X = 200.0 * std::max({std::abs(p), lam, layer.omega0, 1.0});
  auto f = [&](double w) -> Complex {
    return pref * w * w / ((p * p + w * w) * (w * w + lam * lam));
  };
  Complex integral = integrate_adaptive(f, 0.0, X, 1e-13 * pref);
  // tail: integrand ~ pref [1/w^2 - (p^2+lam^2)/w^4 + ...]
  integral += pref * (1.0 / X - (p * p + lam * lam) / (3.0 * X * X * X));
  const double wt2 = renormalized_frequency_sq(layer);
  return p * p + wt2 - integral / (layer.rho * layer.rho);
}

std::vector<ZeroCandidate> denominator_zero_scan(const Layer& layer, double re0, double re1,
                                                 double im0, double im1, int n_re, int n_im,
                                                 double threshold) {
  if (!(re0 > 0.0)) throw std::domain_error("zero scan region must have Re p > 0");
  std::vector<ZeroCandidate> hits;
  for (int i = 0; i < n_re; ++i) {
    for (int j = 0; j < n_im; ++j) {
      const Complex p(re0 + (re1 - re0) * i / std::max(1, n_re - 1),
                      im0 + (im1 - im0) * j / std::max(1, n_im - 1));
      const Complex den = chi_denominator(layer, p);
      const double scale = std::abs(p * p) + layer.omega0 * layer.omega0 +
                           layer.gamma * layer.cutoff_lambda;
      if (std::abs(den) < threshold * scale) hits.push_back({p, std::abs(den)});
    }
  }
  return hits;
}

namespace {

double chi_imag(const Layer& layer, double w) { return chi_omega(layer, w).imag(); }

// Exact tail integral of f(w) over (Omega, inf) via the 1/w substitution.
Complex tail_integral(const std::function<Complex(double)>& f, double Omega, double tol) {
  auto g = [&](double u) -> Complex {
    if (u <= 0.0) return {0.0, 0.0};
    const double w = 1.0 / u;
    return f(w) * w * w;
  };
  return integrate_adaptive(g, 0.0, 1.0 / Omega, tol);
}

}  // namespace

double kramers_kronig_residual(const Layer& layer, const SpectralGrid& grid) {
  const int N = grid.Nomega;
  const double dw = grid.domega(), Om = grid.omega_max;
  VecR wi(N), xi(N);
  for (int k = 0; k < N; ++k) {
    wi[k] = grid.omega_node(k);
    xi[k] = chi_imag(layer, wi[k]);
  }
  double worst = 0.0;
  // interior nodes, away from the edges where the subtraction loses support
  for (int i = N / 16; i < N - N / 16; i += std::max(1, N / 256)) {
    const double w = wi[i];
    // PV int_0^Om  w' xi(w')/(w'^2 - w^2) dw'  with phi = w' xi/(w'+w)
    auto phi = [&](double wp) { return wp * chi_imag(layer, wp) / (wp + w); };
    const double phi0 = phi(w);
    double s = 0.0;
    for (int k = 0; k < N; ++k) {
      if (k == i) continue;
      s += dw * (wi[k] * xi[k] / (wi[k] + w) - phi0) / (wi[k] - w);
    }
    // midpoint node value of the regularized integrand: phi'(w)
    const double h = 0.5 * dw;
    s += dw * (phi(w + h) - phi(w - h)) / (2.0 * h);
    s += phi0 * std::log((Om - w) / w);
    // analytic tail of the full integrand
    auto tailf = [&](double wp) -> Complex {
      return wp * chi_imag(layer, wp) / (wp * wp - w * w);
    };
    s += tail_integral(tailf, Om, 1e-12).real();
    const double re_rec = (2.0 / pi) * s;
    const double re_dir = chi_omega(layer, w).real();
    const double denom = std::max(std::abs(re_dir), 1e-3 * layer.alpha * layer.alpha / layer.rho);
    worst = std::max(worst, std::abs(re_rec - re_dir) / denom);
  }
  return worst;
}

std::pair<SumRuleResult, SumRuleResult> chi_sum_rules(const Layer& layer,
                                                      const SpectralGrid& grid) {
  const int N = grid.Nomega;
  const double dw = grid.domega(), Om = grid.omega_max;
  const double A = layer.alpha * layer.alpha / (eps0 * layer.rho);
  double s1 = 0.0, s3 = 0.0;
  for (int k = 0; k < N; ++k) {
    const double w = grid.omega_node(k);
    const double xi = chi_imag(layer, w);
    s1 += dw * w * xi;
    s3 += dw * w * w * w * xi;
  }
  s1 += tail_integral([&](double w) -> Complex { return w * chi_imag(layer, w); }, Om, 1e-12)
            .real();
  s3 += tail_integral([&](double w) -> Complex { return w * w * w * chi_imag(layer, w); }, Om,
                      1e-12)
            .real();
  SumRuleResult r1, r2;
  r1.value = 2.0 * I * s1;
  r1.target = I * pi * A;
  r2.value = 2.0 * I * s3;
  r2.target = I * pi * A * renormalized_frequency_sq(layer);
  auto rel = [](const Complex& v, const Complex& t) {
    const double scale = std::abs(t);
    return scale > 0.0 ? std::abs(v - t) / scale : std::abs(v - t);
  };
  r1.residual = rel(r1.value, r1.target);
  r2.residual = rel(r2.value, r2.target);
  return {r1, r2};
}

double bath_auxiliary_identity_residual(const Layer& layer, Complex p, Complex p2) {
  if (!(p.real() > 0.0) || !(p2.real() > 0.0))
    throw std::domain_error("bath identity: Re p, Re p2 must be > 0");
  if (std::abs(p - p2) < 1e-12 * std::abs(p))
    throw std::invalid_argument("bath identity: p == p2 (degenerate form not implemented)");
  const double lam = layer.cutoff_lambda;
  const double pref = layer.rho * layer.rho * (2.0 / pi) * layer.gamma * lam * lam;
  const double X = 200.0 * std::max({std::abs(p), std::abs(p2), lam, layer.omega0, 1.0});
  auto f = [&](double w) -> Complex {
    const double w2 = w * w;
    return pref * w2 / ((p * p + w2) * (p2 * p2 + w2) * (w2 + lam * lam));
  };
  Complex lhs = integrate_adaptive(f, 0.0, X, 1e-14 * pref);
  lhs += pref / (3.0 * X * X * X);  // leading tail of w^2/(w^2 w^2 w^2) * w^2-type decay
  // right side: -rho^2 + rho^2 [den(p) - den(p2)]/(p^2 - p2^2); alpha-free form.
  const double rho2 = layer.rho * layer.rho;
  const Complex rhs = -rho2 + rho2 * (chi_denominator(layer, p) - chi_denominator(layer, p2)) /
                                 (p * p - p2 * p2);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  return std::abs(lhs - rhs) / scale;
}

}  // namespace polarizon
