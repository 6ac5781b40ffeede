#include "polarizon/greenfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace polarizon {

using std::numbers::pi;

namespace {

Complex layer_chi(const Layer& l, double omega) {
  if (l.alpha <= 0.0) return {0.0, 0.0};
  return (l.alpha * l.alpha / (eps0 * l.rho)) / chi_denominator(l, Complex(0.0, -omega));
}

Complex layer_k(const Layer& l, double omega) {
  return sqrt_upper(1.0 + layer_chi(l, omega)) * omega / c_light;
}

struct Propagated {
  Complex u, du;
};

Propagated advance(Complex u, Complex du, Complex k, double d) {
  const Complex c = std::cos(k * d), s = std::sin(k * d);
  return {u * c + du * s / k, -u * k * s + du * c};
}

Complex wave_sample(const std::vector<LayerWave>& ws, double z, bool deriv = false) {
  for (const LayerWave& w : ws)
    if (z >= w.z0 - 1e-14 && z <= w.z1 + 1e-14) return deriv ? w.deriv(z) : w.value(z);
  throw std::domain_error("wave_sample: z outside the profile");
}

}  // namespace

Complex LayerWave::value(double z) const {
  const Complex e = std::exp(I * k * (z - z0));
  return a * e + b / e;
}

Complex LayerWave::deriv(double z) const {
  const Complex e = std::exp(I * k * (z - z0));
  return I * k * (a * e - b / e);
}

Complex GreenFunction1D::eval(int i, int j) const {
  const int lo = std::min(i, j), hi = std::max(i, j);
  return u_minus[lo] * u_plus[hi] / wronskian;
}

Complex GreenFunction1D::eval_at(double zi, double zj) const {
  const double lo = std::min(zi, zj), hi = std::max(zi, zj);
  return wave_sample(waves_minus, lo) * wave_sample(waves_plus, hi) / wronskian;
}

MatC GreenFunction1D::matrix() const {
  MatC G(Nz, Nz);
  for (int i = 0; i < Nz; ++i)
    for (int j = 0; j < Nz; ++j) G(i, j) = eval(i, j);
  return G;
}

GreenFunction1D build_green(const MediumProfile& profile, double omega, int Nz, GreenBC bc) {
  if (!(omega > 0.0)) throw std::domain_error("build_green: omega must be > 0");
  GreenFunction1D g;
  g.omega = omega;
  g.bc = bc;
  g.L = profile.L;
  g.Nz = Nz;
  g.dz = profile.L / (Nz + 1);
  g.z.resize(Nz);
  for (int m = 0; m < Nz; ++m) g.z[m] = (m + 1) * g.dz;

  const int nl = static_cast<int>(profile.layers.size());
  std::vector<Complex> ks(nl);
  for (int i = 0; i < nl; ++i) ks[i] = layer_k(profile.layers[i], omega);
  const Complex ke = layer_k(profile.exterior, omega);

  Complex u, du;
  if (bc == GreenBC::outgoing) {
    u = 1.0;
    du = -I * ke;
  } else {
    u = 0.0;
    du = 1.0;
  }
  g.waves_minus.resize(nl);
  for (int i = 0; i < nl; ++i) {
    const Layer& l = profile.layers[i];
    LayerWave w;
    w.z0 = l.z_start;
    w.z1 = l.z_end;
    w.k = ks[i];
    w.a = 0.5 * (u + du / (I * w.k));
    w.b = 0.5 * (u - du / (I * w.k));
    g.waves_minus[i] = w;
    const Propagated p = advance(u, du, w.k, w.z1 - w.z0);
    u = p.u;
    du = p.du;
  }
  if (bc == GreenBC::outgoing) {
    u = 1.0;
    du = I * ke;
  } else {
    u = 0.0;
    du = 1.0;
  }
  g.waves_plus.resize(nl);
  for (int i = nl - 1; i >= 0; --i) {
    const Layer& l = profile.layers[i];
    const Propagated p = advance(u, du, ks[i], l.z_start - l.z_end);
    LayerWave w;
    w.z0 = l.z_start;
    w.z1 = l.z_end;
    w.k = ks[i];
    w.a = 0.5 * (p.u + p.du / (I * w.k));
    w.b = 0.5 * (p.u - p.du / (I * w.k));
    g.waves_plus[i] = w;
    u = p.u;
    du = p.du;
  }

  g.u_minus.resize(Nz);
  g.u_plus.resize(Nz);
  g.du_minus.resize(Nz);
  g.du_plus.resize(Nz);
  int li = 0;
  for (int m = 0; m < Nz; ++m) {
    const double z = g.z[m];
    while (li + 1 < nl && z > profile.layers[li].z_end) ++li;
    g.u_minus[m] = g.waves_minus[li].value(z);
    g.du_minus[m] = g.waves_minus[li].deriv(z);
    g.u_plus[m] = g.waves_plus[li].value(z);
    g.du_plus[m] = g.waves_plus[li].deriv(z);
  }
  VecC W(Nz);
  for (int m = 0; m < Nz; ++m)
    W[m] = g.u_minus[m] * g.du_plus[m] - g.du_minus[m] * g.u_plus[m];
  g.wronskian = W[0];
  double dev = 0.0;
  for (int m = 0; m < Nz; ++m) dev = std::max(dev, std::abs(W[m] - W[0]) / std::abs(W[0]));
  g.wronskian_dev = dev;
  return g;
}

MatC build_green_dense(const MediumProfile& profile, double omega, int Nz, GreenBC bc) {
  const double dz = profile.L / (Nz + 1);
  MatC K = MatC::Zero(Nz, Nz);
  for (int m = 0; m < Nz; ++m) {
    const double z = (m + 1) * dz;
    const Layer& l = profile.sample_at(z);
    const Complex eps = 1.0 + layer_chi(l, omega);
    K(m, m) = -2.0 / (dz * dz) + omega * omega / (c_light * c_light) * eps;
    if (m > 0) K(m, m - 1) = 1.0 / (dz * dz);
    if (m + 1 < Nz) K(m, m + 1) = 1.0 / (dz * dz);
  }
  if (bc == GreenBC::outgoing) {
    // Ghost at z = 0 eliminated with the exact interface relation between the
    // exterior exponential and the first in-layer node.
    const Complex ke = layer_k(profile.exterior, omega);
    const Complex k1 = layer_k(profile.layers.front(), omega);
    const Complex kn = layer_k(profile.layers.back(), omega);
    const Complex rL =
        std::exp(I * ke * dz) / (std::cos(k1 * dz) - I * (ke / k1) * std::sin(k1 * dz));
    const Complex rR =
        std::exp(I * ke * dz) / (std::cos(kn * dz) - I * (ke / kn) * std::sin(kn * dz));
    K(0, 0) += rL / (dz * dz);
    K(Nz - 1, Nz - 1) += rR / (dz * dz);
  }
  MatC G = K.partialPivLu().solve(MatC::Identity(Nz, Nz));
  G /= dz;
  return G;
}

double reciprocity_residual(const MatC& G, int n_pairs, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(G.rows()) - 1);
  const double scale = G.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int s = 0; s < n_pairs; ++s) {
    const int i = pick(rng), j = pick(rng);
    worst = std::max(worst, std::abs(G(i, j) - G(j, i)) / scale);
  }
  return worst;
}

DefiningResidual defining_residual(const GreenFunction1D& g, const MediumProfile& profile) {
  const int Nz = g.Nz;
  const double dz = g.dz;
  const MatC G = g.matrix();
  VecC eps(Nz);
  for (int m = 0; m < Nz; ++m)
    eps[m] = 1.0 + layer_chi(profile.sample_at(g.z[m]), g.omega);
  const double w2 = g.omega * g.omega / (c_light * c_light);
  double direct = 0.0, adjoint = 0.0;
  for (int j = Nz / 4; j <= 3 * Nz / 4; j += std::max(1, Nz / 16)) {
    for (int i = 1; i + 1 < Nz; ++i) {
      const Complex r = (G(i - 1, j) - 2.0 * G(i, j) + G(i + 1, j)) / (dz * dz) +
                        w2 * eps[i] * G(i, j) - (i == j ? 1.0 / dz : 0.0);
      direct = std::max(direct, std::abs(r) * dz);
      const Complex ra = (G(j, i - 1) - 2.0 * G(j, i) + G(j, i + 1)) / (dz * dz) +
                         w2 * eps[i] * G(j, i) - (i == j ? 1.0 / dz : 0.0);
      adjoint = std::max(adjoint, std::abs(ra) * dz);
    }
  }
  return {direct, adjoint};
}

// ---------------------------------------------------------------- optical ---

namespace {

// w(z) = a e^{i k (z - z0)} + b e^{-i k (z - z0)}
struct WaveSegment {
  Complex k, a, b;
  double z0;
};

WaveSegment conj_wave(const LayerWave& w) {
  return {std::conj(w.k), std::conj(w.b), std::conj(w.a), w.z0};
}
WaveSegment plain_wave(const LayerWave& w) { return {w.k, w.a, w.b, w.z0}; }

Complex phase_integral(Complex mu, double za, double zb) {
  if (std::abs(mu) * (zb - za) < 1e-9) {
    return (zb - za) * std::exp(I * mu * 0.5 * (za + zb));
  }
  return (std::exp(I * mu * zb) - std::exp(I * mu * za)) / (I * mu);
}

Complex product_integral(const WaveSegment& w1, const WaveSegment& w2, double za, double zb) {
  Complex s = 0.0;
  const Complex cs[2] = {w1.a, w1.b};
  const Complex ds[2] = {w2.a, w2.b};
  const Complex mu1[2] = {w1.k, -w1.k};
  const Complex mu2[2] = {w2.k, -w2.k};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex mu = mu1[i] + mu2[j];
      const Complex phase = std::exp(-I * (mu1[i] * w1.z0 + mu2[j] * w2.z0));
      s += cs[i] * ds[j] * phase * phase_integral(mu, za, zb);
    }
  return s;
}

}  // namespace

double optical_theorem_residual(const MediumProfile& profile, double omega, double omega2,
                                int n_pairs) {
  const int Nz = 31;  // sampling resolution for (z, z') pairs only
  const GreenFunction1D g1 = build_green(profile, omega, Nz, GreenBC::outgoing);
  const GreenFunction1D g2 = build_green(profile, omega2, Nz, GreenBC::outgoing);
  const int nl = static_cast<int>(profile.layers.size());

  const Complex chie1 = layer_chi(profile.exterior, omega);
  const Complex chie2 = layer_chi(profile.exterior, omega2);
  const Complex ke1 = layer_k(profile.exterior, omega);
  const Complex ke2 = layer_k(profile.exterior, omega2);
  const Complex aext = ke2 - std::conj(ke1);
  if (!(aext.imag() > 0.0))
    throw std::runtime_error("optical theorem: exterior must be absorptive (Im k_ext > 0)");
  const Complex ext_int = I / aext;

  auto um1 = [&](double z) { return std::conj(wave_sample(g1.waves_minus, z)); };
  auto up1 = [&](double z) { return std::conj(wave_sample(g1.waves_plus, z)); };
  auto um2 = [&](double z) { return wave_sample(g2.waves_minus, z); };
  auto up2 = [&](double z) { return wave_sample(g2.waves_plus, z); };
  const Complex W1c = std::conj(g1.wronskian), W2 = g2.wronskian;

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(1, Nz - 2);
  double worst = 0.0;
  for (int s = 0; s < n_pairs; ++s) {
    int ia = pick(rng), ib = pick(rng);
    if (ia == ib) ib = (ib + 3) % (Nz - 2) + 1;
    const double za = g1.z[std::min(ia, ib)], zb = g1.z[std::max(ia, ib)];

    Complex lhs = 0.0, GepsG = 0.0;
    for (int li = 0; li < nl; ++li) {
      const Layer& l = profile.layers[li];
      const Complex chi1 = layer_chi(l, omega), chi2 = layer_chi(l, omega2);
      std::vector<double> cuts = {l.z_start, l.z_end};
      for (double c : {za, zb})
        if (c > l.z_start + 1e-15 && c < l.z_end - 1e-15) cuts.push_back(c);
      std::sort(cuts.begin(), cuts.end());
      for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double s0 = cuts[seg], s1 = cuts[seg + 1];
        const double mid = 0.5 * (s0 + s1);
        WaveSegment f1, f2;
        Complex pre;
        if (mid < za) {
          f1 = conj_wave(g1.waves_minus[li]);
          f2 = plain_wave(g2.waves_minus[li]);
          pre = up1(za) * up2(zb);
        } else if (mid < zb) {
          f1 = conj_wave(g1.waves_plus[li]);
          f2 = plain_wave(g2.waves_minus[li]);
          pre = um1(za) * up2(zb);
        } else {
          f1 = conj_wave(g1.waves_plus[li]);
          f2 = plain_wave(g2.waves_plus[li]);
          pre = um1(za) * um2(zb);
        }
        const Complex contrib = pre * product_integral(f1, f2, s0, s1) / (W1c * W2);
        lhs += (std::conj(chi1) - chi2) * contrib;
        GepsG += (1.0 + chi2) * contrib;
      }
    }
    // exterior tails: pure exponentials beyond [0, L]
    const Complex right = um1(za) * um2(zb) * up1(profile.L) * up2(profile.L) * ext_int /
                          (W1c * W2);
    const Complex left = up1(za) * up2(zb) * um1(0.0) * um2(0.0) * ext_int / (W1c * W2);
    lhs += (std::conj(chie1) - chie2) * (right + left);
    GepsG += (1.0 + chie2) * (right + left);

    const double w1 = omega, w2v = omega2;
    const double c2 = c_light * c_light;
    const Complex G1ab = std::conj(g1.eval_at(za, zb));
    const Complex G2ab = g2.eval_at(za, zb);
    const Complex I2 = (w2v * w2v / c2) * GepsG - G1ab;
    const Complex rhs = -(c2 / (w1 * w1 * w2v * w2v)) *
                        (w1 * w1 * G1ab - w2v * w2v * G2ab + (w1 * w1 - w2v * w2v) * I2);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

// -------------------------------------------------------------- sum rules ---

namespace {

// Target kernels per rule on the interior-node grid (delta -> 1[i==j]/dz).
MatC sum_rule_target(SumRuleId rule, const MediumProfile& profile, const VecR& z, double dz) {
  const int Nz = static_cast<int>(z.size());
  MatC T = MatC::Zero(Nz, Nz);
  const double c2 = c_light * c_light;
  switch (rule) {
    case SumRuleId::A4:
      for (int i = 0; i < Nz; ++i) T(i, i) = -I * pi * c2 / dz;
      break;
    case SumRuleId::A5:
      for (int i = 0; i < Nz; ++i) {
        const Layer& l = profile.sample_at(z[i]);
        T(i, i) = I * pi * c2 * l.alpha * l.alpha / (eps0 * l.rho) / dz;
      }
      break;
    case SumRuleId::C8a:
      break;  // zero
    case SumRuleId::C8b:
      for (int i = 0; i < Nz; ++i) {
        const Layer& l = profile.sample_at(z[i]);
        const double A = l.alpha * l.alpha / (eps0 * l.rho);
        T(i, i) = -I * pi * c2 * A * A / dz;
      }
      break;
    case SumRuleId::C6: {
      // -i pi c^4 [ (-d2 delta)_{ij} + mu0 alpha^2/rho delta_ij ] with the
      // second-difference column for the curl-curl-of-delta reduction.
      for (int i = 0; i < Nz; ++i) {
        const Layer& l = profile.sample_at(z[i]);
        T(i, i) = -I * pi * c2 * c2 * (2.0 / (dz * dz) + mu0 * l.alpha * l.alpha / l.rho) / dz;
        if (i > 0) T(i, i - 1) = -I * pi * c2 * c2 * (-1.0 / (dz * dz)) / dz;
        if (i + 1 < Nz) T(i, i + 1) = -I * pi * c2 * c2 * (-1.0 / (dz * dz)) / dz;
      }
      break;
    }
  }
  return T;
}

MatC c6_arc_value(const MediumProfile& profile, int Nz, double R, int n_theta) {
  // -(contour integral over the upper arc |omega| = R) of
  //   omega^3 [ G_cav(omega) - c^2/(omega^2 dz) I ]
  const double dz = profile.L / (Nz + 1);
  MatC acc = MatC::Zero(Nz, Nz);
  for (int t = 0; t < n_theta; ++t) {
    const double th = pi * (t + 0.5) / n_theta;
    const Complex w = R * std::exp(I * th);
    const Complex p = -I * w;  // Re p > 0 on the upper arc
    MatC K = MatC::Zero(Nz, Nz);
    for (int m = 0; m < Nz; ++m) {
      const Layer& l = profile.sample_at((m + 1) * dz);
      const Complex eps =
          1.0 + (l.alpha > 0.0 ? (l.alpha * l.alpha / (eps0 * l.rho)) / chi_denominator(l, p)
                               : Complex(0.0));
      K(m, m) = -2.0 / (dz * dz) + (w * w / (c_light * c_light)) * eps;
      if (m > 0) K(m, m - 1) = 1.0 / (dz * dz);
      if (m + 1 < Nz) K(m, m + 1) = 1.0 / (dz * dz);
    }
    MatC G = K.partialPivLu().solve(MatC::Identity(Nz, Nz)) / dz;
    const double c2 = c_light * c_light;
    for (int m = 0; m < Nz; ++m) G(m, m) -= c2 / (w * w * dz);
    const Complex meas = I * R * std::exp(I * th) * (pi / n_theta);
    acc -= meas * (w * w * w) * G;
  }
  return acc;
}

}  // namespace

SumRuleReport green_sum_rule(const MediumProfile& profile, SumRuleId rule, int Nz, int Nomega,
                             double omega_max, bool with_table) {
  SumRuleReport rep;
  rep.rule = rule;
  rep.Nz = Nz;
  const double dz = profile.L / (Nz + 1);
  VecR z(Nz);
  for (int m = 0; m < Nz; ++m) z[m] = (m + 1) * dz;
  const MatC T = sum_rule_target(rule, profile, z, dz);

  if (rule == SumRuleId::C6) {
    const double R = omega_max > 0.0 ? omega_max : 8.0 * c_light / dz;
    rep.omega_max = R;
    const MatC V = c6_arc_value(profile, Nz, R, 96);
    double diag = 0.0, off = 0.0, dscale = 0.0;
    for (int i = 0; i < Nz; ++i) dscale = std::max(dscale, std::abs(T(i, i)));
    for (int i = 0; i < Nz; ++i) {
      diag = std::max(diag, std::abs(V(i, i) - T(i, i)) / std::abs(T(i, i)));
      for (int j = 0; j < Nz; ++j)
        if (i != j) off = std::max(off, std::abs(V(i, j) - T(i, j)) / dscale);
    }
    rep.diag_residual = diag;
    rep.offdiag_residual = off;
    if (with_table) {
      for (double Rt : {2.0 / dz, 4.0 / dz, 8.0 / dz, 16.0 / dz}) {
        const MatC Vt = c6_arc_value(profile, Nz, Rt * c_light, 96);
        double d = 0.0;
        for (int i = 0; i < Nz; ++i)
          d = std::max(d, std::abs(Vt(i, i) - T(i, i)) / std::abs(T(i, i)));
        rep.convergence.push_back({Rt * c_light, d});
      }
    }
    return rep;
  }

  // A4 / A5 / C8a / C8b: real-axis band quadrature folded onto omega > 0,
  // with the band matched to the grid Nyquist frequency so the free-field
  // part integrates to the discrete delta exactly on the nodes.
  const double Om = omega_max > 0.0 ? omega_max : pi * c_light / dz;
  rep.omega_max = Om;
  auto band_value = [&](double OmB) -> MatC {
    const int Nw = Nomega;
    const double dw = OmB / Nw;
    MatC acc = MatC::Zero(Nz, Nz);
    for (int kk = 0; kk < Nw; ++kk) {
      const double w = (kk + 0.5) * dw;
      const GreenFunction1D g = build_green(profile, w, Nz, GreenBC::outgoing);
      const MatC G = g.matrix();
      MatC F;
      switch (rule) {
        case SumRuleId::A4:
          F = w * G;
          break;
        case SumRuleId::A5: {
          F = MatC(Nz, Nz);
          for (int i = 0; i < Nz; ++i)
            for (int j = 0; j < Nz; ++j)
              F(i, j) = w * w * w * G(i, j) * layer_chi(profile.sample_at(z[j]), w);
          break;
        }
        case SumRuleId::C8a:
        case SumRuleId::C8b: {
          const double wp = (rule == SumRuleId::C8a) ? w * w * w : w * w * w * w * w;
          F = MatC(Nz, Nz);
          for (int i = 0; i < Nz; ++i)
            for (int j = 0; j < Nz; ++j)
              F(i, j) = wp * layer_chi(profile.sample_at(z[i]), w) * G(i, j) *
                        layer_chi(profile.sample_at(z[j]), w);
          break;
        }
        default:
          break;
      }
      // fold: integrand(-w) = conj(integrand(w)) for every rule here
      acc += dw * 2.0 * I * F.imag().cast<Complex>();
    }
    return acc;
  };

  const MatC V = band_value(Om);
  double dscale = 0.0;
  for (int i = 0; i < Nz; ++i) dscale = std::max(dscale, std::abs(T(i, i)));
  if (rule == SumRuleId::C8a) {
    // measure against the C8b diagonal scale
    const MatC T8b = sum_rule_target(SumRuleId::C8b, profile, z, dz);
    for (int i = 0; i < Nz; ++i) dscale = std::max(dscale, std::abs(T8b(i, i)));
  }
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < Nz; ++i) {
    if (rule == SumRuleId::C8a)
      diag = std::max(diag, std::abs(V(i, i)) / dscale);
    else
      diag = std::max(diag, std::abs(V(i, i) - T(i, i)) / std::abs(T(i, i)));
    for (int j = 0; j < Nz; ++j)
      if (i != j) off = std::max(off, std::abs(V(i, j) - T(i, j)) / dscale);
  }
  rep.diag_residual = diag;
  rep.offdiag_residual = off;
  if (with_table) {
    // medium-correction residual vs band width: quadrature of the
    // medium-minus-free kernel, which integrates to zero for A4/A5/C8b.
    for (double f : {0.25, 0.5, 0.75, 1.0}) {
      const int Nw = Nomega;
      const double OmB = f * Om, dw = OmB / Nw;
      Complex acc = 0.0;
      const int i0 = Nz / 2;
      for (int kk = 0; kk < Nw; ++kk) {
        const double w = (kk + 0.5) * dw;
        const GreenFunction1D g = build_green(profile, w, Nz, GreenBC::outgoing);
        const Complex Gd = g.eval(i0, i0);
        Complex f_med, f_free;
        const Complex Gfree = c_light / (2.0 * I * w);
        const Layer& l = profile.sample_at(z[i0]);
        const double A = l.alpha * l.alpha / (eps0 * l.rho);
        switch (rule) {
          case SumRuleId::A4:
            f_med = w * Gd;
            f_free = w * Gfree;
            break;
          case SumRuleId::A5:
            f_med = w * w * w * Gd * layer_chi(l, w);
            f_free = w * w * w * Gfree * (-A / (w * w));
            break;
          case SumRuleId::C8a:
          case SumRuleId::C8b: {
            const double wp = (rule == SumRuleId::C8a) ? w * w * w : w * w * w * w * w;
            f_med = wp * layer_chi(l, w) * Gd * layer_chi(l, w);
            f_free = wp * (-A / (w * w)) * Gfree * (-A / (w * w));
            break;
          }
          default:
            break;
        }
        acc += dw * 2.0 * I * (f_med - f_free).imag();
      }
      rep.convergence.push_back({OmB, std::abs(acc) / (std::abs(T(i0, i0)) + dscale * 1e-12)});
    }
  }
  return rep;
}

}  // namespace polarizon
