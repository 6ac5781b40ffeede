#include "polarizon/medium.hpp"

#include <cmath>
#include <numbers>

namespace polarizon {

void Layer::validate(const std::string& where) const {
  if (!(rho > 0.0)) throw std::invalid_argument(where + ": rho must be > 0");
  if (!(omega0 > 0.0)) throw std::invalid_argument(where + ": omega0 must be > 0");
  if (alpha < 0.0) throw std::invalid_argument(where + ": alpha must be >= 0");
  if (!(gamma >= gamma_min))
    throw std::invalid_argument(where + ": gamma below gamma_min=" + std::to_string(gamma_min) +
                                " (the model requires a strictly absorptive medium)");
  if (!(cutoff_lambda > 0.0)) throw std::invalid_argument(where + ": lambda must be > 0");
  if (z_end <= z_start) throw std::invalid_argument(where + ": z_end must exceed z_start");
}

void MediumProfile::validate() const {
  if (layers.empty()) throw std::invalid_argument("profile: no layers");
  double z = 0.0;
  for (size_t i = 0; i < layers.size(); ++i) {
    layers[i].validate("layer " + std::to_string(i));
    if (std::abs(layers[i].z_start - z) > 1e-12 * std::max(1.0, L))
      throw std::invalid_argument("layer " + std::to_string(i) + ": gap or overlap at z=" +
                                  std::to_string(layers[i].z_start));
    z = layers[i].z_end;
  }
  if (std::abs(z - L) > 1e-12 * std::max(1.0, L))
    throw std::invalid_argument("layers do not tile [0, L]");
  Layer ext = exterior;
  ext.z_start = -1.0;
  ext.z_end = 0.0;
  ext.validate("exterior");
}

const Layer& MediumProfile::sample_at(double z) const {
  if (z < 0.0 || z > L) throw std::domain_error("sample_at: z outside [0, L]");
  for (const Layer& l : layers) {
    if (z >= l.z_start && z < l.z_end) return l;
  }
  return layers.back();  // z == L
}

bool MediumProfile::is_homogeneous() const {
  for (const Layer& l : layers) {
    const Layer& a = layers.front();
    if (l.alpha != a.alpha || l.rho != a.rho || l.omega0 != a.omega0 ||
        l.gamma != a.gamma || l.cutoff_lambda != a.cutoff_lambda)
      return false;
  }
  return true;
}

VecR SpectralGrid::omega_nodes() const {
  VecR w(Nomega);
  for (int k = 0; k < Nomega; ++k) w[k] = omega_node(k);
  return w;
}

VecR SpectralGrid::omega_weights() const {
  return VecR::Constant(Nomega, domega());
}

void SpectralGrid::validate() const {
  if (Nz < 2) throw std::invalid_argument("grid: Nz must be >= 2");
  if (Nomega < 8) throw std::invalid_argument("grid: Nomega must be >= 8");
  if (!(omega_max > 0.0)) throw std::invalid_argument("grid: omega_max must be > 0");
}

double coupling_v(const Layer& layer, double omega) {
  const double L2 = layer.cutoff_lambda * layer.cutoff_lambda;
  return layer.rho *
         std::sqrt((2.0 / std::numbers::pi) * layer.gamma * L2 / (omega * omega + L2));
}

double renormalized_frequency_sq(const Layer& layer) {
  return layer.omega0 * layer.omega0 + layer.gamma * layer.cutoff_lambda;
}

double renormalized_frequency_sq_band(const Layer& layer, double omega_max) {
  const double shift = layer.gamma * layer.cutoff_lambda * (2.0 / std::numbers::pi) *
                       std::atan(omega_max / layer.cutoff_lambda);
  return layer.omega0 * layer.omega0 + shift;
}

double bath_weight_total(const Layer& layer) {
  return layer.rho * layer.rho * layer.gamma * layer.cutoff_lambda;
}

double bath_weight_tail(const Layer& layer, double omega_max) {
  return bath_weight_total(layer) *
         (1.0 - (2.0 / std::numbers::pi) * std::atan(omega_max / layer.cutoff_lambda));
}

}  // namespace polarizon
