#include "cfprop/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfprop {

void MorseConfig::validate() const {
  if (!(depth > 0.0) || !(width > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("MorseConfig: depth, width and mu must be positive");
  }
}

double MorseConfig::harmonic_frequency() const {
  return width * std::sqrt(2.0 * depth / mu);
}

RealVector PotentialModel::potential_at(double t) const {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("potential_at: time must be finite");
  }
  if (sampler) {
    return sampler(t);
  }
  if (envelope) {
    return static_part + envelope(t) * field_profile;
  }
  return static_part;
}

void PotentialModel::derive_field_profile(const SpatialGrid& grid, const FourierTransform& fft,
                                          FftCounter& counter) {
  field_profile_deriv = spectral_derivative(field_profile, grid, fft, counter);
  derivative_is_spectral = true;
}

PotentialModel walker_preston_model(const MorseConfig& cfg, const SpatialGrid& grid) {
  cfg.validate();
  PotentialModel m;
  m.mu = cfg.mu;
  m.static_part.resize(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    const double e = 1.0 - std::exp(-cfg.width * grid.points[j]);
    m.static_part[j] = cfg.depth * e * e;
  }
  m.field_profile = grid.points;
  m.field_profile_deriv = RealVector::Ones(grid.n_points);
  const double a = cfg.amplitude;
  const double w = cfg.omega;
  m.envelope = [a, w](double t) { return a * std::cos(w * t); };
  return m;
}

WaveVector morse_ground_state(const MorseConfig& cfg, const SpatialGrid& grid) {
  cfg.validate();
  const double w0 = cfg.harmonic_frequency();
  const double gamma = 2.0 * cfg.depth / w0;
  // The raw amplitudes scale as exp(-gamma) and underflow long before the
  // state stops being normalizable, so work with log amplitudes shifted by
  // their maximum.
  RealVector log_amp(grid.n_points);
  double peak = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.n_points; ++j) {
    const double x = grid.points[j];
    log_amp[j] = -(gamma - 0.5) * cfg.width * x - gamma * std::exp(-cfg.width * x);
    if (std::isfinite(log_amp[j])) peak = std::max(peak, log_amp[j]);
  }
  if (!std::isfinite(peak)) {
    throw std::domain_error("morse_ground_state: state is not normalizable on this grid");
  }
  WaveVector phi(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    phi[j] = Complex(std::isfinite(log_amp[j]) ? std::exp(log_amp[j] - peak) : 0.0, 0.0);
  }
  const double nrm = phi.norm();
  if (!(nrm > 1e-8)) {
    throw std::domain_error("morse_ground_state: state is not normalizable on this grid");
  }
  phi /= nrm;
  return phi;
}

namespace {

RealVector derivative_combination(const PotentialModel& model, double t_k, double tau,
                                  const QuadratureRule& rule, const RealVector& alpha2_row) {
  if (!model.has_derivative()) {
    throw std::runtime_error(
        "modified_potential: model does not supply a field-profile derivative");
  }
  double g = 0.0;
  for (int l = 0; l < rule.size(); ++l) {
    g += alpha2_row[l] * model.envelope_at(t_k + rule.nodes[l] * tau);
  }
  return g * (*model.field_profile_deriv);
}

}  // namespace

RealVector modified_potential(const PotentialModel& model, double t_k, double tau,
                              const QuadratureRule& rule, const RealVector& alpha2_row,
                              double y) {
  if (!(tau != 0.0)) {
    throw std::invalid_argument("modified_potential: tau must be nonzero");
  }
  const RealVector s = derivative_combination(model, t_k, tau, rule, alpha2_row);
  return (-(y / model.mu)) * s.array().square().matrix();
}

RealVector modified_potential(const PotentialModel& model, double t_k, double tau,
                              const QuadratureRule& rule, double y) {
  const AlphaWeights w = alpha_weights_for(rule);
  return modified_potential(model, t_k, tau, rule, w.w.row(1).transpose(), y);
}

RealVector modified_potential_sampled(const PotentialModel& model, double t_k, double tau,
                                      const QuadratureRule& rule, const RealVector& alpha2_row,
                                      const SpatialGrid& grid, const FourierTransform& fft,
                                      FftCounter& counter, double y) {
  RealVector s = RealVector::Zero(grid.n_points);
  for (int l = 0; l < rule.size(); ++l) {
    const RealVector v = model.potential_at(t_k + rule.nodes[l] * tau);
    s += alpha2_row[l] * spectral_derivative(v, grid, fft, counter);
  }
  return (-(y / model.mu)) * s.array().square().matrix();
}

}  // namespace cfprop
