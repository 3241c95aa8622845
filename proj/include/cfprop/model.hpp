#pragma once

#include <functional>
#include <optional>

#include "cfprop/quadrature.hpp"
#include "cfprop/spectral.hpp"

namespace cfprop {

/// Morse oscillator driven by a cosine field, all in atomic units.
struct MorseConfig {
  double depth = 0.2251;       // D
  double width = 1.1741;       // alpha
  double mu = 1745.0;          // reduced mass
  double amplitude = 0.011025; // A
  double omega = 0.01787;      // field frequency

  void validate() const;
  double harmonic_frequency() const;  // w0 = alpha * sqrt(2 D / mu)
};

/// Time-dependent potential V(x, t) = V_static(x) + f(t) * V_field(x).
/// A fully general V(x, t) can be supplied through `sampler`, which
/// overrides the separable parts for sampling; the modified potential then
/// needs numerically differentiated snapshots (see
/// modified_potential_sampled).
struct PotentialModel {
  RealVector static_part;
  RealVector field_profile;
  std::optional<RealVector> field_profile_deriv;
  std::function<double(double)> envelope;  // f(t); absent means f == 0
  double mu = 1.0;
  bool derivative_is_spectral = false;  // set by the spectral fallback
  std::function<RealVector(double)> sampler;

  bool separable() const { return !sampler; }
  bool has_derivative() const { return field_profile_deriv.has_value(); }
  double envelope_at(double t) const { return envelope ? envelope(t) : 0.0; }

  /// V(., t) on the grid.
  RealVector potential_at(double t) const;

  /// Fills in field_profile_deriv by spectral differentiation (one FFT
  /// pair, done once). Only sensible for smooth periodic field profiles.
  void derive_field_profile(const SpatialGrid& grid, const FourierTransform& fft,
                            FftCounter& counter);
};

/// Walker-Preston instance: Morse potential plus f(t) = A cos(omega t)
/// coupled through V_field = x (analytic derivative 1).
PotentialModel walker_preston_model(const MorseConfig& cfg, const SpatialGrid& grid);

/// Normalized ground state of the Morse potential sampled on the grid.
WaveVector morse_ground_state(const MorseConfig& cfg, const SpatialGrid& grid);

/// Modified potential folded into the outer stages of the sixth-order
/// two-exponential scheme:
///   Vtilde = -(y / mu) * (sum_l W2_l V'(t_k + c_l tau))^2,
/// which for the external-field form reduces to
///   -(5 y / (3 mu)) (f3 - f1)^2 V_field'^2 on the GL6 rule.
/// `alpha2_row` is row 2 of the alpha weights of `rule`.
RealVector modified_potential(const PotentialModel& model, double t_k, double tau,
                              const QuadratureRule& rule, const RealVector& alpha2_row,
                              double y = 1.0 / 43200.0);

/// Convenience overload computing the alpha weights internally.
RealVector modified_potential(const PotentialModel& model, double t_k, double tau,
                              const QuadratureRule& rule, double y = 1.0 / 43200.0);

/// General-sampler path: V' snapshots by spectral differentiation at every
/// node (costs one FFT pair per node, per call).
RealVector modified_potential_sampled(const PotentialModel& model, double t_k, double tau,
                                      const QuadratureRule& rule, const RealVector& alpha2_row,
                                      const SpatialGrid& grid, const FourierTransform& fft,
                                      FftCounter& counter, double y = 1.0 / 43200.0);

}  // namespace cfprop
