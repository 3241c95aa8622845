#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cfprop/krylov.hpp"
#include "cfprop/model.hpp"
#include "cfprop/quadrature.hpp"
#include "cfprop/spectral.hpp"

namespace cfprop {

/// One exponential factor exp(-i tau (a T + sum_l w_l V_l + mw tau^2 Vt)).
/// Diagonal stages have kinetic_coeff exactly zero and cost no FFTs.
struct Stage {
  double kinetic_coeff = 0.0;
  RealVector potential_weights;
  double modified_weight = 0.0;           // multiplier on the modified potential
  std::array<double, 3> x{0.0, 0.0, 0.0}; // canonical alpha-space coefficients
};

/// A propagator as an ordered list of stages, applied first-to-last
/// (i.e. right-to-left in the written product). Stages are stored in
/// alpha-space and lowered onto the quadrature samples at construction.
struct SchemeTable {
  std::string name;
  int order = 0;
  bool requires_derivative = false;
  bool time_symmetric = false;
  QuadratureRule rule;
  AlphaWeights alpha_weights;
  std::vector<Stage> stages;

  int exponentials_per_step() const;  // stages with a kinetic part
};

/// Builtin propagators, keyed by CLI name:
///   midpoint      exponential midpoint, order 2, 1 exponential
///   midpoint-avg  averaged one-exponential method, order 2
///   cf4-2         order 4, 2 exponentials + 2 diagonal stages
///   cf6-2d        order 6, same stages plus the modified potential
///   cf6-3         order 6, 3 exponentials, no derivatives
///   cf6-5alv      order 6 reference method with 5 exponentials
std::vector<std::string> builtin_scheme_names();
SchemeTable builtin_scheme(std::string_view name);
SchemeTable builtin_scheme(std::string_view name, const QuadratureRule& rule);

struct StepStats {
  int krylov_cap_hits = 0;
  int max_m_used = 0;
  std::int64_t total_m = 0;
  double max_est_err = 0.0;

  void merge(const KrylovStats& k);
};

/// One step of length tau from t_k. Diagonal stages are exact pointwise
/// phases; kinetic stages go through the adaptive Krylov exponential.
WaveVector step(const SchemeTable& scheme, const WaveVector& u, double t_k, double tau,
                const PotentialModel& model, const KineticOperator& kinetic,
                const KrylovConfig& kcfg, FftCounter& counter, StepStats* stats = nullptr,
                LanczosProcess* workspace = nullptr);

struct PropagationResult {
  WaveVector state;
  std::int64_t fft_pairs = 0;
  StepStats stats;
};

/// n_steps uniform steps from t0 to t_f with exact FFT-pair accounting.
PropagationResult propagate(const SchemeTable& scheme, const WaveVector& u0, double t0,
                            double t_f, int n_steps, const PotentialModel& model,
                            const KineticOperator& kinetic, const KrylovConfig& kcfg);

}  // namespace cfprop
