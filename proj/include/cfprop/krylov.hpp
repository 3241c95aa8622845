#pragma once

#include <functional>

#include <Eigen/Dense>

#include "cfprop/spectral.hpp"

namespace cfprop {

/// Action of a Hermitian operator: out = H * in.
using HermitianAction = std::function<void(const WaveVector&, WaveVector&)>;

struct KrylovConfig {
  double tol = 1e-12;
  int m_max = 10;

  void validate() const;
};

struct KrylovStats {
  int m_used = 0;
  double est_err = 0.0;
  bool hit_cap = false;        // estimate still above tol at m_max
  bool exact_breakdown = false;
};

/// Lanczos tridiagonalization of tau*H started from a unit vector.
/// After m expansions the state holds alpha_1..alpha_m, beta_2..beta_m,
/// the residual norm beta_{m+1} and the orthonormal basis v_1..v_m (plus
/// the next start vector unless a happy breakdown occurred). tau is folded
/// into the recurrence, so T_m already carries it.
class LanczosProcess {
 public:
  LanczosProcess(int n, int m_max);

  void seed(const WaveVector& u);

  /// One Lanczos iteration: y = tau*H v_m - beta_m v_{m-1}, then
  /// orthogonalize against v_m and normalize. Returns false on a happy
  /// breakdown (beta_{m+1} < 1e-14), in which case the subspace is exact
  /// and no further expansion is possible.
  bool expand(const HermitianAction& apply_h, double tau);

  int dim() const { return m_; }
  int capacity() const { return capacity_; }
  bool exact() const { return exact_; }
  double beta_next() const { return beta_next_; }
  double diag(int i) const { return alpha_[i]; }
  double offdiag(int i) const { return beta_[i]; }  // beta_{i+2}, i = 0..m-2
  WaveVector basis_vector(int i) const { return basis_.col(i); }

  /// err = beta_{m+1} * (2/3 |e_m^T exp(-i T_m/2) e_1| +
  ///                     1/6 |e_m^T exp(-i T_m) e_1|); zero after breakdown.
  double error_estimate() const;

  /// scale * V_m exp(-i T_m) e_1.
  WaveVector assemble(double scale) const;

 private:
  void decompose() const;  // eigendecomposition of T_m, cached per dim

  int n_ = 0;
  int capacity_ = 0;
  int m_ = 0;
  bool exact_ = false;
  double beta_next_ = 0.0;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  Eigen::MatrixXcd basis_;  // n x (m_max + 1)
  WaveVector work_;

  mutable int decomposed_dim_ = 0;
  mutable Eigen::VectorXd eigenvalues_;
  mutable Eigen::MatrixXd eigenvectors_;
};

/// Adaptive Krylov approximation of exp(-i tau H) u per the Lanczos
/// procedure: expand until the error estimate drops below cfg.tol or
/// cfg.m_max is reached (reported through stats, not an error). The input
/// norm is preserved; a non-unit input is normalized internally and the
/// output rescaled.
WaveVector expm_action(const HermitianAction& apply_h, const WaveVector& u, double tau,
                       const KrylovConfig& cfg, KrylovStats* stats = nullptr,
                       LanczosProcess* workspace = nullptr);

}  // namespace cfprop
