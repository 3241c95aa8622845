#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cfprop/model.hpp"
#include "cfprop/schemes.hpp"
#include "cfprop/spectral.hpp"

namespace cfprop::oracle {

/// Dense Hermitian matrix for reference computations (n <= 512).
class DenseHermitian {
 public:
  explicit DenseHermitian(Eigen::MatrixXcd m);

  const Eigen::MatrixXcd& matrix() const { return m_; }
  int size() const { return static_cast<int>(m_.rows()); }

 private:
  Eigen::MatrixXcd m_;
};

/// exp(-i tau H) u by full eigendecomposition.
WaveVector dense_expm_action(const DenseHermitian& h, const WaveVector& u, double tau);

/// Kinetic matrix assembled column by column from the spectral operator.
Eigen::MatrixXcd dense_kinetic_matrix(const KineticOperator& kinetic);

/// T + diag(V(., t)).
Eigen::MatrixXcd dense_hamiltonian(const Eigen::MatrixXcd& kinetic_matrix,
                                   const PotentialModel& model, double t);

/// The anti-Hermitian building blocks of the sixth-order Magnus truncation:
/// omega = alpha_1 + alpha_3/12 - [12]/12 + [113]/360 - [212]/240 + [1112]/720
/// with alpha_i built from -i*tau*H samples at the GL6 nodes; c212 is the
/// nested commutator [alpha_2, [alpha_1, alpha_2]].
struct Magnus6Terms {
  Eigen::MatrixXcd omega;
  Eigen::MatrixXcd c212;
};

Magnus6Terms magnus6_terms(const Eigen::MatrixXcd& kinetic_matrix, const PotentialModel& model,
                           double t_k, double tau);

/// Hermitian representative i*omega of the generator, so that
/// dense_expm_action(gen, u, 1.0) equals exp(omega) u (tau is already
/// folded into the alphas).
DenseHermitian magnus6_generator(const Eigen::MatrixXcd& kinetic_matrix,
                                 const PotentialModel& model, double t_k, double tau);

/// Hermitian representative i*(omega - z*[212]).
DenseHermitian magnus6_defect_generator(const Eigen::MatrixXcd& kinetic_matrix,
                                        const PotentialModel& model, double t_k, double tau,
                                        double z);

/// Hermitian representative i*[212]; its action on resolved states is
/// multiplication by -tau^3 (5/(3 mu)) (V3' - V1')^2.
DenseHermitian commutator_212_hermitian(const Eigen::MatrixXcd& kinetic_matrix,
                                        const PotentialModel& model, double t_k, double tau);

/// Cross-validated one-step reference: the three-exponential sixth-order
/// scheme with 64 substeps at tol 1e-14, checked against a
/// Richardson-extrapolated dense midpoint-exponential substepping. Both
/// routes must agree to 1e-12 or this throws. `agreement`, when non-null,
/// receives the measured distance between the two routes.
WaveVector exact_step(const PotentialModel& model, const KineticOperator& kinetic,
                      const WaveVector& u, double t_k, double tau, double* agreement = nullptr);

struct LocalOrderResult {
  double slope = 0.0;
  std::vector<double> errors;
  std::vector<bool> excluded;  // true where the error floor was reached
};

/// Least-squares slope of log(one-step error) vs log(tau) against the
/// cross-validated reference. Errors below `floor` are flagged and
/// excluded from the fit.
LocalOrderResult local_order(const SchemeTable& scheme, const PotentialModel& model,
                             const KineticOperator& kinetic, const WaveVector& u, double t_k,
                             const std::vector<double>& taus, double floor = 1e-12);

}  // namespace cfprop::oracle
