#include "cfprop/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace cfprop::oracle {

namespace {

const Complex kImag(0.0, 1.0);

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}

}  // namespace

DenseHermitian::DenseHermitian(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1 || m_.rows() > 512) {
    throw std::invalid_argument("DenseHermitian: need a square matrix with n <= 512");
  }
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12)) {
    throw std::invalid_argument("DenseHermitian: matrix is not Hermitian within 1e-12");
  }
}

WaveVector dense_expm_action(const DenseHermitian& h, const WaveVector& u, double tau) {
  if (u.size() != h.size()) {
    throw std::invalid_argument("dense_expm_action: length mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * u;
  for (int j = 0; j < coeffs.size(); ++j) {
    coeffs[j] *= std::exp(Complex(0.0, -tau * lam[j]));
  }
  return es.eigenvectors() * coeffs;
}

Eigen::MatrixXcd dense_kinetic_matrix(const KineticOperator& kinetic) {
  const int n = kinetic.grid().n_points;
  if (n > 512) {
    throw std::invalid_argument("dense_kinetic_matrix: n <= 512 required");
  }
  Eigen::MatrixXcd t(n, n);
  FftCounter scratch;
  WaveVector e = WaveVector::Zero(n);
  WaveVector col(n);
  for (int j = 0; j < n; ++j) {
    e[j] = Complex(1.0, 0.0);
    kinetic.apply(e, col, scratch);
    t.col(j) = col;
    e[j] = Complex(0.0, 0.0);
  }
  return t;
}

Eigen::MatrixXcd dense_hamiltonian(const Eigen::MatrixXcd& kinetic_matrix,
                                   const PotentialModel& model, double t) {
  Eigen::MatrixXcd h = kinetic_matrix;
  const RealVector v = model.potential_at(t);
  for (int j = 0; j < h.rows(); ++j) {
    h(j, j) += v[j];
  }
  return h;
}

Magnus6Terms magnus6_terms(const Eigen::MatrixXcd& kinetic_matrix, const PotentialModel& model,
                           double t_k, double tau) {
  const int n = static_cast<int>(kinetic_matrix.rows());
  if (n > 256) {
    throw std::invalid_argument("magnus6_terms: n <= 256 required");
  }
  const QuadratureRule gl = gauss_legendre6();
  std::vector<RealVector> v(3);
  for (int l = 0; l < 3; ++l) {
    v[l] = model.potential_at(t_k + gl.nodes[l] * tau);
  }
  const double s = std::sqrt(15.0) / 3.0;
  Eigen::MatrixXcd a1 = kinetic_matrix;
  for (int j = 0; j < n; ++j) {
    a1(j, j) += v[1][j];
  }
  a1 *= Complex(0.0, -tau);
  Eigen::MatrixXcd a2 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd a3 = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    a2(j, j) = Complex(0.0, -tau) * (s * (v[2][j] - v[0][j]));
    a3(j, j) = Complex(0.0, -tau) * ((10.0 / 3.0) * (v[0][j] - 2.0 * v[1][j] + v[2][j]));
  }
  const Eigen::MatrixXcd c12 = commutator(a1, a2);
  const Eigen::MatrixXcd c113 = commutator(a1, commutator(a1, a3));
  const Eigen::MatrixXcd c212 = commutator(a2, commutator(a1, a2));
  const Eigen::MatrixXcd c1112 = commutator(a1, commutator(a1, c12));

  Magnus6Terms out;
  out.omega = a1 + a3 / 12.0 - c12 / 12.0 + c113 / 360.0 - c212 / 240.0 + c1112 / 720.0;
  out.c212 = c212;
  return out;
}

DenseHermitian magnus6_generator(const Eigen::MatrixXcd& kinetic_matrix,
                                 const PotentialModel& model, double t_k, double tau) {
  const Magnus6Terms terms = magnus6_terms(kinetic_matrix, model, t_k, tau);
  return DenseHermitian(kImag * terms.omega);
}

DenseHermitian magnus6_defect_generator(const Eigen::MatrixXcd& kinetic_matrix,
                                        const PotentialModel& model, double t_k, double tau,
                                        double z) {
  const Magnus6Terms terms = magnus6_terms(kinetic_matrix, model, t_k, tau);
  return DenseHermitian(kImag * (terms.omega - z * terms.c212));
}

DenseHermitian commutator_212_hermitian(const Eigen::MatrixXcd& kinetic_matrix,
                                        const PotentialModel& model, double t_k, double tau) {
  const Magnus6Terms terms = magnus6_terms(kinetic_matrix, model, t_k, tau);
  return DenseHermitian(kImag * terms.c212);
}

namespace {

WaveVector midpoint_substepped(const Eigen::MatrixXcd& kinetic_matrix,
                               const PotentialModel& model, const WaveVector& u, double t_k,
                               double tau, int n_sub) {
  WaveVector state = u;
  const double h = tau / n_sub;
  for (int i = 0; i < n_sub; ++i) {
    const DenseHermitian hmid(
        dense_hamiltonian(kinetic_matrix, model, t_k + (i + 0.5) * h));
    state = dense_expm_action(hmid, state, h);
  }
  return state;
}

}  // namespace

WaveVector exact_step(const PotentialModel& model, const KineticOperator& kinetic,
                      const WaveVector& u, double t_k, double tau, double* agreement) {
  // Route 1: three-exponential sixth-order scheme, finely substepped.
  const SchemeTable cf63 = builtin_scheme("cf6-3");
  KrylovConfig kcfg;
  kcfg.tol = 1e-14;
  kcfg.m_max = 24;
  const int n_sub = 64;
  const double h = tau / n_sub;
  FftCounter counter;
  WaveVector route1 = u;
  LanczosProcess workspace(static_cast<int>(u.size()), kcfg.m_max);
  for (int i = 0; i < n_sub; ++i) {
    route1 = step(cf63, route1, t_k + i * h, h, model, kinetic, kcfg, counter, nullptr,
                  &workspace);
  }

  // Route 2: dense midpoint-exponential substepping with one Richardson
  // level ((4 u_{2n} - u_n)/3 cancels the h^2 term), doubled until stable.
  const Eigen::MatrixXcd tmat = dense_kinetic_matrix(kinetic);
  int n_mid = 256;
  WaveVector coarse = midpoint_substepped(tmat, model, u, t_k, tau, n_mid);
  WaveVector fine = midpoint_substepped(tmat, model, u, t_k, tau, 2 * n_mid);
  WaveVector route2 = (4.0 * fine - coarse) / 3.0;
  for (int iter = 0; iter < 6; ++iter) {
    n_mid *= 2;
    coarse = fine;
    fine = midpoint_substepped(tmat, model, u, t_k, tau, 2 * n_mid);
    const WaveVector next = (4.0 * fine - coarse) / 3.0;
    const double change = (next - route2).norm();
    route2 = next;
    if (change < 3e-13) {
      break;
    }
  }

  const double dist = (route1 - route2).norm();
  if (agreement) {
    *agreement = dist;
  }
  if (!(dist <= 1e-12)) {
    throw std::runtime_error("exact_step: reference routes disagree beyond 1e-12");
  }
  return route1;
}

LocalOrderResult local_order(const SchemeTable& scheme, const PotentialModel& model,
                             const KineticOperator& kinetic, const WaveVector& u, double t_k,
                             const std::vector<double>& taus, double floor) {
  if (taus.size() < 3) {
    throw std::invalid_argument("local_order: need at least 3 tau values");
  }
  KrylovConfig kcfg;
  kcfg.tol = 1e-13;
  kcfg.m_max = 40;
  LocalOrderResult result;
  std::vector<double> log_tau, log_err;
  for (double tau : taus) {
    const WaveVector ref = exact_step(model, kinetic, u, t_k, tau);
    FftCounter counter;
    const WaveVector approx =
        step(scheme, u, t_k, tau, model, kinetic, kcfg, counter, nullptr, nullptr);
    const double err = (approx - ref).norm();
    const bool floored = err < floor;
    result.errors.push_back(err);
    result.excluded.push_back(floored);
    if (!floored) {
      log_tau.push_back(std::log(tau));
      log_err.push_back(std::log(err));
    }
  }
  if (log_tau.size() < 2) {
    throw std::runtime_error("local_order: too few points above the error floor");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < log_tau.size(); ++i) {
    mx += log_tau[i];
    my += log_err[i];
  }
  mx /= log_tau.size();
  my /= log_tau.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_tau.size(); ++i) {
    sxx += (log_tau[i] - mx) * (log_tau[i] - mx);
    sxy += (log_tau[i] - mx) * (log_err[i] - my);
  }
  result.slope = sxy / sxx;
  return result;
}

}  // namespace cfprop::oracle
