#include "cfprop/krylov.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cfprop {

namespace {
constexpr double kBreakdownThreshold = 1e-14;
}

void KrylovConfig::validate() const {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("KrylovConfig: tol must be positive");
  }
  if (m_max < 2) {
    throw std::invalid_argument("KrylovConfig: m_max must be at least 2");
  }
}

LanczosProcess::LanczosProcess(int n, int m_max) : n_(n), capacity_(m_max) {
  if (n < 1 || m_max < 1) {
    throw std::invalid_argument("LanczosProcess: invalid dimensions");
  }
  alpha_.reserve(m_max);
  beta_.reserve(m_max);
  basis_.resize(n, m_max + 1);
  work_.resize(n);
}

void LanczosProcess::seed(const WaveVector& u) {
  if (u.size() != n_) {
    throw std::invalid_argument("LanczosProcess: seed length mismatch");
  }
  const double nrm = u.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw std::domain_error("LanczosProcess: seed vector must have finite nonzero norm");
  }
  m_ = 0;
  exact_ = false;
  beta_next_ = 0.0;
  alpha_.clear();
  beta_.clear();
  decomposed_dim_ = 0;
  basis_.col(0) = u / nrm;
}

bool LanczosProcess::expand(const HermitianAction& apply_h, double tau) {
  if (exact_) {
    return false;
  }
  if (m_ >= capacity_) {
    throw std::logic_error("LanczosProcess: capacity exhausted");
  }
  apply_h(basis_.col(m_), work_);
  work_ *= tau;
  if (m_ > 0) {
    work_ -= beta_next_ * basis_.col(m_ - 1);
  }
  // Hermitian action makes <v, y> real; the imaginary residue is roundoff.
  const double a = std::real(basis_.col(m_).dot(work_));
  work_ -= a * basis_.col(m_);
  const double b = work_.norm();
  if (m_ > 0) {
    beta_.push_back(beta_next_);
  }
  alpha_.push_back(a);
  beta_next_ = b;
  ++m_;
  decomposed_dim_ = 0;
  if (b < kBreakdownThreshold) {
    exact_ = true;
    return false;
  }
  basis_.col(m_) = work_ / b;
  return true;
}

void LanczosProcess::decompose() const {
  if (decomposed_dim_ == m_ && m_ > 0) {
    return;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m_, m_);
  for (int i = 0; i < m_; ++i) {
    t(i, i) = alpha_[i];
  }
  for (int i = 0; i + 1 < m_; ++i) {
    t(i, i + 1) = beta_[i];
    t(i + 1, i) = beta_[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  decomposed_dim_ = m_;
}

double LanczosProcess::error_estimate() const {
  if (m_ < 1) {
    throw std::logic_error("LanczosProcess: no iterations performed");
  }
  if (exact_) {
    return 0.0;
  }
  decompose();
  Complex half(0.0, 0.0);
  Complex full(0.0, 0.0);
  for (int j = 0; j < m_; ++j) {
    const double lam = eigenvalues_[j];
    const double proj = eigenvectors_(m_ - 1, j) * eigenvectors_(0, j);
    half += proj * std::exp(Complex(0.0, -0.5 * lam));
    full += proj * std::exp(Complex(0.0, -lam));
  }
  return beta_next_ * (2.0 / 3.0 * std::abs(half) + 1.0 / 6.0 * std::abs(full));
}

WaveVector LanczosProcess::assemble(double scale) const {
  if (m_ < 1) {
    throw std::logic_error("LanczosProcess: no iterations performed");
  }
  decompose();
  Eigen::VectorXcd w(m_);
  for (int i = 0; i < m_; ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < m_; ++j) {
      acc += eigenvectors_(i, j) * eigenvectors_(0, j) * std::exp(Complex(0.0, -eigenvalues_[j]));
    }
    w[i] = acc;
  }
  return scale * (basis_.leftCols(m_) * w);
}

WaveVector expm_action(const HermitianAction& apply_h, const WaveVector& u, double tau,
                       const KrylovConfig& cfg, KrylovStats* stats, LanczosProcess* workspace) {
  cfg.validate();
  const double nrm = u.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw std::domain_error("expm_action: input must have finite nonzero norm");
  }
  if (workspace && workspace->capacity() < cfg.m_max) {
    throw std::invalid_argument("expm_action: workspace capacity below m_max");
  }
  std::optional<LanczosProcess> local;
  if (!workspace) {
    local.emplace(static_cast<int>(u.size()), cfg.m_max);
  }
  LanczosProcess& proc = workspace ? *workspace : *local;
  proc.seed(u);
  double est = 0.0;
  bool converged = false;
  while (proc.dim() < cfg.m_max) {
    const bool advanced = proc.expand(apply_h, tau);
    est = proc.error_estimate();
    if (!advanced || est < cfg.tol) {
      converged = true;
      break;
    }
  }
  if (stats) {
    stats->m_used = proc.dim();
    stats->est_err = est;
    stats->exact_breakdown = proc.exact();
    stats->hit_cap = !converged;
  }
  return proc.assemble(nrm);
}

}  // namespace cfprop
