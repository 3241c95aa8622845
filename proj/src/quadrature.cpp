#include "cfprop/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cfprop {

void QuadratureRule::validate() const {
  if (nodes.size() != weights.size() || nodes.size() < 1) {
    throw std::invalid_argument("QuadratureRule: nodes/weights size mismatch");
  }
  if (order < 6) {
    throw std::invalid_argument("QuadratureRule: order must be at least 6");
  }
  for (int i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1])) {
      throw std::invalid_argument("QuadratureRule: nodes must be strictly increasing");
    }
  }
  if (std::abs(weights.sum() - 1.0) > 1e-14) {
    throw std::invalid_argument("QuadratureRule: weights must sum to 1");
  }
}

QuadratureRule gauss_legendre6() {
  QuadratureRule r;
  const double s = std::sqrt(15.0) / 10.0;
  r.nodes.resize(3);
  r.nodes << 0.5 - s, 0.5, 0.5 + s;
  r.weights.resize(3);
  r.weights << 5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0;
  r.order = 6;
  return r;
}

QuadratureRule gauss_lobatto4() {
  QuadratureRule r;
  const double s = std::sqrt(5.0) / 10.0;
  r.nodes.resize(4);
  r.nodes << 0.0, 0.5 - s, 0.5 + s, 1.0;
  r.weights.resize(4);
  r.weights << 1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0;
  r.order = 6;
  return r;
}

const Eigen::Matrix3d& alpha_matrix_g() {
  static const Eigen::Matrix3d g = [] {
    const double s = std::sqrt(15.0) / 3.0;
    Eigen::Matrix3d m;
    m << 0.0, 1.0, 0.0,
        -s, 0.0, s,
        10.0 / 3.0, -20.0 / 3.0, 10.0 / 3.0;
    return m;
  }();
  return g;
}

AlphaWeights alpha_weights_for(const QuadratureRule& rule) {
  rule.validate();
  const QuadratureRule gl = gauss_legendre6();
  if (rule.size() == 3 && rule.nodes == gl.nodes && rule.weights == gl.weights) {
    // Q^{-1} Q~ = I analytically; short-circuit so W = G holds exactly.
    AlphaWeights out;
    out.w = alpha_matrix_g();
    return out;
  }
  Eigen::Matrix3d q;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      q(i, j) = gl.weights[j] * std::pow(gl.nodes[j] - 0.5, i);
    }
  }
  Eigen::Matrix3Xd qt(3, rule.size());
  for (int i = 0; i < 3; ++i) {
    for (int l = 0; l < rule.size(); ++l) {
      qt(i, l) = rule.weights[l] * std::pow(rule.nodes[l] - 0.5, i);
    }
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(q);
  if (!lu.isInvertible()) {
    throw std::runtime_error("alpha_weights_for: singular moment matrix");
  }
  AlphaWeights out;
  out.w = alpha_matrix_g() * lu.solve(qt);
  return out;
}

}  // namespace cfprop
