#pragma once

#include <Eigen/Dense>

#include "cfprop/spectral.hpp"

namespace cfprop {

/// Quadrature rule on [0, 1]. Only rules of order >= 6 are accepted, which
/// is what the alpha construction requires.
struct QuadratureRule {
  RealVector nodes;    // strictly increasing, in [0, 1]
  RealVector weights;  // sum to 1
  int order = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  void validate() const;
};

/// Three-point Gauss-Legendre rule of order 6:
/// c = 1/2 -+ sqrt(15)/10, 1/2; b = (5, 8, 5)/18.
QuadratureRule gauss_legendre6();

/// Four-point Gauss-Lobatto rule, also of order 6 (exact through degree 5).
QuadratureRule gauss_lobatto4();

/// 3 x k matrix mapping Hamiltonian samples H(t_k + c_l*tau) to the graded
/// combinations (alpha_1, alpha_2, alpha_3). Row 1 sums to 1, rows 2 and 3
/// sum to 0, so constant-in-time Hamiltonians produce alpha_2 = alpha_3 = 0.
struct AlphaWeights {
  Eigen::Matrix3Xd w;

  int samples() const { return static_cast<int>(w.cols()); }
};

/// The matrix G: alpha weights of the Gauss-Legendre rule itself.
const Eigen::Matrix3d& alpha_matrix_g();

/// Computes W = G * Q^{-1} * Q~ with Q_{i,j} = b_j (c_j - 1/2)^{i-1} built
/// from the GL6 rule and Q~ the same moments of the supplied rule. For
/// the GL6 rule this returns G exactly.
AlphaWeights alpha_weights_for(const QuadratureRule& rule);

}  // namespace cfprop
