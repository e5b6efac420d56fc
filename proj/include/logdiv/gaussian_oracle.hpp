#pragma once

#include <vector>

#include <Eigen/Dense>

#include "logdiv/function.hpp"
#include "logdiv/generator.hpp"

namespace logdiv {

/// Vector of gaussian parameter pairs sharing one dimension.
struct GaussianVector {
  std::vector<GaussianParams> components;

  int dimension() const;
  int size() const { return static_cast<int>(components.size()); }
  FunctionVector functions() const;
};

/// Closed form of the mixed divergence on gaussians:
///   (2 pi n)^{d/2} det(sum A_i)^{-1/2} prod_i [c_i f_i(det A_i / c_i^2)]^{1/n}.
/// Determinants via Cholesky. Throws NegativeFactor if some factor is < 0.
double oracle_mixed(const GaussianVector& gv, const GeneratorVector& generators);

/// Closed form of the mixed L_lambda-affine surface area on gaussians:
///   (2 pi n)^{d/2} det(sum A_i)^{-1/2} prod_i [c_i^{1-2 lambda} det(A_i)^lambda]^{1/n}.
double oracle_as_lambda(const GaussianVector& gv, double lambda);

/// i-th variant for a pair, weight denominator n_w:
///   (c_1^i c_2^{n-i})^{(1-2 lambda)/n} (det(A_1)^i det(A_2)^{n-i})^{lambda/n}
///     * (2 pi n)^{d/2} / det(i A_1 + (n-i) A_2)^{1/2},  n = n_w.
double oracle_as_lambda_i(const GaussianParams& g1, const GaussianParams& g2, double lambda,
                          double i, double n_w);

/// (1/c, A^{-1}).
GaussianParams oracle_dual(const GaussianParams& g);

/// Determinant inequality chain for SPD matrices A_1..A_n:
///   prod det(A_i)^{1/n} <= n^{-n} (sum det(A_i)^{1/n})^n <= n^{-n} det(sum A_i),
/// plus the Minkowski-type slack det(sum A_i)^{1/n} - sum det(A_i)^{1/n}.
/// The inequalities hold as stated when the number of matrices equals the
/// dimension, which is how the equality characterizations use them.
struct MatrixChainReport {
  double minkowski_lhs = 0.0;   // det(sum A_i)^{1/n}
  double minkowski_rhs = 0.0;   // sum det(A_i)^{1/n}
  double minkowski_slack = 0.0;
  double gm_value = 0.0;        // prod det(A_i)^{1/n}
  double am_value = 0.0;        // n^{-n} (sum det(A_i)^{1/n})^n
  double det_value = 0.0;       // n^{-n} det(sum A_i)
  double gm_am_slack = 0.0;     // am - gm
  double am_det_slack = 0.0;    // det - am
};
MatrixChainReport matrix_bm_check(const std::vector<Eigen::MatrixXd>& matrices);

}  // namespace logdiv
