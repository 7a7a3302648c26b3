// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace rklab {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Hermitian positive-definite weight H defining the inner product
/// <x,y>_H = x^* H y, with the principal square root and its inverse cached
/// from one eigendecomposition.  cond() is max(lambda_max, 1/lambda_min),
/// the uniform-boundedness constant of the weighted norm.
class Symmetrizer {
 public:
  /// Validates Hermitian symmetry (1e-12 relative) and positive definiteness.
  explicit Symmetrizer(const ComplexMatrix& h);

  static Symmetrizer identity(Eigen::Index n);

  Eigen::Index size() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const ComplexMatrix& sqrt() const { return sqrt_; }
  const ComplexMatrix& inv_sqrt() const { return inv_sqrt_; }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  double cond() const { return cond_; }
  bool is_identity() const { return identity_; }

  /// H^{1/2} A H^{-1/2}: the similarity carrying W_H(A) to the plain
  /// numerical range W of the transformed matrix.
  ComplexMatrix transform(const ComplexMatrix& a) const;

  /// |x|_H = sqrt(x^* H x).
  double weighted_norm(const ComplexVector& x) const;

 private:
  Symmetrizer() = default;

  ComplexMatrix matrix_, sqrt_, inv_sqrt_;
  double lambda_min_ = 1.0, lambda_max_ = 1.0, cond_ = 1.0;
  bool identity_ = false;
};

}  // namespace rklab
