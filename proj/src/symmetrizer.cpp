// SPDX-License-Identifier: Apache-2.0

#include "rklab/symmetrizer.hpp"

#include <stdexcept>

#include "rklab/errors.hpp"

namespace rklab {

Symmetrizer::Symmetrizer(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("symmetrizer must be square");
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > 1e-12 * scale)
    throw std::invalid_argument("symmetrizer must be Hermitian");
  matrix_ = 0.5 * (h + h.adjoint());  // strip roundoff asymmetry

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_);
  if (es.info() != Eigen::Success) throw EigenSolverError("symmetrizer eigensolve failed");
  lambda_min_ = es.eigenvalues().minCoeff();
  lambda_max_ = es.eigenvalues().maxCoeff();
  if (lambda_min_ <= 0.0)
    throw NotPositiveDefinite("symmetrizer is not positive definite (lambda_min = " +
                              std::to_string(lambda_min_) + ")");
  cond_ = std::max(lambda_max_, 1.0 / lambda_min_);

  const Eigen::VectorXd sq = es.eigenvalues().cwiseSqrt();
  sqrt_ = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
  inv_sqrt_ = es.eigenvectors() * sq.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  identity_ = matrix_.isIdentity(1e-15);
}

Symmetrizer Symmetrizer::identity(Eigen::Index n) {
  Symmetrizer s;
  s.matrix_ = ComplexMatrix::Identity(n, n);
  s.sqrt_ = s.matrix_;
  s.inv_sqrt_ = s.matrix_;
  s.identity_ = true;
  return s;
}

ComplexMatrix Symmetrizer::transform(const ComplexMatrix& a) const {
  if (a.rows() != size() || a.cols() != size())
    throw std::invalid_argument("dimension mismatch between operator and symmetrizer");
  if (identity_) return a;
  return sqrt_ * a * inv_sqrt_;
}

double Symmetrizer::weighted_norm(const ComplexVector& x) const {
  if (identity_) return x.norm();
  return std::sqrt(std::max(0.0, std::real(x.dot(matrix_ * x))));
}

}  // namespace rklab
