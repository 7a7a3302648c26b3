// SPDX-License-Identifier: Apache-2.0

#include "rklab/numerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rklab/errors.hpp"

namespace rklab {

namespace {

SupportPoint support_on_transformed(const ComplexMatrix& at, double theta) {
  const std::complex<double> rot = std::polar(1.0, theta);
  const ComplexMatrix herm = 0.5 * (rot * at + (rot * at).adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  if (es.info() != Eigen::Success)
    throw EigenSolverError("support-function eigensolve did not converge");
  const Eigen::Index top = es.eigenvalues().size() - 1;  // ascending order
  const ComplexVector x = es.eigenvectors().col(top);
  const std::complex<double> witness = x.dot(at * x);
  return SupportPoint{es.eigenvalues()(top), witness};
}

double support_value(const ComplexMatrix& at, double theta) {
  const std::complex<double> rot = std::polar(1.0, theta);
  const ComplexMatrix herm = 0.5 * (rot * at + (rot * at).adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw EigenSolverError("support-function eigensolve did not converge");
  return es.eigenvalues().maxCoeff();
}

}  // namespace

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigenSolverError("gram eigensolve failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

SupportPoint support_function(const ComplexMatrix& a, const Symmetrizer& h, double theta) {
  return support_on_transformed(h.transform(a), theta);
}

double RangeBoundary::hull_support(const std::vector<std::complex<double>>& pts, double theta) {
  double best = -std::numeric_limits<double>::infinity();
  const std::complex<double> rot = std::polar(1.0, theta);
  for (const auto& z : pts) best = std::max(best, std::real(rot * z));
  return best;
}

RangeBoundary range_boundary(const ComplexMatrix& a, const Symmetrizer& h, int angle_count) {
  if (angle_count < 8) throw std::invalid_argument("range boundary needs at least 8 angles");
  const ComplexMatrix at = h.transform(a);
  RangeBoundary rb;
  rb.angles.reserve(static_cast<size_t>(angle_count));
  rb.support.reserve(static_cast<size_t>(angle_count));
  rb.points.reserve(static_cast<size_t>(angle_count));
  for (int k = 0; k < angle_count; ++k) {
    const double theta = 2.0 * M_PI * k / angle_count;
    const SupportPoint sp = support_on_transformed(at, theta);
    rb.angles.push_back(theta);
    rb.support.push_back(sp.value);
    rb.points.push_back(sp.witness);
  }
  return rb;
}

double numerical_radius(const ComplexMatrix& a, const Symmetrizer& h, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const ComplexMatrix at = h.transform(a);
  constexpr int kScan = 256;
  double best = -std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < kScan; ++k) {
    const double v = support_value(at, 2.0 * M_PI * k / kScan);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  // Golden-section refinement in the bracket around the best scanned angle.
  const double cell = 2.0 * M_PI / kScan;
  double lo = best_k * cell - cell, hi = best_k * cell + cell;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = support_value(at, x1);
  double f2 = support_value(at, x2);
  const double width_target = std::min(1e-9, tol);
  while (hi - lo > width_target) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = support_value(at, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = support_value(at, x1);
    }
  }
  return std::max({best, f1, f2});
}

double negativity_gap(const ComplexMatrix& a, const Symmetrizer& h) {
  const ComplexMatrix at = h.transform(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(at + at.adjoint(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigenSolverError("negativity eigensolve failed");
  return es.eigenvalues().maxCoeff();
}

double default_negativity_tol(const ComplexMatrix& a, const Symmetrizer& h) {
  return 1e-9 * std::max(1.0, h.transform(a).norm());
}

bool is_negative(const ComplexMatrix& a, const Symmetrizer& h, double tol) {
  return negativity_gap(a, h) <= tol;
}

double coercivity_constant(const ComplexMatrix& a, const Symmetrizer& h, int angle_count) {
  if (angle_count < 64) throw std::invalid_argument("coercivity needs at least 64 angles");
  if (!is_negative(a, h, default_negativity_tol(a, h)))
    throw NotNegative("coercivity constant requires a weighted-negative operator");
  const RangeBoundary rb = range_boundary(a, h, angle_count);
  const double scale = h.transform(a).norm();
  double beta = std::numeric_limits<double>::infinity();
  for (const auto& z : rb.points) {
    const double mod2 = std::norm(z);
    if (mod2 <= 1e-28 * std::max(1.0, scale * scale)) continue;  // z = 0 contributes no bound
    beta = std::min(beta, -2.0 * z.real() / mod2);
  }
  if (!std::isfinite(beta)) return 0.0;  // range degenerated to the origin
  return std::max(beta, 0.0);
}

}  // namespace rklab
