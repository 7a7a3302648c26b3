// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "rklab/symmetrizer.hpp"

namespace rklab {

/// Spectral norm via a Hermitian eigensolve of the Gram matrix A^* A.
double operator_norm(const ComplexMatrix& a);

/// H^{1/2} A H^{-1/2}: W of the result equals W_H(A).
inline ComplexMatrix weighted_transform(const ComplexMatrix& a, const Symmetrizer& h) {
  return h.transform(a);
}

struct SupportPoint {
  double value;                   // max Re(e^{i theta} z) over z in W_H(A)
  std::complex<double> witness;   // Rayleigh quotient attaining it
};

/// Support function of the weighted numerical range in direction theta:
/// the top eigenvalue of the Hermitian part of e^{i theta} H^{1/2} A H^{-1/2},
/// with the attaining Rayleigh quotient as witness.
SupportPoint support_function(const ComplexMatrix& a, const Symmetrizer& h, double theta);

/// Sampled boundary of W_H(A) from the rotation method.  The convex hull of
/// `points` inner-approximates the range; the intersection of half-planes
/// {Re(e^{i theta_k} z) <= support_k} outer-approximates it.
struct RangeBoundary {
  std::vector<double> angles;
  std::vector<double> support;
  std::vector<std::complex<double>> points;

  /// Support of the convex hull of an explicit point set in direction theta;
  /// handy for polytope comparisons.
  static double hull_support(const std::vector<std::complex<double>>& pts, double theta);
};

RangeBoundary range_boundary(const ComplexMatrix& a, const Symmetrizer& h, int angle_count);

/// Numerical radius r_H(A) = max_theta support(theta), located by a 256-angle
/// scan plus golden-section refinement of the bracketed maximum.
double numerical_radius(const ComplexMatrix& a, const Symmetrizer& h, double tol = 1e-9);

/// Weighted negativity H A + A^* H <= tol, tested as
/// lambda_max(A~ + A~^*) <= tol on the transformed matrix.
bool is_negative(const ComplexMatrix& a, const Symmetrizer& h, double tol);

/// lambda_max(A~ + A~^*): twice the rightmost extent of Re W_H(A).
double negativity_gap(const ComplexMatrix& a, const Symmetrizer& h);

/// Scale-aware default tolerance for negativity checks.
double default_negativity_tol(const ComplexMatrix& a, const Symmetrizer& h);

/// Coercivity constant beta = inf over boundary points z != 0 of
/// (-2 Re z)/|z|^2, clamped at 0.  Requires a negative operator; beta > 0
/// certifies forward-Euler numerical-radius stability for dt <= beta.
double coercivity_constant(const ComplexMatrix& a, const Symmetrizer& h, int angle_count);

}  // namespace rklab
