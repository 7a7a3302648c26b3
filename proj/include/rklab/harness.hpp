// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rklab/numerical_range.hpp"
#include "rklab/operators.hpp"
#include "rklab/stability_polynomial.hpp"
#include "rklab/symmetrizer.hpp"

namespace rklab {

/// P(dt*L) assembled by accumulating powers of dt*L (s-1 matrix products).
ComplexMatrix rk_matrix(const StabilityPolynomial& p, double dt, const ComplexMatrix& l);

/// Per-step weighted operator norms of the iteration matrix.
struct GrowthReport {
  std::vector<double> norms;        // ||P^n||_H for n = 0 .. (truncation)
  double sup_norm = 0.0;
  std::optional<int> first_exceed;  // least n with norm > threshold
  bool diverged = false;            // threshold was crossed
  bool truncated = false;           // run stopped at the 1e100 overflow guard
  double threshold = 0.0;
};

/// Norms ||H^{1/2} P^n H^{-1/2}|| for n = 0..n_max by accumulated products
/// (no eigen/Schur shortcuts: exactness for non-normal P is the point).
/// Stops early once norms pass 1e100.
GrowthReport power_growth(const ComplexMatrix& p, int n_max, const Symmetrizer& h,
                          double threshold);

struct SpectralCheck {
  double theta;  // max_k |P(dt lambda_k(L))|
  bool inside;   // theta <= 1 + 1e-10
};

/// Spectral-mapping check: necessary for stability, famously not sufficient.
SpectralCheck spectral_check(const StabilityPolynomial& p, double dt, const OperatorBundle& l);

/// Outcome of testing dt*W_H(L) against the stability region, via the
/// numerical-radius/semi-disc route and the direct boundary-mapping route.
struct CflReport {
  double radius_required = 0.0;   // inscribed semi-disc radius of P (0 if none)
  double radius_measured = 0.0;   // dt * r_H(L)
  bool negative = false;
  double boundary_inside = 0.0;   // fraction of boundary points with |P(dt z)| <= 1+tol
  bool pass = false;
  std::string route;              // "semidisc", "boundary", or "" on fail
  std::optional<std::string> error;
};

CflReport verify_cfl(const StabilityPolynomial& p, double dt, const OperatorBundle& l,
                     int angle_count, double tol);

enum class ResolventMode { standard, dissipative };

struct ResolventSample {
  std::complex<double> z;
  double resolvent_norm;
  double weight;  // |z|-1 (standard) or |z-1| (dissipative)
};

/// Sampled Kreiss-type resolvent constant: max over samples of
/// weight * ||(zI - P)^{-1}||.  A lower bound on the true supremum.
struct ResolventReport {
  ResolventMode mode = ResolventMode::standard;
  std::vector<ResolventSample> samples;
  double constant = 0.0;
  int skipped = 0;  // samples where zI - P was numerically singular
};

ResolventReport resolvent_constant(const ComplexMatrix& p, ResolventMode mode,
                                   int angle_samples);

/// Strong stability (contraction in the weighted norm):
/// lambda_max(H^{-1/2} P^* H P H^{-1/2}) <= 1 + tol.
bool strong_stability_check(const ComplexMatrix& p, const Symmetrizer& h, double tol);

/// Max column sum of moduli.
double l1_induced_norm(const ComplexMatrix& a);

/// ||p(A)||_H divided by the max of |p| over the sampled boundary of W_H(A);
/// bounded by 1 + sqrt(2) up to boundary-sampling error.
double crouzeix_ratio(const ComplexMatrix& a, const Symmetrizer& h,
                      const StabilityPolynomial& p, int angle_count);

}  // namespace rklab
