// SPDX-License-Identifier: Apache-2.0

#include "rklab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rklab/errors.hpp"

namespace rklab {

ComplexMatrix rk_matrix(const StabilityPolynomial& p, double dt, const ComplexMatrix& l) {
  if (l.rows() != l.cols()) throw std::invalid_argument("operator must be square");
  const auto& a = p.coeffs();
  const Eigen::Index n = l.rows();
  const ComplexMatrix b = dt * l;
  ComplexMatrix acc = a[0] * ComplexMatrix::Identity(n, n);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  for (size_t k = 1; k < a.size(); ++k) {
    power = (power * b).eval();
    acc += a[k] * power;
  }
  return acc;
}

GrowthReport power_growth(const ComplexMatrix& p, int n_max, const Symmetrizer& h,
                          double threshold) {
  if (n_max < 1) throw std::invalid_argument("power growth needs n_max >= 1");
  constexpr double kOverflowGuard = 1e100;
  GrowthReport report;
  report.threshold = threshold;
  report.norms.reserve(static_cast<size_t>(n_max) + 1);

  const ComplexMatrix g = h.transform(p);
  ComplexMatrix b = ComplexMatrix::Identity(p.rows(), p.cols());
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) b = (g * b).eval();
    const double norm = operator_norm(b);
    report.norms.push_back(norm);
    if (!report.first_exceed && norm > threshold) report.first_exceed = n;
    if (!std::isfinite(norm) || norm > kOverflowGuard) {
      report.truncated = true;
      break;
    }
  }
  report.sup_norm = *std::max_element(report.norms.begin(), report.norms.end());
  report.diverged = report.first_exceed.has_value();
  return report;
}

SpectralCheck spectral_check(const StabilityPolynomial& p, double dt, const OperatorBundle& l) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(l.matrix, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw EigenSolverError("operator eigensolve failed");
  double theta = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    theta = std::max(theta, std::abs(p.eval(dt * es.eigenvalues()(k))));
  return SpectralCheck{theta, theta <= 1.0 + 1e-10};
}

CflReport verify_cfl(const StabilityPolynomial& p, double dt, const OperatorBundle& l,
                     int angle_count, double tol) {
  if (angle_count < 64) throw std::invalid_argument("verify_cfl needs at least 64 angles");
  if (!(dt > 0.0)) throw std::invalid_argument("verify_cfl needs dt > 0");
  CflReport report;
  const Symmetrizer& h = l.symmetrizer;
  report.negative = is_negative(l.matrix, h, default_negativity_tol(l.matrix, h));
  report.radius_measured = dt * numerical_radius(l.matrix, h, 1e-9);

  try {
    report.radius_required = inscribed_semidisc(p, 1e-8).radius;
  } catch (const NoImaginaryInterval& e) {
    report.radius_required = 0.0;
    report.error = e.what();
  }

  const RangeBoundary rb = range_boundary(l.matrix, h, angle_count);
  int inside = 0;
  for (const auto& z : rb.points)
    if (p.in_region(dt * z, tol)) ++inside;
  report.boundary_inside = double(inside) / double(rb.points.size());

  const bool semidisc_ok = report.negative && report.radius_required > 0.0 &&
                           report.radius_measured <= report.radius_required * (1.0 + 1e-9) + 1e-12;
  const bool boundary_ok = inside == static_cast<int>(rb.points.size());
  report.pass = semidisc_ok || boundary_ok;
  report.route = semidisc_ok ? "semidisc" : (boundary_ok ? "boundary" : "");
  if (report.pass) report.error.reset();
  return report;
}

ResolventReport resolvent_constant(const ComplexMatrix& p, ResolventMode mode,
                                   int angle_samples) {
  if (angle_samples < 16) throw std::invalid_argument("resolvent needs at least 16 samples");
  ResolventReport report;
  report.mode = mode;
  const Eigen::Index n = p.rows();
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);

  auto probe = [&](std::complex<double> z, double weight) {
    const Eigen::PartialPivLU<ComplexMatrix> lu(z * eye - p);
    const ComplexMatrix inv = lu.inverse();
    if (!inv.allFinite()) {
      ++report.skipped;  // z collided with an eigenvalue
      return;
    }
    const double norm = operator_norm(inv);
    report.samples.push_back({z, norm, weight});
    report.constant = std::max(report.constant, weight * norm);
  };

  if (mode == ResolventMode::standard) {
    for (int j = 1; j <= 8; ++j) {
      const double r = 1.0 + std::pow(2.0, -j);
      for (int k = 0; k < angle_samples; ++k)
        probe(std::polar(r, 2.0 * M_PI * k / angle_samples), r - 1.0);
    }
  } else {
    // unit circle, half-offset grid so z = 1 is never sampled
    for (int k = 0; k < angle_samples; ++k) {
      const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * (k + 0.5) / angle_samples);
      probe(z, std::abs(z - 1.0));
    }
  }
  return report;
}

bool strong_stability_check(const ComplexMatrix& p, const Symmetrizer& h, double tol) {
  const ComplexMatrix g = h.transform(p);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g.adjoint() * g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigenSolverError("strong stability eigensolve failed");
  return es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

double l1_induced_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
  return best;
}

double crouzeix_ratio(const ComplexMatrix& a, const Symmetrizer& h,
                      const StabilityPolynomial& p, int angle_count) {
  if (angle_count < 256) throw std::invalid_argument("crouzeix ratio needs at least 256 angles");
  const ComplexMatrix at = h.transform(a);
  const double num = operator_norm(rk_matrix(p, 1.0, at));
  const RangeBoundary rb = range_boundary(a, h, angle_count);
  double den = 0.0;
  // |p| attains its max over the convex compact W on the boundary
  for (const auto& z : rb.points) den = std::max(den, std::abs(p.eval(z)));
  if (den < 1e-300) throw DegenerateRange("boundary maximum of |p| underflowed");
  return num / den;
}

}  // namespace rklab
