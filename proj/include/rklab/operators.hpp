// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rklab/symmetrizer.hpp"

namespace rklab {

/// Constant-coefficient difference stencil (1/dx) sum_{alpha=lo..hi} q_alpha E^alpha.
struct Stencil {
  int lo = 0, hi = 0;
  std::vector<double> weights;  // q_lo .. q_hi
  double dx = 1.0;

  double at(int alpha) const { return weights[static_cast<size_t>(alpha - lo)]; }
  int width() const { return hi - lo; }
  /// Accuracy-consistent stencils annihilate constants: sum q_alpha = 0.
  bool consistent(double tol = 1e-12) const;

  static Stencil upwind(double a, double dx);           // (a/dx)(E - I)
  static Stencil centered(double a, double dx);         // (a/2dx)(E - E^{-1})
  static Stencil centered4(double a, double dx);        // 4th order 5-point
  static Stencil lax_wendroff(double a, double mesh_ratio, double dx);
};

/// Symbol q^(xi) = (1/dx) sum q_alpha e^{i alpha xi}; the eigenvalues of the
/// n-periodic circulant are exactly q^(2 pi j / n).
std::complex<double> symbol(const Stencil& st, double xi);

/// Stencil whose coefficients vary with x (frozen row by row).
struct VariableStencil {
  int lo = 0, hi = 0;
  std::vector<std::function<double(double)>> coeff_fns;  // q_lo(x) .. q_hi(x)
  double dx = 1.0;
};

std::complex<double> symbol_at(const VariableStencil& st, double x, double xi);

struct OperatorMeta {
  std::string label;
  std::vector<std::pair<std::string, double>> params;
};

/// A discretization matrix L together with the symmetrizer that makes it
/// weighted-negative (identity unless the construction supplies one).
struct OperatorBundle {
  ComplexMatrix matrix;
  Symmetrizer symmetrizer;
  OperatorMeta meta;
};

/// Bidiagonal J_q: -q on the diagonal, 1+q above; q = 0 is the translation
/// matrix, the canonical non-normal instability witness.
OperatorBundle jordan_block(int n, double q);

/// One-sided transport discretization (a/dx)(J_0 - I) with the outflow row
/// built in; I + dt*L is exactly jordan_block(n, a*dt/dx - 1).
OperatorBundle forward_difference(int n, double a, double dx);

/// Skew tridiagonal (a/2dx)(J_0 - J_0^T); numerical range is the imaginary
/// segment of half-length (a/dx)cos(pi/(n+1)).
OperatorBundle centered_difference(int n, double a, double dx);

/// Periodic circulant carrying `st` with wraparound; requires n > stencil width.
OperatorBundle circulant(int n, const Stencil& st);

OperatorBundle lax_wendroff(int n, double a, double mesh_ratio, double dx);

/// Fourth-order finite-element difference M^{-1} C: tridiagonal mass circulant
/// (1/6, 4/6, 1/6) against the centered difference.  Purely imaginary symbol
/// 3 i sin(xi) / (dx (2 + cos xi)).
OperatorBundle finite_element_4th(int n, double dx);

struct VariableOperator {
  OperatorBundle bundle;
  /// Grid estimate of sum_alpha alpha^2 |q_alpha|_{C^2}, the stencil-locality
  /// constant entering the sharp Garding bound; finite differences stand in
  /// for the derivatives.
  double locality;
};

/// Rows apply the x-frozen stencil at x_nu = nu*dx with periodic wrap;
/// expects the unit-interval grid dx = 1/n.
VariableOperator variable_circulant(int n, const VariableStencil& st);

/// Spectral differentiation a(x) d/dx on 2N+1 points of [0, 2pi):
/// diag(a_samples) times the antisymmetric Fourier matrix with entries
/// (-1)^{j-k} / (2 sin((k-j) dx / 2)).  Bundled with the H^1 symmetrizer.
OperatorBundle fourier_method(int n_modes, const Eigen::VectorXd& a_samples);

/// H = F diag((1+k^2)/N^2) F^*, k = -N..N: the discrete H^1 inner product.
/// Spectrum is exactly {(1+k^2)/N^2}, so N^{-2} I <= H <= 2 I.
Symmetrizer h1_symmetrizer(int n_modes);

/// Centered interior scheme with a one-sided outflow row and the truncated
/// last row from the y(x_N) = 0 closure; weighted negative under
/// H = diag(1/2, 1, ..., 1).
OperatorBundle ibvp_onesided(int n, double a, double dx);

}  // namespace rklab
