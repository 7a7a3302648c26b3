// SPDX-License-Identifier: Apache-2.0

#include "rklab/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "rklab/errors.hpp"

namespace rklab {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

OperatorMeta meta(std::string label, std::initializer_list<std::pair<std::string, double>> p) {
  OperatorMeta m;
  m.label = std::move(label);
  m.params.assign(p.begin(), p.end());
  return m;
}

}  // namespace

bool Stencil::consistent(double tol) const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return std::abs(sum) <= tol;
}

Stencil Stencil::upwind(double a, double dx) { return Stencil{0, 1, {-a, a}, dx}; }

Stencil Stencil::centered(double a, double dx) {
  return Stencil{-1, 1, {-0.5 * a, 0.0, 0.5 * a}, dx};
}

Stencil Stencil::centered4(double a, double dx) {
  return Stencil{-2, 2, {a / 12.0, -8.0 * a / 12.0, 0.0, 8.0 * a / 12.0, -a / 12.0}, dx};
}

Stencil Stencil::lax_wendroff(double a, double mesh_ratio, double dx) {
  const double c = 0.5 * a, d = 0.5 * mesh_ratio * a * a;
  return Stencil{-1, 1, {-c + d, -2.0 * d, c + d}, dx};
}

std::complex<double> symbol(const Stencil& st, double xi) {
  std::complex<double> acc = 0.0;
  for (int alpha = st.lo; alpha <= st.hi; ++alpha)
    acc += st.at(alpha) * std::polar(1.0, alpha * xi);
  return acc / st.dx;
}

std::complex<double> symbol_at(const VariableStencil& st, double x, double xi) {
  std::complex<double> acc = 0.0;
  for (int alpha = st.lo; alpha <= st.hi; ++alpha)
    acc += st.coeff_fns[static_cast<size_t>(alpha - st.lo)](x) * std::polar(1.0, alpha * xi);
  return acc / st.dx;
}

OperatorBundle jordan_block(int n, double q) {
  require(n >= 1, "jordan block needs n >= 1");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = -q;
    if (i + 1 < n) m(i, i + 1) = 1.0 + q;
  }
  return {std::move(m), Symmetrizer::identity(n), meta("jordan", {{"n", double(n)}, {"q", q}})};
}

OperatorBundle forward_difference(int n, double a, double dx) {
  require(n >= 2, "forward difference needs n >= 2");
  require(a > 0.0 && dx > 0.0, "forward difference needs a > 0 and dx > 0");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const double c = a / dx;
  for (int i = 0; i < n; ++i) {
    m(i, i) = -c;
    if (i + 1 < n) m(i, i + 1) = c;
  }
  return {std::move(m), Symmetrizer::identity(n),
          meta("upwind", {{"n", double(n)}, {"a", a}, {"dx", dx}})};
}

OperatorBundle centered_difference(int n, double a, double dx) {
  require(n >= 2, "centered difference needs n >= 2");
  require(dx > 0.0, "centered difference needs dx > 0");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const double c = 0.5 * a / dx;
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = c;
    m(i + 1, i) = -c;
  }
  return {std::move(m), Symmetrizer::identity(n),
          meta("centered", {{"n", double(n)}, {"a", a}, {"dx", dx}})};
}

OperatorBundle circulant(int n, const Stencil& st) {
  require(st.dx > 0.0, "circulant needs dx > 0");
  if (n <= st.width()) throw StencilTooWide("stencil wider than the periodic grid");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int alpha = st.lo; alpha <= st.hi; ++alpha) {
      const int j = ((i + alpha) % n + n) % n;
      m(i, j) += st.at(alpha) / st.dx;
    }
  return {std::move(m), Symmetrizer::identity(n), meta("circulant", {{"n", double(n)}})};
}

OperatorBundle lax_wendroff(int n, double a, double mesh_ratio, double dx) {
  require(n >= 5, "lax-wendroff needs n >= 5");
  OperatorBundle b = circulant(n, Stencil::lax_wendroff(a, mesh_ratio, dx));
  b.meta = meta("lw", {{"n", double(n)}, {"a", a}, {"mesh_ratio", mesh_ratio}, {"dx", dx}});
  return b;
}

OperatorBundle finite_element_4th(int n, double dx) {
  require(n >= 5, "fe4 needs n >= 5");
  require(dx > 0.0, "fe4 needs dx > 0");
  const Stencil mass{-1, 1, {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0}, 1.0};
  const ComplexMatrix m = circulant(n, mass).matrix;
  const ComplexMatrix c = circulant(n, Stencil::centered(1.0, dx)).matrix;
  // The mass symbol (2 + cos xi)/3 >= 1/3 keeps M invertible; guard anyway.
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const ComplexMatrix q = lu.solve(c);
  if (!q.allFinite()) throw MassMatrixSingular("fe4 mass matrix solve failed");
  return {q, Symmetrizer::identity(n), meta("fe4", {{"n", double(n)}, {"dx", dx}})};
}

VariableOperator variable_circulant(int n, const VariableStencil& st) {
  require(n > st.hi - st.lo, "variable stencil wider than the grid");
  require(std::abs(st.dx * n - 1.0) <= 1e-9, "variable stencil expects dx = 1/n");
  const int width = st.hi - st.lo + 1;
  require(static_cast<int>(st.coeff_fns.size()) == width, "coefficient count mismatch");

  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = i * st.dx;
    for (int alpha = st.lo; alpha <= st.hi; ++alpha) {
      const int j = ((i + alpha) % n + n) % n;
      m(i, j) += st.coeff_fns[static_cast<size_t>(alpha - st.lo)](x) / st.dx;
    }
  }

  // Locality sum_alpha alpha^2 max_x (|q| + |q'| + |q''|); the dx weight of
  // the written bound cancels against the 1/dx carried by the matrix entries,
  // so the estimate is mesh-independent for fixed coefficient functions.
  double locality = 0.0;
  for (int alpha = st.lo; alpha <= st.hi; ++alpha) {
    const auto& f = st.coeff_fns[static_cast<size_t>(alpha - st.lo)];
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double xm = ((i - 1 + n) % n) * st.dx, x0 = i * st.dx, xp = ((i + 1) % n) * st.dx;
      const double fm = f(xm), f0 = f(x0), fp = f(xp);
      const double d1 = (fp - fm) / (2.0 * st.dx);
      const double d2 = (fp - 2.0 * f0 + fm) / (st.dx * st.dx);
      worst = std::max(worst, std::abs(f0) + std::abs(d1) + std::abs(d2));
    }
    locality += double(alpha) * double(alpha) * worst;
  }
  return {{std::move(m), Symmetrizer::identity(n), meta("var", {{"n", double(n)}})}, locality};
}

OperatorBundle fourier_method(int n_modes, const Eigen::VectorXd& a_samples) {
  require(n_modes >= 1, "fourier method needs N >= 1");
  const int n = 2 * n_modes + 1;
  if (a_samples.size() != n)
    throw std::invalid_argument("fourier method needs 2N+1 coefficient samples");
  const double dx = 2.0 * M_PI / n;
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  // Upper triangle from the entry formula (phase differences stay below pi,
  // so the sine argument needs no further reduction); mirror for exact
  // antisymmetry.  The diagonal is the removable j = k singularity.
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double sign = (k - j) % 2 == 0 ? 1.0 : -1.0;
      d(j, k) = sign / (2.0 * std::sin(0.5 * (k - j) * dx));
      d(k, j) = -d(j, k);
    }
  ComplexMatrix q = a_samples.cast<std::complex<double>>().asDiagonal() * d;
  return {std::move(q), h1_symmetrizer(n_modes), meta("fourier", {{"N", double(n_modes)}})};
}

Symmetrizer h1_symmetrizer(int n_modes) {
  require(n_modes >= 1, "h1 symmetrizer needs N >= 1");
  const int n = 2 * n_modes + 1;
  const double dx = 2.0 * M_PI / n;
  ComplexMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(double(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f(j, k) = scale * std::polar(1.0, j * (k - n_modes) * dx);
  Eigen::VectorXd weights(n);
  for (int k = -n_modes; k <= n_modes; ++k)
    weights(k + n_modes) = (1.0 + double(k) * double(k)) / (double(n_modes) * double(n_modes));
  ComplexMatrix h = f * weights.cast<std::complex<double>>().asDiagonal() * f.adjoint();
  // conjugate-mode pairing makes H real symmetric; strip roundoff imaginary parts
  h = 0.5 * (h + h.adjoint());
  h = h.real().cast<std::complex<double>>();
  return Symmetrizer(h);
}

OperatorBundle ibvp_onesided(int n, double a, double dx) {
  require(n >= 3, "ibvp operator needs n >= 3");
  require(a > 0.0 && dx > 0.0, "ibvp operator needs a > 0 and dx > 0");
  const double c = a / dx;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(0, 0) = -c;
  m(0, 1) = c;
  for (int i = 1; i < n; ++i) {
    m(i, i - 1) = -0.5 * c;
    if (i + 1 < n) m(i, i + 1) = 0.5 * c;  // last row truncated by y(x_N) = 0
  }
  Eigen::VectorXd hdiag = Eigen::VectorXd::Ones(n);
  hdiag(0) = 0.5;
  Symmetrizer h{ComplexMatrix(hdiag.cast<std::complex<double>>().asDiagonal())};
  return {std::move(m), std::move(h), meta("ibvp1", {{"n", double(n)}, {"a", a}, {"dx", dx}})};
}

}  // namespace rklab
