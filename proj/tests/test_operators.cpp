// SPDX-License-Identifier: Apache-2.0

#include "rklab/operators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rklab/errors.hpp"
#include "rklab/numerical_range.hpp"

using namespace rklab;
using std::complex;

namespace {

// Fourier column v_k of the n-periodic grid; circulants act on it by their
// symbol value.
ComplexVector fourier_column(int n, int k) {
  ComplexVector v(n);
  for (int j = 0; j < n; ++j) v(j) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * M_PI * j * k / n);
  return v;
}

}  // namespace

TEST_CASE("jordan blocks") {
  const auto j = jordan_block(3, 0.0).matrix;
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 1) = 1.0;
  expected(1, 2) = 1.0;
  CHECK((j - expected).norm() == 0.0);

  CHECK((jordan_block(2, -1.0).matrix - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

  const auto j4 = jordan_block(4, 0.5).matrix;
  CHECK(j4(0, 0) == complex<double>(-0.5));
  CHECK(j4(2, 3) == complex<double>(1.5));
  CHECK(j4(3, 3) == complex<double>(-0.5));
}

TEST_CASE("forward difference and the Jordan link") {
  const auto d = forward_difference(2, 1.0, 1.0).matrix;
  ComplexMatrix expected(2, 2);
  expected << -1.0, 1.0, 0.0, -1.0;
  CHECK((d - expected).norm() == 0.0);

  // I + dt*D+ = J_q with q = a*lam - 1, entrywise exactly
  const int n = 16;
  const double a = 2.0, dx = 0.125, dt = 0.05;
  const auto op = forward_difference(n, a, dx);
  const double q = a * dt / dx - 1.0;
  const ComplexMatrix left = ComplexMatrix::Identity(n, n) + dt * op.matrix;
  CHECK((left - jordan_block(n, q).matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("circulant layout and errors") {
  const auto c = circulant(4, Stencil::centered(1.0, 0.5)).matrix;
  // (a/2dx)(E - E^{-1}) with periodic wrap: corners carry the opposite signs
  CHECK(c(0, 1) == complex<double>(1.0));
  CHECK(c(1, 0) == complex<double>(-1.0));
  CHECK(c(0, 3) == complex<double>(-1.0));
  CHECK(c(3, 0) == complex<double>(1.0));
  CHECK(c(0, 0) == complex<double>(0.0));

  const auto c4 = circulant(8, Stencil::centered4(1.0, 1.0)).matrix;
  CHECK(c4(0, 1) == complex<double>(8.0 / 12.0));
  CHECK(c4(0, 2) == complex<double>(-1.0 / 12.0));
  CHECK(c4(0, 6) == complex<double>(1.0 / 12.0));
  CHECK(c4(0, 7) == complex<double>(-8.0 / 12.0));

  const Stencil point{0, 0, {-1.0}, 0.25};
  CHECK((circulant(3, point).matrix + 4.0 * ComplexMatrix::Identity(3, 3)).norm() == 0.0);

  CHECK_THROWS_AS(circulant(4, Stencil::centered4(1.0, 1.0)), StencilTooWide);
}

TEST_CASE("upwind and centered symbols match the closed forms") {
  const Stencil up = Stencil::upwind(2.0, 0.5);
  for (double xi : {0.0, 0.4, 1.3, 2.6}) {
    const complex<double> expected = 4.0 * (std::polar(1.0, xi) - 1.0);
    CHECK(std::abs(symbol(up, xi) - expected) < 1e-13);
  }
  const Stencil cen = Stencil::centered(2.0, 0.5);
  for (double xi : {0.3, 1.1, 2.9}) {
    const complex<double> expected(0.0, 4.0 * std::sin(xi));
    CHECK(std::abs(symbol(cen, xi) - expected) < 1e-13);
    CHECK(std::abs(symbol(cen, xi).real()) < 1e-15);  // purely imaginary
  }
  // LW at xi = pi: -2*lam*a^2/dx
  const double a = 1.5, lam = 0.6, dx = 0.25;
  const Stencil lw = Stencil::lax_wendroff(a, lam, dx);
  CHECK(std::abs(symbol(lw, M_PI) - complex<double>(-2.0 * lam * a * a / dx, 0.0)) < 1e-13);
  CHECK(std::abs(symbol(lw, 0.0)) < 1e-15);
}

TEST_CASE("lax-wendroff keeps a negative symbol and the unit-disc map") {
  const double a = 1.0, dx = 1.0 / 32.0;
  for (double lam : {0.4, 1.0}) {
    const Stencil st = Stencil::lax_wendroff(a, lam, dx);
    const double dt = lam * dx / a;
    double worst = 0.0;
    for (int k = 0; k < 4096; ++k) {
      const double xi = 2.0 * M_PI * k / 4096;
      const complex<double> q = symbol(st, xi);
      CHECK(q.real() <= 1e-12);
      worst = std::max(worst, std::abs(1.0 + dt * q));
    }
    CHECK(worst <= 1.0 + 1e-12);
  }
}

TEST_CASE("fourth-order finite element difference") {
  const int n = 8;
  const double dx = 1.0 / n;
  const auto op = finite_element_4th(n, dx);

  // symbol ratio is purely imaginary: 3 i sin(xi) / (dx (2 + cos(xi)))
  const Stencil mass{-1, 1, {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0}, 1.0};
  const Stencil cen = Stencil::centered(1.0, dx);
  for (int k = 0; k < 64; ++k) {
    const double xi = 2.0 * M_PI * k / 64;
    const complex<double> q = symbol(cen, xi) / symbol(mass, xi);
    CHECK(std::abs(q.real()) < 1e-12);
  }

  // oracle: assemble the same operator from the Fourier eigenpairs
  ComplexMatrix fourier_built = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double xi = 2.0 * M_PI * k / n;
    const ComplexVector v = fourier_column(n, k);
    fourier_built += (symbol(cen, xi) / symbol(mass, xi)) * v * v.adjoint();
  }
  CHECK((op.matrix - fourier_built).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("variable-coefficient circulant") {
  SUBCASE("constant coefficients reduce to the circulant exactly") {
    const int n = 12;
    VariableStencil vst;
    vst.lo = -1;
    vst.hi = 1;
    vst.dx = 1.0 / n;
    vst.coeff_fns = {[](double) { return -0.5; }, [](double) { return 0.0; },
                     [](double) { return 0.5; }};
    const auto var = variable_circulant(n, vst);
    const auto fixed = circulant(n, Stencil::centered(1.0, 1.0 / n));
    CHECK((var.bundle.matrix - fixed.matrix).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("locality estimate is mesh-independent") {
    auto speed = [](double x) { return std::sin(2.0 * M_PI * x); };
    std::vector<double> localities;
    for (int n : {32, 64, 128}) {
      VariableStencil vst;
      vst.lo = 0;
      vst.hi = 1;
      vst.dx = 1.0 / n;
      vst.coeff_fns = {[speed](double x) { return -speed(x); }, speed};
      localities.push_back(variable_circulant(n, vst).locality);
    }
    const double lo = *std::min_element(localities.begin(), localities.end());
    const double hi = *std::max_element(localities.begin(), localities.end());
    CHECK(hi / lo <= 1.1);
  }
  SUBCASE("negative-symbol stencils stay semi-bounded as the grid refines") {
    auto speed = [](double x) { return 2.0 + std::sin(2.0 * M_PI * x); };
    std::vector<double> etas;
    for (int n : {32, 64, 128}) {
      VariableStencil vst;
      vst.lo = 0;
      vst.hi = 1;
      vst.dx = 1.0 / n;
      vst.coeff_fns = {[speed](double x) { return -speed(x); }, speed};
      const auto var = variable_circulant(n, vst);
      etas.push_back(0.5 * negativity_gap(var.bundle.matrix, var.bundle.symmetrizer));
    }
    for (double eta : etas) CHECK(eta <= 4.0);  // bounded despite ||Q|| = O(n)
  }
}

TEST_CASE("fourier differentiation matrix") {
  const int n_modes = 6, n = 2 * n_modes + 1;
  SUBCASE("unit speed: real antisymmetric with spectrum {ik}") {
    const auto op = fourier_method(n_modes, Eigen::VectorXd::Ones(n));
    CHECK(op.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK((op.matrix + op.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);  // exact
    Eigen::ComplexEigenSolver<ComplexMatrix> es(op.matrix, false);
    std::vector<double> imags;
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(es.eigenvalues()(k).real()) < 1e-10);
      imags.push_back(es.eigenvalues()(k).imag());
    }
    std::sort(imags.begin(), imags.end());
    for (int k = 0; k < n; ++k) CHECK(imags[size_t(k)] == doctest::Approx(k - n_modes).epsilon(1e-10));
    CHECK(operator_norm(op.matrix) == doctest::Approx(double(n_modes)).epsilon(1e-10));
  }
  SUBCASE("zero speed: zero operator") {
    const auto op = fourier_method(n_modes, Eigen::VectorXd::Zero(n));
    CHECK(op.matrix.norm() == 0.0);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(fourier_method(n_modes, Eigen::VectorXd::Ones(n + 1)), std::invalid_argument);
  }
}

TEST_CASE("h1 symmetrizer") {
  const int n_modes = 4, n = 2 * n_modes + 1;
  const auto h = h1_symmetrizer(n_modes);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  std::vector<double> expected;
  for (int k = -n_modes; k <= n_modes; ++k)
    expected.push_back((1.0 + k * k) / double(n_modes * n_modes));
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < n; ++k)
    CHECK(es.eigenvalues()(k) == doctest::Approx(expected[size_t(k)]).epsilon(1e-12));
  CHECK(h.lambda_min() == doctest::Approx(1.0 / double(n_modes * n_modes)).epsilon(1e-12));
  CHECK(h.matrix().imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK((h.matrix() - h.matrix().transpose()).cwiseAbs().maxCoeff() < 1e-15);

  // |u|_l2 <= N |u|_H for the discrete H^1 weight
  std::mt19937_64 rng(61);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexVector u(n);
    for (int i = 0; i < n; ++i) u(i) = complex<double>(gauss(rng), gauss(rng));
    CHECK(u.norm() <= n_modes * h.weighted_norm(u) * (1.0 + 1e-12));
  }
}

TEST_CASE("boundary-closed transport operator") {
  const int n = 8;
  const double a = 3.0, dx = 0.25;
  const auto op = ibvp_onesided(n, a, dx);
  const ComplexMatrix& l = op.matrix;
  CHECK(l(0, 0) == complex<double>(-a / dx));
  CHECK(l(0, 1) == complex<double>(a / dx));
  CHECK(l(n - 1, n - 2) == complex<double>(-0.5 * a / dx));
  CHECK(l(n - 1, n - 1) == complex<double>(0.0));

  // L^T H + H L collapses to the printed 2x2 corner, exactly
  const ComplexMatrix& h = op.symmetrizer.matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(n, n);
  expected(0, 0) = -a / dx;
  CHECK((l.adjoint() * h + h * l - expected).cwiseAbs().maxCoeff() == 0.0);

  CHECK(is_negative(l, op.symmetrizer, 0.0));
  CHECK(numerical_radius(l, op.symmetrizer, 1e-9) <= 2.0 * a / dx + 1e-9);
}

TEST_CASE("circulant spectral identity against Fourier columns") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 8 + 4 * (trial % 4);
    Stencil st;
    st.lo = -2;
    st.hi = 2;
    st.dx = 1.0 / n;
    st.weights = {unif(rng), unif(rng), unif(rng), unif(rng), unif(rng)};
    const auto op = circulant(n, st);
    for (int k = 0; k < n; ++k) {
      const ComplexVector v = fourier_column(n, k);
      const complex<double> expected = symbol(st, 2.0 * M_PI * k / n);
      CHECK((op.matrix * v - expected * v).norm() < 1e-9 * (1.0 + std::abs(expected)));
    }
  }
}

TEST_CASE("circulant numerical range equals the hull of symbol samples") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 8 + 8 * (trial % 3);
    Stencil st;
    st.lo = -1;
    st.hi = 2;
    st.dx = 0.5;
    st.weights = {unif(rng), unif(rng), unif(rng), unif(rng)};
    const auto op = circulant(n, st);
    std::vector<complex<double>> symbols;
    for (int j = 1; j <= n; ++j) symbols.push_back(symbol(st, 2.0 * M_PI * j / n));
    const auto rb = range_boundary(op.matrix, op.symmetrizer, 256);
    for (size_t k = 0; k < rb.angles.size(); ++k)
      CHECK(std::abs(rb.support[k] - RangeBoundary::hull_support(symbols, rb.angles[k])) < 1e-8);
  }
}
