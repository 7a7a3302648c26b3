// SPDX-License-Identifier: Apache-2.0

#include "rklab/numerical_range.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "rklab/errors.hpp"
#include "rklab/operators.hpp"

using namespace rklab;
using std::complex;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = complex<double>(gauss(rng), gauss(rng));
  return a;
}

Symmetrizer random_symmetrizer(std::mt19937_64& rng, int n) {
  const ComplexMatrix b = random_matrix(rng, n);
  return Symmetrizer(ComplexMatrix(b.adjoint() * b + 0.5 * ComplexMatrix::Identity(n, n)));
}

// Numerical radius by brute force over unit vectors on a coarse sphere
// parameterization; oracle for the 2x2 shift block.
double radius_brute_2x2(const ComplexMatrix& a, int steps) {
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double alpha = M_PI_2 * i / steps;
    for (int j = 0; j < steps; ++j) {
      const double phi = 2.0 * M_PI * j / steps;
      ComplexVector x(2);
      x << std::cos(alpha), std::polar(std::sin(alpha), phi);
      best = std::max(best, std::abs(complex<double>(x.dot(a * x))));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("symmetrizer validation and caching") {
  ComplexMatrix h(2, 2);
  h << 2.0, 0.0, 0.0, 0.5;
  const Symmetrizer s(h);
  CHECK(s.lambda_min() == doctest::Approx(0.5));
  CHECK(s.lambda_max() == doctest::Approx(2.0));
  CHECK(s.cond() == doctest::Approx(2.0));
  CHECK((s.sqrt() * s.sqrt() - h).norm() < 1e-14);
  CHECK((s.sqrt() * s.inv_sqrt() - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);

  ComplexMatrix bad(2, 2);
  bad << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(Symmetrizer{bad}, NotPositiveDefinite);
  ComplexMatrix asym(2, 2);
  asym << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(Symmetrizer{asym}, std::invalid_argument);
}

TEST_CASE("weighted transform") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_matrix(rng, 5);
  SUBCASE("identity weight is a no-op") {
    CHECK((Symmetrizer::identity(5).transform(a) - a).norm() == 0.0);
  }
  SUBCASE("commuting diagonals keep A fixed") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << complex<double>(1, 2), complex<double>(-3, 0), complex<double>(0, 1);
    Eigen::VectorXd w(3);
    w << 0.5, 2.0, 7.0;
    const Symmetrizer s{ComplexMatrix(w.cast<complex<double>>().asDiagonal())};
    CHECK((s.transform(d) - d).norm() < 1e-13);
  }
  SUBCASE("weighted negativity of the boundary-closed transport pair") {
    const auto op = ibvp_onesided(4, 1.0, 1.0);
    const ComplexMatrix at = weighted_transform(op.matrix, op.symmetrizer);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(at + at.adjoint());
    CHECK(es.eigenvalues().maxCoeff() <= 1e-12);
  }
  SUBCASE("the transform carries W_H to the plain numerical range") {
    const Symmetrizer h = random_symmetrizer(rng, 5);
    const ComplexMatrix at = weighted_transform(a, h);
    for (double theta : {0.0, 0.9, 2.2}) {
      CHECK(support_function(a, h, theta).value ==
            doctest::Approx(support_function(at, Symmetrizer::identity(5), theta).value)
                .epsilon(1e-11));
    }
  }
}

TEST_CASE("support function") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << -1.0, 3.0;
  const auto sp = support_function(d, Symmetrizer::identity(2), 0.0);
  CHECK(sp.value == doctest::Approx(3.0));
  CHECK(sp.witness.real() == doctest::Approx(3.0));
  CHECK(std::abs(sp.witness.imag()) < 1e-12);

  const auto j0 = jordan_block(8, 0.0);
  const double rho = std::cos(M_PI / 9.0);
  const auto s0 = support_function(j0.matrix, j0.symmetrizer, 0.0);
  CHECK(s0.value == doctest::Approx(rho).epsilon(1e-12));
  for (double theta : {0.3, 1.2, 2.9, 4.4}) {
    const auto st = support_function(j0.matrix, j0.symmetrizer, theta);
    CHECK(st.value == doctest::Approx(rho).epsilon(1e-12));  // rotation-invariant disc
    CHECK(std::real(std::polar(1.0, theta) * st.witness) == doctest::Approx(st.value));
  }
}

TEST_CASE("range boundary on normal and banded operators") {
  SUBCASE("normal matrix: hull of the spectrum") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d.diagonal() << complex<double>(0, 1), complex<double>(0, -1);
    const auto rb = range_boundary(d, Symmetrizer::identity(2), 64);
    for (const auto& z : rb.points) {
      CHECK(std::abs(z.real()) < 1e-12);
      CHECK(std::abs(z.imag()) <= 1.0 + 1e-12);
    }
  }
  SUBCASE("skew tridiagonal: imaginary segment of half-length a*lam*cos(pi/(N+1))") {
    const int n = 16;
    const double dt = 0.4;
    const auto op = centered_difference(n, 1.0, 1.0);
    const double r = dt * std::cos(M_PI / (n + 1));
    const auto rb = range_boundary(dt * op.matrix, op.symmetrizer, 128);
    for (size_t k = 0; k < rb.angles.size(); ++k) {
      CHECK(std::abs(rb.support[k] - r * std::abs(std::sin(rb.angles[k]))) < 1e-8);
      CHECK(std::abs(rb.points[k].real()) < 1e-8);
      CHECK(std::abs(rb.points[k].imag()) <= r + 1e-8);
    }
  }
  SUBCASE("one-sided difference: shifted disc |z + a*lam| = a*lam*cos(pi/(N+1))") {
    const int n = 16;
    const double dt = 1.0 / n;  // a*lam = 1 with dx = 1/n
    const auto op = forward_difference(n, 1.0, 1.0 / n);
    const double rho = std::cos(M_PI / (n + 1));
    const auto rb = range_boundary(dt * op.matrix, op.symmetrizer, 128);
    for (const auto& z : rb.points) CHECK(std::abs(std::abs(z + 1.0) - rho) < 1e-8);
  }
}

TEST_CASE("numerical radius") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << -1.0, 2.0;
  CHECK(numerical_radius(d, Symmetrizer::identity(2), 1e-10) == doctest::Approx(2.0));

  const auto j0 = jordan_block(8, 0.0);
  CHECK(numerical_radius(j0.matrix, j0.symmetrizer, 1e-10) ==
        doctest::Approx(std::cos(M_PI / 9.0)).epsilon(1e-10));

  ComplexMatrix shift(2, 2);
  shift << 0.0, 1.0, 0.0, 0.0;
  const double r = numerical_radius(shift, Symmetrizer::identity(2), 1e-10);
  CHECK(r == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r == doctest::Approx(radius_brute_2x2(shift, 400)).epsilon(1e-4));
}

TEST_CASE("negativity") {
  CHECK(is_negative(-ComplexMatrix::Identity(4, 4), Symmetrizer::identity(4), 0.0));

  const int n = 12;
  const auto up = forward_difference(n, 1.0, 1.0);
  // strict dissipativity margin -2(1 - cos(pi/(N+1)))
  const double gap = negativity_gap(up.matrix, up.symmetrizer);
  CHECK(gap == doctest::Approx(-2.0 * (1.0 - std::cos(M_PI / (n + 1)))).epsilon(1e-12));
  CHECK(is_negative(up.matrix, up.symmetrizer, 0.0));

  const auto jq = jordan_block(8, 0.5);
  CHECK_FALSE(is_negative(jq.matrix, jq.symmetrizer, 1e-9));
  // oracle: eigenvalues of J_q + J_q^T are -2q + 2(1+q)cos(k pi/(N+1))
  const double expected = -1.0 + 3.0 * std::cos(M_PI / 9.0);
  CHECK(negativity_gap(jq.matrix, jq.symmetrizer) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("coercivity constant") {
  CHECK(coercivity_constant(-ComplexMatrix::Identity(3, 3), Symmetrizer::identity(3), 64) ==
        doctest::Approx(2.0).epsilon(1e-9));

  const auto d0 = centered_difference(12, 1.0, 1.0);
  CHECK(coercivity_constant(d0.matrix, d0.symmetrizer, 128) == doctest::Approx(0.0));

  // shifted-disc case: infimum over the circle has the closed form 2/(c(1+rho))
  const int n = 16;
  const auto up = forward_difference(n, 1.0, 1.0 / n);  // c = a/dx = n
  const double dt = 1.0 / n;                            // a*lam = 1
  const ComplexMatrix a = dt * up.matrix;
  const double rho = std::cos(M_PI / (n + 1));
  const double beta = coercivity_constant(a, up.symmetrizer, 1024);
  CHECK(beta == doctest::Approx(2.0 / (1.0 + rho)).epsilon(1e-6));

  // random-vector oracle: interior quotients never undercut the boundary infimum
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ComplexVector x(n);
    for (int i = 0; i < n; ++i) x(i) = complex<double>(gauss(rng), gauss(rng));
    x.normalize();
    const complex<double> q = x.dot(a * x);
    if (std::abs(q) < 1e-12) continue;
    CHECK(-2.0 * q.real() / std::norm(q) >= beta - 1e-9);
  }

  CHECK_THROWS_AS(coercivity_constant(jordan_block(6, 0.5).matrix, Symmetrizer::identity(6), 64),
                  NotNegative);
}

TEST_CASE("disc property of the translation matrix") {
  const auto j0 = jordan_block(8, 0.0);
  const auto rb = range_boundary(j0.matrix, j0.symmetrizer, 128);
  const auto [lo, hi] = std::minmax_element(rb.support.begin(), rb.support.end());
  CHECK(*hi - *lo <= 1e-8);
}

TEST_CASE("spectrum is contained in the half-plane outer approximation") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 6;
    const ComplexMatrix a = random_matrix(rng, n);
    const auto rb = range_boundary(a, Symmetrizer::identity(n), 64);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
    for (Eigen::Index k = 0; k < n; ++k)
      for (size_t t = 0; t < rb.angles.size(); ++t)
        CHECK(std::real(std::polar(1.0, rb.angles[t]) * es.eigenvalues()(k)) <=
              rb.support[t] + 1e-8);
  }
}

TEST_CASE("weighted Halmos inequality on random pairs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pow_dist(2, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 5;
    const ComplexMatrix g = random_matrix(rng, n);
    const Symmetrizer h = random_symmetrizer(rng, n);
    const int k = pow_dist(rng);
    ComplexMatrix gk = ComplexMatrix::Identity(n, n);
    for (int i = 0; i < k; ++i) gk = (gk * g).eval();
    const double r1 = numerical_radius(g, h, 1e-10);
    const double rk = numerical_radius(gk, h, 1e-10);
    CHECK(rk <= std::pow(r1, k) * (1.0 + 1e-10));
  }
}

TEST_CASE("norm sandwich r <= ||A~|| <= 2r") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const ComplexMatrix a = random_matrix(rng, n);
    const Symmetrizer h = trial % 2 == 0 ? Symmetrizer::identity(n) : random_symmetrizer(rng, n);
    const double r = numerical_radius(a, h, 1e-10);
    const double norm = operator_norm(h.transform(a));
    CHECK(r <= norm * (1.0 + 1e-10));
    CHECK(norm <= 2.0 * r * (1.0 + 1e-10));
  }
}

TEST_CASE("boundary points are covariant under real translation and dilation") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> alpha_dist(0.1, 2.0), beta_dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 4;
    const ComplexMatrix a = random_matrix(rng, n);
    const double alpha = alpha_dist(rng), beta = beta_dist(rng);
    const ComplexMatrix b = alpha * a + beta * ComplexMatrix::Identity(n, n);
    const auto rba = range_boundary(a, Symmetrizer::identity(n), 32);
    const auto rbb = range_boundary(b, Symmetrizer::identity(n), 32);
    for (size_t k = 0; k < rba.points.size(); ++k)
      CHECK(std::abs(rbb.points[k] - (alpha * rba.points[k] + beta)) < 1e-10 * (1.0 + alpha));
  }
}

TEST_CASE("operator norm matches Eigen's SVD") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 3 + trial % 8);
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    CHECK(operator_norm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-11));
  }
}
