// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace rklab {

/// Amplification polynomial P(z) = sum a_k z^k of an explicit s-stage
/// Runge-Kutta method applied to u' = L u, so that u_{n+1} = P(dt L) u_n.
///
/// The accuracy order r is the longest prefix with a_k = 1/k! (detected to
/// 1e-12); degree >= 1 and a_s != 0 are enforced on construction.
class StabilityPolynomial {
 public:
  explicit StabilityPolynomial(std::vector<double> coeffs, std::string label = "");

  /// Taylor polynomial sum_{k<=s} z^k/k!: the classical RK1..RK4 family
  /// (forward Euler, Heun, Kutta, 4-stage RK) and its extensions.
  static StabilityPolynomial taylor(int stages);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int order() const { return order_r_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::string& label() const { return label_; }

  /// Horner evaluation; works for any scalar with +,* (double, complex, ...).
  template <typename Scalar>
  Scalar operator()(const Scalar& z) const {
    Scalar acc = Scalar(coeffs_.back());
    for (auto k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + Scalar(coeffs_[k]);
    return acc;
  }

  std::complex<double> eval(std::complex<double> z) const { return (*this)(z); }

  /// Membership in the region of absolute stability {|P(z)| <= 1 + tol}.
  bool in_region(std::complex<double> z, double tol = 1e-12) const {
    return std::abs(eval(z)) <= 1.0 + tol;
  }

  /// |P(i*sigma)|^2 - 1 as a polynomial in u = sigma^2 (even in sigma since
  /// the coefficients are real).  Coefficient k multiplies u^k.
  std::vector<double> modulus_gap_even_poly() const;

 private:
  std::vector<double> coeffs_;
  int order_r_ = 0;
  std::string label_;
};

/// Largest R >= 0 with |P(i sigma)| <= 1 for all |sigma| <= R.  Computed from
/// the real roots of |P(i sigma)|^2 - 1 (companion-matrix eigenvalues in
/// u = sigma^2, Newton-polished to `tol`), walking past sign-preserving
/// tangencies such as the double root of RK3 at sigma = sqrt(3).
double imaginary_interval_radius(const StabilityPolynomial& p, double tol = 1e-8);

/// Kreiss-Wu sign test on the first coefficients past the Taylor prefix;
/// equivalent to imaginary_interval_radius(p) > 0.  The test uses the
/// factorial-normalized coefficients k!*a_k.  Requires order >= 1.
bool interval_condition_analytic(const StabilityPolynomial& p);

/// Half disc {Re z <= 0, |z| <= radius}.
struct SemiDisc {
  double radius;
};

/// Largest semi-disc B^-_c contained in the absolute stability region,
/// bisected to `tol`.  Containment is tested on the boundary of B^-_c only
/// (diameter segment plus left arc, densely sampled with one Newton
/// refinement of local maxima), which suffices since P is analytic.
/// Throws NoImaginaryInterval when the interval radius vanishes.
SemiDisc inscribed_semidisc(const StabilityPolynomial& p, double tol = 1e-8);

/// One term b_j (I + dt L)^{m_j} of a strong-stability-preserving convex
/// combination.
struct SspTerm {
  double weight;
  int power;
};

/// Convex combination sum b_j (1+z)^{m_j} identical to the Taylor polynomial
/// of degree s, for s in {2, 3, 4}; all b_j > 0 and sum b_j = 1.
std::vector<SspTerm> ssp_decomposition(int stages);

/// Expand sum b_j (1+z)^{m_j} into monomial coefficients.
std::vector<double> ssp_expand(const std::vector<SspTerm>& terms);

struct Bbox {
  double re_min, re_max, im_min, im_max;
};

/// |P(z)| sampled on a uniform nx-by-ny grid over `box`, row-major:
/// values[i*nx + j] holds the sample at (re_j, im_i).  The level set
/// {value <= 1} is the region of absolute stability.
struct RegionGrid {
  Bbox box;
  int nx = 0, ny = 0;
  std::vector<double> values;

  double re_at(int j) const { return box.re_min + (box.re_max - box.re_min) * j / (nx - 1); }
  double im_at(int i) const { return box.im_min + (box.im_max - box.im_min) * i / (ny - 1); }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * nx + j]; }
};

RegionGrid region_grid(const StabilityPolynomial& p, const Bbox& box, int nx, int ny);

}  // namespace rklab
