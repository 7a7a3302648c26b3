// SPDX-License-Identifier: Apache-2.0

#include "rklab/stability_polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

#include "rklab/errors.hpp"

namespace rklab {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Longest prefix with |a_k - 1/k!| <= 1e-12; 0 when even a_0 deviates from 1.
int detect_order(const std::vector<double>& a) {
  int r = -1;
  for (size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - 1.0 / factorial(static_cast<int>(k))) > 1e-12) break;
    r = static_cast<int>(k);
  }
  return std::max(r, 0);
}

std::vector<double> derivative(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

double horner(const std::vector<double>& c, double x) {
  double acc = c.back();
  for (auto k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

// Magnitude scale of a Horner evaluation, for sign tests near roots.
double horner_scale(const std::vector<double>& c, double x) {
  double acc = std::abs(c.back());
  for (auto k = c.size() - 1; k-- > 0;) acc = acc * std::abs(x) + std::abs(c[k]);
  return acc;
}

// All real roots of a polynomial via companion-matrix eigenvalues.
std::vector<double> real_roots(const std::vector<double>& c) {
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && c[deg] == 0.0) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw EigenSolverError("companion eigensolve failed");
  std::vector<double> roots;
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z))) roots.push_back(z.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// A handful of Newton steps on h at u0; returns u0 when the iteration stalls.
double newton_polish(const std::vector<double>& h, const std::vector<double>& dh,
                     double u0, double tol) {
  double u = u0;
  for (int it = 0; it < 8; ++it) {
    const double hv = horner(h, u);
    const double dv = horner(dh, u);
    if (dv == 0.0) break;
    const double step = hv / dv;
    if (!std::isfinite(step)) break;
    u -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(u))) break;
  }
  // Reject a polish that wandered away from the bracket the root came from.
  if (!std::isfinite(u) || std::abs(u - u0) > 0.5 * std::max(1.0, std::abs(u0))) return u0;
  return u;
}

}  // namespace

StabilityPolynomial::StabilityPolynomial(std::vector<double> coeffs, std::string label)
    : coeffs_(std::move(coeffs)), label_(std::move(label)) {
  if (coeffs_.size() < 2)
    throw std::invalid_argument("stability polynomial needs degree >= 1");
  if (coeffs_.back() == 0.0)
    throw std::invalid_argument("leading coefficient a_s must be nonzero");
  for (double a : coeffs_)
    if (!std::isfinite(a)) throw std::invalid_argument("non-finite coefficient");
  order_r_ = detect_order(coeffs_);
}

StabilityPolynomial StabilityPolynomial::taylor(int stages) {
  if (stages < 1)
    throw std::invalid_argument("taylor polynomial needs at least one stage");
  std::vector<double> a(static_cast<size_t>(stages) + 1);
  for (int k = 0; k <= stages; ++k) a[k] = 1.0 / factorial(k);
  return StabilityPolynomial(std::move(a), "rk" + std::to_string(stages));
}

std::vector<double> StabilityPolynomial::modulus_gap_even_poly() const {
  // P(i s) = A(s) + i B(s) with A even, B odd; |P|^2 - 1 collects into a
  // polynomial in u = s^2.
  const int s = degree();
  std::vector<double> alpha, beta;  // A = sum alpha_j s^{2j},  B = s * sum beta_j s^{2j}
  for (int k = 0; k <= s; k += 2) alpha.push_back((k / 2) % 2 == 0 ? coeffs_[k] : -coeffs_[k]);
  for (int k = 1; k <= s; k += 2) beta.push_back(((k - 1) / 2) % 2 == 0 ? coeffs_[k] : -coeffs_[k]);
  std::vector<double> h(static_cast<size_t>(s) + 1, 0.0);
  for (size_t j = 0; j < alpha.size(); ++j)
    for (size_t l = 0; l < alpha.size(); ++l) h[j + l] += alpha[j] * alpha[l];
  for (size_t j = 0; j < beta.size(); ++j)
    for (size_t l = 0; l < beta.size(); ++l) h[j + l + 1] += beta[j] * beta[l];
  h[0] -= 1.0;
  return h;
}

double imaginary_interval_radius(const StabilityPolynomial& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const std::vector<double> h = p.modulus_gap_even_poly();
  const std::vector<double> dh = derivative(h);

  // Error envelope of the coefficient assembly: the same convolution on
  // |a_k|.  Values of h below this envelope are roundoff, not sign
  // information (the Taylor cases have exact-zero leading coefficients that
  // come out as ~1e-17 noise).
  std::vector<double> envelope(h.size(), 0.0);
  {
    const auto& a = p.coeffs();
    std::vector<double> alpha_abs, beta_abs;
    for (size_t k = 0; k < a.size(); k += 2) alpha_abs.push_back(std::abs(a[k]));
    for (size_t k = 1; k < a.size(); k += 2) beta_abs.push_back(std::abs(a[k]));
    for (size_t j = 0; j < alpha_abs.size(); ++j)
      for (size_t l = 0; l < alpha_abs.size(); ++l) envelope[j + l] += alpha_abs[j] * alpha_abs[l];
    for (size_t j = 0; j < beta_abs.size(); ++j)
      for (size_t l = 0; l < beta_abs.size(); ++l) envelope[j + l + 1] += beta_abs[j] * beta_abs[l];
    envelope[0] += 1.0;
  }

  // The sign of h just past 0 is the sign of the first coefficient that is
  // significant against its own assembly noise (the leading a_s^2 term always
  // qualifies, so a significant index exists).
  size_t lead = h.size() - 1;
  for (size_t k = 0; k < h.size(); ++k)
    if (std::abs(h[k]) > 1e-13 * envelope[k]) {
      lead = k;
      break;
    }
  if (h[lead] > 0.0) return 0.0;  // |P(i sigma)| > 1 immediately

  // Below this horizon the leading true term drowns in coefficient noise;
  // companion eigenvalues there are artifacts of the multiple root at 0.
  // Radii smaller than sqrt(u_floor) (~1e-4) are not certifiable in doubles.
  const double u_floor =
      lead == 0 ? 0.0 : std::pow(1e-12 * envelope[0] / std::abs(h[lead]), 1.0 / double(lead));

  auto positive_at = [&](double u) {
    return horner(h, u) > 1e-13 * horner_scale(envelope, u);
  };

  std::vector<double> roots;
  for (double u : real_roots(h))
    if (u > u_floor) roots.push_back(u);
  // Cluster near-coincident roots (tangencies split by roundoff).
  std::vector<double> distinct;
  for (double u : roots)
    if (distinct.empty() || u - distinct.back() > 1e-9 * std::max(1.0, u))
      distinct.push_back(u);

  if (distinct.empty()) return 0.0;  // unreachable: a_s^2 > 0 forces a crossing
  if (positive_at(0.5 * (u_floor + distinct.front()))) return 0.0;

  for (size_t i = 0; i < distinct.size(); ++i) {
    const double after =
        i + 1 < distinct.size() ? 0.5 * (distinct[i] + distinct[i + 1]) : 1.5 * distinct[i] + 1.0;
    if (positive_at(after)) {
      const double u = newton_polish(h, dh, distinct[i], tol);
      return std::sqrt(std::max(u, 0.0));
    }
  }
  return std::sqrt(distinct.back());
}

bool interval_condition_analytic(const StabilityPolynomial& p) {
  const int r = p.order();
  if (r < 1)
    throw std::invalid_argument(
        "interval criterion needs accuracy order >= 1 (P(0) = P'(0) = 1)");
  // Factorial-normalized coefficients k!*a_k, zero past the degree.
  auto normalized = [&](int k) {
    if (k > p.degree()) return 0.0;
    return factorial(k) * p.coeffs()[static_cast<size_t>(k)];
  };
  if (r % 2 == 1) {
    const double sign = ((r + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * (normalized(r + 1) - 1.0) < 0.0;
  }
  const double sign = ((r + 2) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * (normalized(r + 2) - (r + 2) * normalized(r + 1) + r + 1) < 0.0;
}

namespace {

// Max of |P(c e^{i theta})|^2 - 1 over the left arc, sampled with one Newton
// step on the phase derivative at sampled local maxima.
double arc_gap(const StabilityPolynomial& p, double c, int samples) {
  const double lo = M_PI / 2, hi = 3 * M_PI / 2;
  const double dtheta = (hi - lo) / (samples - 1);
  std::vector<double> phi(static_cast<size_t>(samples));
  auto gap_at = [&](double theta) {
    const std::complex<double> z = std::polar(c, theta);
    return std::norm(p.eval(z)) - 1.0;
  };
  for (int k = 0; k < samples; ++k) phi[static_cast<size_t>(k)] = gap_at(lo + k * dtheta);
  double best = std::max(phi.front(), phi.back());

  // Derivative data for the refinement step.
  std::vector<double> dc = derivative(p.coeffs());
  std::vector<double> ddc = derivative(dc);
  auto horner_c = [](const std::vector<double>& cf, std::complex<double> z) {
    std::complex<double> acc = cf.back();
    for (auto k = cf.size() - 1; k-- > 0;) acc = acc * z + cf[k];
    return acc;
  };
  for (int k = 1; k + 1 < samples; ++k) {
    const double v = phi[static_cast<size_t>(k)];
    best = std::max(best, v);
    if (v < phi[static_cast<size_t>(k - 1)] || v < phi[static_cast<size_t>(k + 1)]) continue;
    const double theta = lo + k * dtheta;
    const std::complex<double> z = std::polar(c, theta);
    const std::complex<double> pv = p.eval(z);
    const std::complex<double> dz = std::complex<double>(0, 1) * z;
    const std::complex<double> d1 = horner_c(dc, z) * dz;
    const std::complex<double> d2 = horner_c(ddc, z) * dz * dz - horner_c(dc, z) * z;
    const double dphi = 2.0 * std::real(std::conj(pv) * d1);
    const double ddphi = 2.0 * std::norm(d1) + 2.0 * std::real(std::conj(pv) * d2);
    if (ddphi < 0.0) {
      const double refined = theta - dphi / ddphi;
      if (std::abs(refined - theta) <= dtheta && refined >= lo && refined <= hi)
        best = std::max(best, gap_at(refined));
    }
  }
  return best;
}

// Max of |P(i sigma)|^2 - 1 over [0, c] via the even polynomial h(u), with one
// Newton step on h' at sampled local maxima.
double segment_gap(const StabilityPolynomial& p, double c, int samples) {
  const std::vector<double> h = p.modulus_gap_even_poly();
  const std::vector<double> dh = derivative(h);
  const std::vector<double> ddh = derivative(dh);
  const double du = c * c / (samples - 1);
  double best = std::max(horner(h, 0.0), horner(h, c * c));
  double prev = horner(h, 0.0), cur = horner(h, du);
  for (int k = 1; k + 1 < samples; ++k) {
    const double next = horner(h, (k + 1) * du);
    best = std::max(best, cur);
    if (cur >= prev && cur >= next) {
      const double u = k * du;
      const double d1 = horner(dh, u), d2 = horner(ddh, u);
      if (d2 < 0.0) {
        const double refined = u - d1 / d2;
        if (std::abs(refined - u) <= du && refined >= 0.0 && refined <= c * c)
          best = std::max(best, horner(h, refined));
      }
    }
    prev = cur;
    cur = next;
  }
  return best;
}

}  // namespace

SemiDisc inscribed_semidisc(const StabilityPolynomial& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double interval_radius = imaginary_interval_radius(p, std::min(tol, 1e-8));
  if (interval_radius <= 0.0)
    throw NoImaginaryInterval("no imaginary interval: semi-disc radius undefined for " +
                              (p.label().empty() ? std::string("polynomial") : p.label()));
  constexpr int kSamples = 4096;
  constexpr double kMembershipTol = 1e-12;
  auto inside = [&](double c) {
    return std::max(segment_gap(p, c, kSamples), arc_gap(p, c, kSamples)) <= kMembershipTol;
  };
  // The diameter already limits c to the interval radius; when the arc is the
  // binding constraint bisection finds the smaller radius (RK4).
  double hi = interval_radius;
  if (inside(hi)) return SemiDisc{hi};
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return SemiDisc{lo};
}

std::vector<SspTerm> ssp_decomposition(int stages) {
  switch (stages) {
    case 2:
      return {{0.5, 0}, {0.5, 2}};
    case 3:
      return {{1.0 / 3.0, 0}, {0.5, 1}, {1.0 / 6.0, 3}};
    case 4:
      return {{3.0 / 8.0, 0}, {1.0 / 3.0, 1}, {0.25, 2}, {1.0 / 24.0, 4}};
    default:
      throw std::invalid_argument("SSP decomposition available for s in {2,3,4}");
  }
}

std::vector<double> ssp_expand(const std::vector<SspTerm>& terms) {
  int max_power = 0;
  for (const auto& t : terms) max_power = std::max(max_power, t.power);
  std::vector<double> out(static_cast<size_t>(max_power) + 1, 0.0);
  for (const auto& t : terms) {
    // binomial row of (1+z)^m
    std::vector<double> binom(static_cast<size_t>(t.power) + 1, 0.0);
    binom[0] = 1.0;
    for (int i = 1; i <= t.power; ++i)
      for (int j = i; j >= 1; --j) binom[static_cast<size_t>(j)] += binom[static_cast<size_t>(j - 1)];
    for (size_t j = 0; j < binom.size(); ++j) out[j] += t.weight * binom[j];
  }
  return out;
}

RegionGrid region_grid(const StabilityPolynomial& p, const Bbox& box, int nx, int ny) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs nx, ny >= 2");
  if (!(box.re_max > box.re_min) || !(box.im_max > box.im_min))
    throw std::invalid_argument("degenerate bounding box");
  RegionGrid grid{box, nx, ny, {}};
  grid.values.resize(static_cast<size_t>(nx) * static_cast<size_t>(ny));
  for (int i = 0; i < ny; ++i)
    for (int j = 0; j < nx; ++j)
      grid.values[static_cast<size_t>(i) * nx + j] =
          std::abs(p.eval({grid.re_at(j), grid.im_at(i)}));
  return grid;
}

}  // namespace rklab
