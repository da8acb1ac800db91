#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/numerics.hpp"

namespace blaschke {

/// Slack allowed on |z| <= 1 for points fed to disk maps.
inline constexpr Real kDiskSlack = 1e-9;
inline constexpr Real kUnimodularSlack = 1e-6;
inline constexpr Real kMaxInteriorModulus = 1 - 1e-12;

inline void require_closed_disk(Complex z) {
  require_finite(z, "argument");
  if (std::abs(z) > 1 + kDiskSlack)
    fail(ErrorKind::DomainError, "point lies outside the closed unit disk");
}

/// Disk automorphism z -> c (z - alpha) / (1 - conj(alpha) z), |c| = 1, |alpha| < 1.
class MoebiusTransform {
 public:
  MoebiusTransform() = default;

  MoebiusTransform(Complex c, Complex alpha) : c_(c), alpha_(alpha) {
    require_finite(c, "rotation constant");
    require_finite(alpha, "pole parameter");
    if (std::abs(std::abs(c) - 1) > kUnimodularSlack)
      fail(ErrorKind::DomainError, "rotation constant must have modulus one");
    if (std::abs(alpha) > kMaxInteriorModulus)
      fail(ErrorKind::DomainError, "pole parameter must lie in the open unit disk");
    if (const Real m = std::abs(c_); std::abs(m - 1) > 4 * std::numeric_limits<Real>::epsilon()) c_ /= m;
  }

  static MoebiusTransform identity() { return {}; }
  static MoebiusTransform rotation(Complex c) { return {c, Complex{}}; }

  Complex c() const noexcept { return c_; }
  Complex alpha() const noexcept { return alpha_; }

  Complex operator()(Complex z) const {
    require_closed_disk(z);
    return c_ * (z - alpha_) / (Real(1) - std::conj(alpha_) * z);
  }

  MoebiusTransform inverse() const { return {std::conj(c_), -c_ * alpha_}; }

  /// Coefficient matrix [[c, -c alpha], [-conj(alpha), 1]] acting by (a z + b) / (c z + d).
  std::array<Complex, 4> matrix() const noexcept {
    return {c_, -c_ * alpha_, -std::conj(alpha_), Complex{1}};
  }

  /// Max deviation of (c, alpha) from the identity's (1, 0).
  Real distance_to_identity() const noexcept {
    return std::max(std::abs(c_ - Real(1)), std::abs(alpha_));
  }

  Real distance(const MoebiusTransform& other) const noexcept {
    return std::max(std::abs(c_ - other.c_), std::abs(alpha_ - other.alpha_));
  }

 private:
  Complex c_{1};
  Complex alpha_{};
};

/// Normalizes a 2x2 coefficient matrix back to (c, alpha) form.
inline MoebiusTransform moebius_from_matrix(const std::array<Complex, 4>& m) {
  const auto [p, q, r, s] = m;
  if (s == Complex{} || p == Complex{})
    fail(ErrorKind::NormalizationError, "coefficient matrix is not a disk automorphism");
  const Complex c = p / s;
  if (std::abs(std::abs(c) - 1) > 1e-9)
    fail(ErrorKind::NormalizationError,
         "composite rotation constant deviates from modulus one by " +
             std::to_string(std::abs(std::abs(c) - 1)));
  const Complex alpha = -q / p;
  if (std::abs(alpha) > kMaxInteriorModulus)
    fail(ErrorKind::NormalizationError, "composite pole parameter left the unit disk");
  (void)r;
  return {c / std::abs(c), alpha};
}

/// a ∘ b.
inline MoebiusTransform moebius_compose(const MoebiusTransform& a, const MoebiusTransform& b) {
  const auto x = a.matrix();
  const auto y = b.matrix();
  return moebius_from_matrix({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                              x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]});
}

/// M^[k] by repeated squaring; k = 0 gives the identity.
inline MoebiusTransform moebius_power(const MoebiusTransform& m, std::size_t k) {
  MoebiusTransform result;
  MoebiusTransform base = m;
  while (k > 0) {
    if (k & 1U) result = moebius_compose(result, base);
    k >>= 1U;
    if (k > 0) base = moebius_compose(base, base);
  }
  return result;
}

inline Complex moebius_eval(const MoebiusTransform& m, Complex z) { return m(z); }

struct OrbitReport {
  std::vector<Complex> points;  // 0, M(0), ..., M^{n-1}(0)
  bool closes = false;
  Real min_pairwise_gap = std::numeric_limits<Real>::infinity();
};

/// Default closure tolerance for |M^n(0)|; loose enough for constants quoted to six decimals.
inline constexpr Real kOrbitClosureTol = 1e-5;

inline Real min_pairwise_gap(std::span<const Complex> pts) {
  Real gap = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) gap = std::min(gap, std::abs(pts[i] - pts[j]));
  return gap;
}

inline OrbitReport moebius_iterate_zero(const MoebiusTransform& m, std::size_t n,
                                        Real closure_tol = kOrbitClosureTol) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "orbit length must be positive");
  OrbitReport report;
  report.points.reserve(n);
  Complex z{};
  for (std::size_t k = 0; k < n; ++k) {
    report.points.push_back(z);
    z = m(z);
  }
  report.closes = std::abs(z) <= closure_tol;
  report.min_pairwise_gap = min_pairwise_gap(report.points);
  return report;
}

/// Identity threshold on normalized parameters.
inline constexpr Real kIdentityTol = 1e-8;

/// Smallest k <= cap with M^[k] = I, if any.
inline std::optional<std::size_t> moebius_order(const MoebiusTransform& m, std::size_t cap,
                                                Real tol = kIdentityTol) {
  if (cap == 0) fail(ErrorKind::InvalidArgument, "order cap must be positive");
  MoebiusTransform power = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (power.distance_to_identity() <= tol) return k;
    power = moebius_compose(power, m);
  }
  return std::nullopt;
}

/// Fixed point of M strictly inside the disk: root of conj(alpha) z^2 + (c-1) z - c alpha.
inline std::optional<Complex> moebius_fixed_point_in_disk(const MoebiusTransform& m) {
  const Complex alpha = m.alpha();
  const Complex c = m.c();
  if (alpha == Complex{}) return Complex{};
  const Complex a = std::conj(alpha);
  const Complex b = c - Real(1);
  const Complex k = -c * alpha;
  const Complex disc = std::sqrt(b * b - Real(4) * a * k);
  // Pick the numerically stable pairing of roots.
  const Complex q = (std::real(std::conj(b) * disc) >= 0) ? -(b + disc) / Real(2) : -(b - disc) / Real(2);
  std::array<Complex, 2> roots{q / a, k / q};
  if (q == Complex{}) roots = {Complex{}, Complex{}};
  std::optional<Complex> best;
  for (const Complex& r : roots) {
    if (std::abs(r) < 1 - 1e-10 && (!best || std::abs(r) < std::abs(*best))) best = r;
  }
  return best;
}

struct UnimodularSolution {
  Complex c;
  OrbitReport orbit;
};

/// The (1,2) entry of A(c)^n for A(c) = [[c, -c alpha], [-conj(alpha), 1]] as a
/// polynomial in c. Its zeros are the rotation constants with M^n(0) = 0.
inline ComplexPolynomial orbit_closure_polynomial(Complex alpha, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "orbit length must be positive");
  using P = ComplexPolynomial;
  using Mat = std::array<P, 4>;
  auto mul = [](const Mat& x, const Mat& y) -> Mat {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
  };
  const Mat base{P{Complex{}, Complex{1}}, P{Complex{}, -alpha}, P::constant(-std::conj(alpha)),
                 P::constant(Complex{1})};
  Mat result{P::constant(Complex{1}), P(), P(), P::constant(Complex{1})};
  Mat power = base;
  std::size_t k = n;
  while (k > 0) {
    if (k & 1U) result = mul(result, power);
    k >>= 1U;
    if (k > 0) power = mul(power, power);
  }
  return result[1];
}

/// Unimodular c (c != 1) for which M(z) = c (z - alpha)/(1 - conj(alpha) z)
/// closes the orbit of 0 after exactly n distinct steps.
///
/// `distinct_tol` rejects orbits whose points collide (pass 0 to admit
/// degenerate orbits, e.g. a period dividing n).
inline std::vector<UnimodularSolution> solve_unimodular_c(Complex alpha, std::size_t n,
                                                          Real distinct_tol = 1e-7,
                                                          Real unimodular_tol = 1e-6) {
  require_finite(alpha, "alpha");
  if (alpha == Complex{}) fail(ErrorKind::InvalidArgument, "alpha must be nonzero");
  if (std::abs(alpha) > kMaxInteriorModulus)
    fail(ErrorKind::DomainError, "alpha must lie in the open unit disk");
  if (n < 2) fail(ErrorKind::InvalidArgument, "orbit length must be at least 2");

  const auto poly = orbit_closure_polynomial(alpha, n);
  const auto roots = poly_roots(poly);
  auto candidates = filter_unimodular<Complex>(roots, unimodular_tol);
  std::sort(candidates.begin(), candidates.end(),
            [](Complex a, Complex b) { return positive_arg(a) < positive_arg(b); });

  std::vector<UnimodularSolution> out;
  for (const Complex& c : candidates) {
    if (std::abs(c - Real(1)) <= kIdentityTol) continue;
    bool duplicate = false;
    for (const auto& s : out) duplicate = duplicate || std::abs(s.c - c) <= 1e-6;
    if (duplicate) continue;
    const MoebiusTransform m(c, alpha);
    auto orbit = moebius_iterate_zero(m, n, 1e-8);
    if (!orbit.closes || orbit.min_pairwise_gap < distinct_tol) continue;
    out.push_back({c, std::move(orbit)});
  }
  if (out.empty())
    fail(ErrorKind::NoSolution, "no unimodular constant closes the orbit with distinct points");
  return out;
}

}  // namespace blaschke
