#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/numerics.hpp"

namespace blaschke {

/// A zero closer than this to the origin counts as the origin.
inline constexpr Real kOriginTol = 1e-12;

/// Finite Blaschke product  constant * prod (z - a_k) / (1 - conj(a_k) z).
///
/// Zeros are a multiset: multiplicity is carried by repetition and their
/// order is preserved exactly as given.
class BlaschkeProduct {
 public:
  BlaschkeProduct(Complex constant, std::vector<Complex> zeros)
      : constant_(constant), zeros_(std::move(zeros)) {
    require_finite(constant_, "product constant");
    if (std::abs(std::abs(constant_) - 1) > kUnimodularSlack)
      fail(ErrorKind::DomainError, "product constant must have modulus one");
    // Renormalize only off-circle input so serialized products read back bit-exact.
    if (const Real m = std::abs(constant_); std::abs(m - 1) > 4 * std::numeric_limits<Real>::epsilon()) constant_ /= m;
    if (zeros_.empty()) fail(ErrorKind::DomainError, "a Blaschke product needs at least one zero");
    for (const Complex& a : zeros_) {
      require_finite(a, "zero");
      if (std::abs(a) > kMaxInteriorModulus)
        fail(ErrorKind::DomainError, "zeros must lie in the open unit disk");
    }
  }

  explicit BlaschkeProduct(std::vector<Complex> zeros) : BlaschkeProduct(Complex{1}, std::move(zeros)) {}

  /// z^n.
  static BlaschkeProduct power(std::size_t n) { return BlaschkeProduct(std::vector<Complex>(n, Complex{})); }

  Complex constant() const noexcept { return constant_; }
  const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  std::size_t degree() const noexcept { return zeros_.size(); }

  Complex operator()(Complex z) const {
    require_closed_disk(z);
    return eval_unchecked(z);
  }

  /// Evaluation without the closed-disk guard; callers guarantee 1 - conj(a) z != 0.
  Complex eval_unchecked(Complex z) const noexcept {
    Complex acc = constant_;
    for (const Complex& a : zeros_) acc *= (z - a) / (Real(1) - std::conj(a) * z);
    return acc;
  }

  /// constant * prod (z - a_k).
  ComplexPolynomial numerator() const {
    return ComplexPolynomial::from_roots(std::span<const Complex>(zeros_)) * constant_;
  }

  /// prod (1 - conj(a_k) z).
  ComplexPolynomial denominator() const {
    ComplexPolynomial d = ComplexPolynomial::constant(Complex{1});
    for (const Complex& a : zeros_) d = d * ComplexPolynomial{Complex{1}, -std::conj(a)};
    return d;
  }

 private:
  Complex constant_;
  std::vector<Complex> zeros_;
};

inline Complex blaschke_eval(const BlaschkeProduct& b, Complex z) { return b(z); }

inline bool is_canonical(const BlaschkeProduct& b) {
  if (std::abs(b.constant() - Real(1)) > 1e-9) return false;
  return std::any_of(b.zeros().begin(), b.zeros().end(),
                     [](Complex a) { return std::abs(a) <= kOriginTol; });
}

struct CanonicalForm {
  BlaschkeProduct product;
  bool is_canonical;
};

inline CanonicalForm canonical_form(BlaschkeProduct b) {
  const bool canon = is_canonical(b);
  return {std::move(b), canon};
}

/// Index of the zero playing the role of the leading z factor (closest to the origin).
inline std::size_t origin_zero_index(const BlaschkeProduct& b) {
  const auto& z = b.zeros();
  std::size_t best = 0;
  for (std::size_t k = 1; k < z.size(); ++k)
    if (std::abs(z[k]) < std::abs(z[best])) best = k;
  if (std::abs(z[best]) > kOriginTol) fail(ErrorKind::BadShape, "product has no zero at the origin");
  return best;
}

/// Probe points for the n-point agreement oracle: n+1 points equispaced on the
/// circle of radius 1/2, pulled in to 0.47 if a probe meets a pole reflection.
inline std::vector<Complex> equality_probes(std::size_t degree, std::span<const Complex> zeros = {}) {
  const std::size_t m = degree + 1;
  auto make = [m](Real radius) {
    std::vector<Complex> pts(m);
    for (std::size_t k = 0; k < m; ++k)
      pts[k] = std::polar(radius, 2 * std::numbers::pi * Real(k) / Real(m));
    return pts;
  };
  auto pts = make(0.5);
  for (const Complex& a : zeros) {
    if (a == Complex{}) continue;
    const Complex pole = Real(1) / std::conj(a);
    for (const Complex& p : pts)
      if (std::abs(p - pole) <= 1e-9) return make(0.47);
  }
  return pts;
}

/// Max |f(z) - g(z)| over the agreement probes for degree `degree`.
template <class F, class G>
Real max_probe_deviation(const F& f, const G& g, std::size_t degree) {
  Real dev = 0;
  for (const Complex& z : equality_probes(degree)) dev = std::max(dev, std::abs(f(z) - g(z)));
  return dev;
}

/// Max deviation of two equal-degree products over the agreement probes.
inline Real blaschke_distance(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  if (a.degree() != b.degree()) fail(ErrorKind::InvalidArgument, "degrees differ");
  std::vector<Complex> all(a.zeros());
  all.insert(all.end(), b.zeros().begin(), b.zeros().end());
  Real dev = 0;
  for (const Complex& z : equality_probes(a.degree(), all))
    dev = std::max(dev, std::abs(a.eval_unchecked(z) - b.eval_unchecked(z)));
  return dev;
}

/// Equality of two products of degree n from agreement at n+1 interior points.
inline bool blaschke_equal(const BlaschkeProduct& a, const BlaschkeProduct& b, Real tol = 1e-8) {
  if (a.degree() != b.degree()) return false;
  return blaschke_distance(a, b) <= tol;
}

/// Roots of numerator(inner) - value * denominator(inner): the points with inner(z) = value.
inline std::vector<Complex> solve_product_equals(const BlaschkeProduct& b, Complex value) {
  return poly_roots(b.numerator() - b.denominator() * value);
}

/// outer ∘ inner, with zeros found as preimages under `inner` of the zeros of `outer`.
inline BlaschkeProduct blaschke_compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner) {
  std::vector<Complex> zeros;
  zeros.reserve(outer.degree() * inner.degree());
  for (const Complex& w : outer.zeros()) {
    for (Complex z : solve_product_equals(inner, w)) {
      const Real m = std::abs(z);
      if (m > kMaxInteriorModulus) {
        if (m > 1 + 1e-9) fail(ErrorKind::NormalizationError, "composite zero left the unit disk");
        z *= kMaxInteriorModulus / m;
      }
      zeros.push_back(z);
    }
  }
  const Complex probe{1};
  Complex plain{1};
  for (const Complex& a : zeros) plain *= (probe - a) / (Real(1) - std::conj(a) * probe);
  const Complex constant = outer(inner(probe)) / plain;
  const Real deviation = std::abs(std::abs(constant) - 1);
  if (deviation > 1e-6)
    fail(ErrorKind::NormalizationError,
         "recovered composite constant deviates from modulus one by " + std::to_string(deviation));
  return BlaschkeProduct(constant / std::abs(constant), std::move(zeros));
}

/// The n points on the unit circle where B(z) = lambda, sorted by argument in [0, 2 pi).
inline std::vector<Complex> blaschke_preimages(const BlaschkeProduct& b, Complex lambda) {
  require_finite(lambda, "lambda");
  if (std::abs(std::abs(lambda) - 1) > 1e-9)
    fail(ErrorKind::DomainError, "lambda must lie on the unit circle");
  auto roots = solve_product_equals(b, lambda);
  for (Complex& z : roots) {
    const Real m = std::abs(z);
    if (std::abs(m - 1) > 1e-8)
      fail(ErrorKind::NonConvergence,
           "preimage off the unit circle by " + std::to_string(std::abs(m - 1)));
    z /= m;
  }
  std::sort(roots.begin(), roots.end(),
            [](Complex x, Complex y) { return positive_arg(x) < positive_arg(y); });
  return roots;
}

}  // namespace blaschke
