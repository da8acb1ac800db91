#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "blaschke/error.hpp"

namespace blaschke {

using Real = double;
using Complex = std::complex<Real>;

template <class T>
struct is_complex : std::false_type {};
template <std::floating_point R>
struct is_complex<std::complex<R>> : std::true_type {};

template <class T>
concept ComplexScalar = is_complex<T>::value;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) fail(ErrorKind::DomainError, std::string(what) + " is not finite");
}

/// Relative modulus below which leading coefficients are dropped.
inline constexpr Real kLeadingTrim = 1e-14;

/// Dense polynomial with coefficients in ascending degree order.
///
/// The leading coefficient is trimmed relative to the largest coefficient on
/// construction, so `degree()` is always the numerically meaningful degree.
/// The zero polynomial is representable (single zero coefficient) so that
/// symbolic expansions can pass through it; root finding rejects it.
template <ComplexScalar T>
class Polynomial {
 public:
  using value_type = T;
  using real_type = typename T::value_type;

  Polynomial() : coeffs_{T{}} {}
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  static Polynomial constant(T value) { return Polynomial({value}); }
  static Polynomial monomial(T value, std::size_t power) {
    std::vector<T> c(power + 1, T{});
    c[power] = value;
    return Polynomial(std::move(c));
  }

  /// Monic polynomial with the given roots.
  static Polynomial from_roots(std::span<const T> roots) {
    std::vector<T> c{T{1}};
    for (const T& r : roots) {
      c.push_back(T{});
      for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
      c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const T> coeffs() const noexcept { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_.at(k); }
  const T& leading() const noexcept { return coeffs_.back(); }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == T{}; }

  real_type max_coeff_modulus() const noexcept {
    real_type m = 0;
    for (const T& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Horner evaluation.
  T operator()(T z) const noexcept {
    T acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (degree() == 0) return Polynomial();
    std::vector<T> d(degree());
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * real_type(k);
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.coeffs_.size(), b.coeffs_.size()), T{});
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b * T{-1};
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, T s) {
    std::vector<T> c(a.coeffs_);
    for (T& x : c) x *= s;
    return Polynomial(std::move(c));
  }

 private:
  void normalize() {
    if (coeffs_.empty()) coeffs_.push_back(T{});
    for (const T& c : coeffs_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        fail(ErrorKind::DomainError, "polynomial coefficient is not finite");
    const real_type cut = kLeadingTrim * max_coeff_modulus();
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
    if (coeffs_.size() == 1 && std::abs(coeffs_[0]) == 0) coeffs_[0] = T{};
  }

  std::vector<T> coeffs_;
};

using ComplexPolynomial = Polynomial<Complex>;

template <ComplexScalar T>
T poly_eval(const Polynomial<T>& p, T z) noexcept {
  return p(z);
}

struct RootFinderOptions {
  std::size_t max_sweeps = 1000;
  /// Residual target relative to the largest coefficient modulus.
  Real relative_residual = 1e-12;
};

/// All roots of `p` (with multiplicity) by Aberth-Ehrlich simultaneous
/// iteration.
///
/// Roots at the origin are deflated exactly first. Starting points sit on a
/// circle of radius 1 + max|a_k / a_n| (the Cauchy bound), rotated off the
/// real axis. A root is frozen once its residual meets the relative target or
/// falls to the rounding level sum |a_k||z|^k * eps; iteration stops when all
/// roots are frozen.
template <ComplexScalar T>
std::vector<T> poly_roots(const Polynomial<T>& p, RootFinderOptions opts = {}) {
  using R = typename T::value_type;
  if (p.is_zero()) fail(ErrorKind::DomainError, "roots of the zero polynomial are undefined");
  if (p.degree() == 0) fail(ErrorKind::DomainError, "poly_roots requires degree >= 1");

  auto c = p.coeffs();
  std::size_t shift = 0;
  while (c[shift] == T{}) ++shift;
  std::vector<T> roots(shift, T{});
  std::vector<T> a(c.begin() + static_cast<std::ptrdiff_t>(shift), c.end());
  const std::size_t n = a.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-a[0] / a[1]);
    return roots;
  }

  std::vector<R> abs_a(a.size());
  for (std::size_t k = 0; k <= n; ++k) abs_a[k] = std::abs(a[k]);
  R max_ratio = 0;
  for (std::size_t k = 0; k < n; ++k) max_ratio = std::max(max_ratio, abs_a[k] / abs_a[n]);
  R max_abs = *std::max_element(abs_a.begin(), abs_a.end());
  const R radius = 1 + max_ratio;
  const R eps = std::numeric_limits<R>::epsilon();

  std::vector<T> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const R theta = 2 * std::numbers::pi_v<R> * R(k) / R(n) + R(0.4);
    z[k] = std::polar(radius, theta);
  }

  auto eval = [&](T x, T& value, T& slope, R& scale) {
    value = a[n];
    slope = T{};
    scale = abs_a[n];
    const R ax = std::abs(x);
    for (std::size_t k = n; k-- > 0;) {
      slope = slope * x + value;
      value = value * x + a[k];
      scale = scale * ax + abs_a[k];
    }
  };

  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      T value, slope;
      R scale;
      eval(z[i], value, slope, scale);
      const R res = std::abs(value);
      if (res <= opts.relative_residual * max_abs || res <= 8 * R(n) * eps * scale) {
        done[i] = true;
        --remaining;
        continue;
      }
      if (slope == T{}) {
        z[i] += T(std::sqrt(eps), std::sqrt(eps));
        continue;
      }
      const T newton = value / slope;
      T repulsion{};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) repulsion += T{1} / (z[i] - z[j]);
      const T correction = newton / (T{1} - newton * repulsion);
      z[i] -= correction;
      if (std::abs(correction) <= eps * std::abs(z[i])) {
        done[i] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0)
    fail(ErrorKind::NonConvergence,
         "Aberth-Ehrlich iteration did not converge within " + std::to_string(opts.max_sweeps) +
             " sweeps");
  // A root frozen on a vanishing step must still pass the residual contract.
  for (const T& x : z) {
    T value, slope;
    R scale;
    eval(x, value, slope, scale);
    const R res = std::abs(value);
    if (!(res <= 1e-10 * max_abs) && !(res <= 64 * R(n) * eps * scale))
      fail(ErrorKind::NonConvergence, "root residual above tolerance after convergence");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

/// Roots within `tol` of the unit circle, each projected to modulus one.
template <ComplexScalar T>
std::vector<T> filter_unimodular(std::span<const T> roots, typename T::value_type tol = 1e-6) {
  if (!(tol > 0)) fail(ErrorKind::InvalidArgument, "filter_unimodular requires tol > 0");
  std::vector<T> out;
  for (const T& r : roots) {
    const auto m = std::abs(r);
    if (std::abs(m - 1) <= tol) out.push_back(r / m);
  }
  return out;
}

/// Argument mapped into [0, 2*pi).
inline Real positive_arg(Complex z) noexcept {
  Real a = std::arg(z);
  if (a < 0) a += 2 * std::numbers::pi;
  if (a >= 2 * std::numbers::pi) a = 0;
  return a;
}

}  // namespace blaschke
