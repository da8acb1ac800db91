#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "blaschke/decompose.hpp"
#include "blaschke/error.hpp"
#include "blaschke/numerics.hpp"
#include "blaschke/product.hpp"

namespace blaschke {

/// Ellipse |z - focus1| + |z - focus2| = focal_sum.
struct PonceletEllipse {
  Complex focus1;
  Complex focus2;
  Real focal_sum = 0;

  Complex center() const noexcept { return (focus1 + focus2) / Real(2); }
  Real semi_major() const noexcept { return focal_sum / 2; }
  Real semi_minor() const noexcept {
    const Real c = std::abs(focus1 - focus2) / 2;
    return std::sqrt(std::max(Real(0), semi_major() * semi_major() - c * c));
  }
  /// Angle of the major axis.
  Real rotation() const noexcept {
    return focus1 == focus2 ? Real(0) : std::arg(focus2 - focus1);
  }
};

/// |1 - conj(f1) f2| * sqrt((|f1|^2 + |f2|^2 - 2) / (|f1|^2 |f2|^2 - 1)).
inline Real poncelet_focal_sum(Complex f1, Complex f2) {
  const Real m1 = std::norm(f1), m2 = std::norm(f2);
  return std::abs(Real(1) - std::conj(f1) * f2) * std::sqrt((m1 + m2 - 2) / (m1 * m2 - 1));
}

/// The ellipse of a canonical degree-4 product whose remaining nonzero zero
/// a1 satisfies a1 + conj(a1) a2 a3 = a2 + a3 for the foci a2, a3.
inline PonceletEllipse poncelet_ellipse(const BlaschkeProduct& b, std::pair<std::size_t, std::size_t> foci_indices,
                                        Real tol = 1e-7) {
  if (b.degree() != 4) fail(ErrorKind::BadShape, "Poncelet ellipse needs a degree-4 product");
  const auto [i2, i3] = foci_indices;
  if (i2 >= 4 || i3 >= 4 || i2 == i3) fail(ErrorKind::BadShape, "invalid focus indices");
  const std::size_t origin = origin_zero_index(b);
  if (origin == i2 || origin == i3) fail(ErrorKind::BadShape, "a focus index points at the origin zero");
  std::size_t i1 = 0;
  while (i1 == origin || i1 == i2 || i1 == i3) ++i1;
  const std::array<IndexPair, 1> pairing{IndexPair{i2, i3}};
  if (!check_paired_conditions_2n(b, i1, pairing, tol).satisfied)
    fail(ErrorKind::ConditionsUnsatisfied, "zero condition a1 + conj(a1) a2 a3 = a2 + a3 fails");
  const Complex f1 = b.zeros()[i2], f2 = b.zeros()[i3];
  PonceletEllipse e{f1, f2, poncelet_focal_sum(f1, f2)};
  if (!(e.focal_sum > std::abs(f1 - f2) + 1e-12))
    fail(ErrorKind::NondegeneracyError, "focal sum does not exceed the focal distance");
  return e;
}

/// Searches for the distinguished zero: the first choice of a1 whose two
/// companions satisfy the condition supplies the foci.
inline std::pair<std::size_t, std::size_t> find_poncelet_foci(const BlaschkeProduct& b,
                                                              std::optional<std::size_t> a1_index = {},
                                                              Real tol = 1e-7) {
  if (b.degree() != 4) fail(ErrorKind::BadShape, "Poncelet ellipse needs a degree-4 product");
  const std::size_t origin = origin_zero_index(b);
  for (std::size_t a1 = 0; a1 < 4; ++a1) {
    if (a1 == origin || (a1_index && *a1_index != a1)) continue;
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < 4; ++k)
      if (k != origin && k != a1) rest.push_back(k);
    const std::array<IndexPair, 1> pairing{IndexPair{rest[0], rest[1]}};
    if (check_paired_conditions_2n(b, a1, pairing, tol).satisfied) return {rest[0], rest[1]};
  }
  fail(ErrorKind::ConditionsUnsatisfied, "no zero satisfies the Poncelet condition");
}

/// Perpendicular distance from p to the line through u and v.
inline Real distance_to_line(Complex p, Complex u, Complex v) {
  const Complex d = v - u;
  if (std::abs(d) == 0) return std::abs(p - u);
  return std::abs(std::imag(std::conj(d) * (p - u))) / std::abs(d);
}

struct ChordPairing {
  std::vector<Complex> points;  // the preimages of lambda, sorted by argument
  std::array<IndexPair, 2> chords{};
  std::array<Real, 2> distances{};
};

/// Finds the pairing of the four preimages of lambda whose two chords both pass through a1.
inline ChordPairing chord_concurrency(const BlaschkeProduct& b, Complex a1, Complex lambda, Real tol = 1e-7) {
  if (b.degree() != 4) fail(ErrorKind::BadShape, "chord concurrency needs a degree-4 product");
  ChordPairing report;
  report.points = blaschke_preimages(b, lambda);
  const auto& z = report.points;
  const std::array<std::array<IndexPair, 2>, 3> pairings{{
      {IndexPair{0, 2}, IndexPair{1, 3}},
      {IndexPair{0, 1}, IndexPair{2, 3}},
      {IndexPair{0, 3}, IndexPair{1, 2}},
  }};
  for (const auto& p : pairings) {
    const Real d1 = distance_to_line(a1, z[p[0].first], z[p[0].second]);
    const Real d2 = distance_to_line(a1, z[p[1].first], z[p[1].second]);
    if (d1 <= tol && d2 <= tol) {
      report.chords = p;
      report.distances = {d1, d2};
      return report;
    }
  }
  fail(ErrorKind::NoConcurrentPairing, "no pairing of preimages has both chords through a1");
}

/// |B(z1) - B(z2)| for the two points where the line through a1 with direction theta meets the circle.
inline Real line_through_a1_property(const BlaschkeProduct& b, Complex a1, Real theta) {
  if (std::abs(a1) >= 1) fail(ErrorKind::DomainError, "a1 must lie in the open disk");
  const Complex u = std::polar(Real(1), theta);
  const Real h = std::real(std::conj(a1) * u);
  const Real root = std::sqrt(h * h + 1 - std::norm(a1));
  const Complex z1 = a1 + (-h + root) * u;
  const Complex z2 = a1 + (-h - root) * u;
  return std::abs(b(z1 / std::abs(z1)) - b(z2 / std::abs(z2)));
}

/// Intersections of the unit circle with the circle through 0 and 1/conj(a1)
/// whose centre sits `center_param` along the perpendicular bisector (unit
/// direction i p / |p|, p = 1/conj(a1)) from the midpoint p / 2.
inline std::array<Complex, 2> pole_circle_intersections(Complex a1, Real center_param) {
  if (std::abs(a1) <= kOriginTol) fail(ErrorKind::NoIntersection, "a1 = 0 has no finite pole reflection");
  const Complex p = Real(1) / std::conj(a1);
  const Complex center = p / Real(2) + center_param * Complex(0, 1) * p / std::abs(p);
  // |z| = 1 and |z - C| = |C| meet on the line Re(conj(C) z) = 1/2.
  const Real rc = std::abs(center);
  const Real d = 1 / (2 * rc);
  if (!(d < 1)) fail(ErrorKind::NoIntersection, "circle does not meet the unit circle in two points");
  const Complex dir = center / rc;
  const Real s = std::sqrt(1 - d * d);
  return {dir * Complex(d, s), dir * Complex(d, -s)};
}

inline Real circle_through_pole_property(const BlaschkeProduct& b, Complex a1, Real center_param) {
  const auto [z1, z2] = pole_circle_intersections(a1, center_param);
  return std::abs(b(z1) - b(z2));
}

}  // namespace blaschke
