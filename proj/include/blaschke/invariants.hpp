#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/numerics.hpp"
#include "blaschke/product.hpp"

namespace blaschke {

/// Cyclic group of disk automorphisms M with B ∘ M = B, stored by generator and order.
struct InvariantGroup {
  MoebiusTransform generator;
  std::size_t order = 1;
};

/// Checks the group invariants: the generator has exactly `order`, which divides `degree`.
inline InvariantGroup make_invariant_group(const MoebiusTransform& generator, std::size_t degree,
                                          Real tol = kIdentityTol) {
  const auto k = moebius_order(generator, std::max<std::size_t>(degree, 1), tol);
  if (!k || *k < 2)
    fail(ErrorKind::InvalidArgument, "generator has no finite order >= 2 within the degree");
  if (degree % *k != 0)
    fail(ErrorKind::InvalidArgument, "group order must divide the product degree");
  return {generator, *k};
}

/// B(z) = z prod_{k=1}^{n-1} (z - M^k(0)) / (1 - conj(M^k(0)) z), invariant under M.
inline BlaschkeProduct construct_invariant_product(const MoebiusTransform& m, std::size_t n,
                                                   Real tol = kOrbitClosureTol) {
  if (n == 1) return BlaschkeProduct::power(1);  // empty product: B(z) = z for any M
  const OrbitReport orbit = moebius_iterate_zero(m, n, std::max(tol, 1e-8));
  if (!orbit.closes) fail(ErrorKind::OrbitNotClosed, "M^n(0) is not 0 within tolerance");
  if (orbit.min_pairwise_gap < tol)
    fail(ErrorKind::OrbitDegenerate,
         "orbit points collide (min gap " + std::to_string(orbit.min_pairwise_gap) + ")");
  return BlaschkeProduct(orbit.points);
}

/// Seed of the pseudo-random probe stream used by verify_invariance.
inline constexpr std::uint64_t kProbeSeed = 0x5EED'B1A5'C4E0'0001ULL;

/// `count` deterministic points uniformly spread over the disk of radius 0.95.
inline std::vector<Complex> random_disk_probes(std::size_t count, std::uint64_t seed = kProbeSeed) {
  std::mt19937_64 rng(seed);
  // Fixed bit-level mapping; std distributions are not portable across libraries.
  auto unit = [&rng] { return Real(rng() >> 11) * 0x1.0p-53; };
  std::vector<Complex> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Real r = 0.95 * std::sqrt(unit());
    pts.push_back(std::polar(r, 2 * std::numbers::pi * unit()));
  }
  return pts;
}

/// max |B(M(z)) - B(z)| over the agreement probes plus `samples` seeded interior points.
inline Real verify_invariance(const BlaschkeProduct& b, const MoebiusTransform& m, std::size_t samples) {
  if (samples < b.degree() + 1)
    fail(ErrorKind::InvalidArgument, "need at least degree + 1 samples");
  auto probes = equality_probes(b.degree());
  const auto extra = random_disk_probes(samples);
  probes.insert(probes.end(), extra.begin(), extra.end());
  Real worst = 0;
  for (const Complex& z : probes) worst = std::max(worst, std::abs(b(m(z)) - b(z)));
  return worst;
}

/// Deviation of B ∘ M from B over the agreement probes.
inline Real invariance_defect(const BlaschkeProduct& b, const MoebiusTransform& m) {
  return max_probe_deviation([&](Complex z) { return b(m(z)); }, [&](Complex z) { return b(z); },
                             b.degree());
}

/// The invariant group of a canonical product.
///
/// Candidates are every rotation by an n-th root of unity and, for each
/// ordered pair of nonzero zeros (a_j, a_l) of equal modulus, the map with
/// pole parameter a_l and constant -a_j / a_l (so M(a_l) = 0 and M(0) = a_j).
/// A candidate is kept when B ∘ M agrees with B on the n+1 probe points.
/// Kept maps are folded into cyclic groups: the first kept element of
/// largest order becomes a generator and all its powers are discarded.
/// Orders not dividing the degree are rejected.
inline std::vector<InvariantGroup> find_invariant_group(const BlaschkeProduct& b, Real tol = 1e-8) {
  if (!is_canonical(b)) fail(ErrorKind::BadShape, "invariant search requires a canonical product");
  const std::size_t n = b.degree();
  if (n < 2) fail(ErrorKind::BadShape, "invariant search requires degree >= 2");
  const Real order_tol = std::max(tol, kIdentityTol);

  std::vector<MoebiusTransform> candidates;
  const auto& zeros = b.zeros();
  for (const Complex& aj : zeros) {
    if (std::abs(aj) <= kOriginTol) continue;
    for (const Complex& al : zeros) {
      if (std::abs(al) <= kOriginTol) continue;
      if (std::abs(std::abs(aj) - std::abs(al)) > tol) continue;
      const Complex c = -aj / al;
      if (std::abs(std::abs(c) - 1) > 1e-6) continue;
      candidates.emplace_back(c / std::abs(c), al);
    }
  }
  for (std::size_t j = 1; j < n; ++j)
    candidates.push_back(MoebiusTransform::rotation(std::polar(Real(1), 2 * std::numbers::pi * Real(j) / Real(n))));

  struct Accepted {
    MoebiusTransform map;
    std::size_t order;
  };
  std::vector<Accepted> accepted;
  for (const auto& m : candidates) {
    if (m.distance_to_identity() <= order_tol) continue;
    bool seen = false;
    for (const auto& a : accepted) seen = seen || a.map.distance(m) <= 1e-7;
    if (seen) continue;
    if (invariance_defect(b, m) > tol) continue;
    const auto k = moebius_order(m, n, order_tol);
    if (!k || n % *k != 0) continue;  // inconsistent with k | n: numerical artefact
    accepted.push_back({m, *k});
  }

  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const Accepted& x, const Accepted& y) { return x.order > y.order; });
  std::vector<InvariantGroup> groups;
  std::vector<bool> used(accepted.size(), false);
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const auto& gen = accepted[i];
    MoebiusTransform power = gen.map;
    for (std::size_t j = 2; j < gen.order; ++j) {
      power = moebius_compose(power, gen.map);
      for (std::size_t t = 0; t < accepted.size(); ++t)
        if (!used[t] && accepted[t].map.distance(power) <= 1e-7) used[t] = true;
    }
    groups.push_back({gen.map, gen.order});
  }
  return groups;
}

/// Whether some power of the group generator equals `m`.
inline bool group_contains(const InvariantGroup& g, const MoebiusTransform& m, Real tol = 1e-7) {
  MoebiusTransform power = g.generator;
  for (std::size_t j = 1; j <= g.order; ++j) {
    if (power.distance(m) <= tol) return true;
    power = moebius_compose(power, g.generator);
  }
  return false;
}

/// Cubic 4-zero rotation equation: |a|^2 c^3 + 2|a|^2 c^2 + c + (1 - |a|^2) = 0,
/// for the degree-4 family z, a, M(a), M^2(a) with M(z) = c (z + conj(c) a)/(1 + c conj(a) z).
inline ComplexPolynomial quartic_orbit_equation(Complex a1) {
  const Real s = std::norm(a1);
  return ComplexPolynomial{Complex(1 - s), Complex(1), Complex(2 * s), Complex(s)} * a1;
}

/// The degree-4 product z (z - a)/(..) (z - M(a))/(..) (z - M^2(a))/(..) for
/// M(z) = c (z + conj(c) a) / (1 + c conj(a) z).
inline BlaschkeProduct quartic_orbit_product(Complex a1, Complex c) {
  const MoebiusTransform m(c, -std::conj(c) * a1);
  const Complex a2 = m(a1);
  const Complex a3 = m(a2);
  return BlaschkeProduct({Complex{}, a1, a2, a3});
}

}  // namespace blaschke
