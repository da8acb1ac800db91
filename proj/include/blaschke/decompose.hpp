#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/invariants.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/numerics.hpp"
#include "blaschke/product.hpp"

namespace blaschke {

enum class DecompositionSource { InvariantGroup, PairedZeros2n, TripledZeros3n };

constexpr std::string_view to_string(DecompositionSource s) noexcept {
  switch (s) {
    case DecompositionSource::InvariantGroup: return "invariant_group";
    case DecompositionSource::PairedZeros2n: return "paired_zeros_2n";
    case DecompositionSource::TripledZeros3n: return "tripled_zeros_3n";
  }
  return "unknown";
}

/// B = outer ∘ inner.
struct Decomposition {
  BlaschkeProduct inner;
  BlaschkeProduct outer;
  DecompositionSource source;
  /// Max deviation of compose(outer, inner) from the original on the agreement probes.
  Real roundtrip_residual = 0;
};

inline constexpr Real kRoundTripTol = 1e-7;

namespace detail {

inline Decomposition finish(const BlaschkeProduct& original, BlaschkeProduct inner, BlaschkeProduct outer,
                            DecompositionSource source) {
  if (inner.degree() * outer.degree() != original.degree())
    fail(ErrorKind::BadShape, "factor degrees do not multiply to the product degree");
  const BlaschkeProduct composite = blaschke_compose(outer, inner);
  const Real residual = blaschke_distance(composite, original);
  if (!(residual <= kRoundTripTol))
    fail(ErrorKind::ConditionsUnsatisfied,
         "composition round trip deviates by " + std::to_string(residual));
  return {std::move(inner), std::move(outer), source, residual};
}

/// Unimodular constant making constant * prod over `zeros` evaluated at inner(1) equal B(1).
inline Complex match_outer_constant(const BlaschkeProduct& original, const BlaschkeProduct& inner,
                                    const std::vector<Complex>& outer_zeros) {
  const Complex probe{1};
  const Complex w = inner(probe);
  Complex plain{1};
  for (const Complex& a : outer_zeros) plain *= (w - a) / (Real(1) - std::conj(a) * w);
  const Complex c = original(probe) / plain;
  if (std::abs(std::abs(c) - 1) > 1e-6)
    fail(ErrorKind::NormalizationError, "outer constant deviates from modulus one");
  return c / std::abs(c);
}

inline std::vector<Complex> nonorigin_removed(const BlaschkeProduct& b, std::size_t origin) {
  std::vector<Complex> rest;
  for (std::size_t k = 0; k < b.degree(); ++k)
    if (k != origin) rest.push_back(b.zeros()[k]);
  return rest;
}

}  // namespace detail

/// Which inner factor the invariant-group construction produces.
enum class InnerForm {
  /// ((z - gamma) / (1 - conj(gamma) z))^k with gamma the interior fixed point.
  FixedPointPower,
  /// z prod_{j=1}^{k-1} (z - M^j(0)) / (1 - conj(M^j(0)) z): same level sets, canonical.
  OriginOrbit,
};

/// Decomposition from an invariant group of order k: inner has degree k,
/// outer has degree n / k and its zeros are the images of the zeros of B
/// under inner, clustered (tolerance 1e-7 * n) with multiplicity / k.
inline Decomposition decompose_via_invariants(const BlaschkeProduct& b, const InvariantGroup& g,
                                              InnerForm form = InnerForm::FixedPointPower) {
  const std::size_t n = b.degree();
  const std::size_t k = g.order;
  if (k < 2 || n % k != 0) fail(ErrorKind::BadShape, "group order must be >= 2 and divide the degree");
  const auto gamma = moebius_fixed_point_in_disk(g.generator);
  if (!gamma) fail(ErrorKind::NoInteriorFixedPoint, "generator has no fixed point inside the disk");

  std::vector<Complex> inner_zeros;
  if (form == InnerForm::FixedPointPower) {
    inner_zeros.assign(k, *gamma);
  } else {
    Complex z{};
    for (std::size_t j = 0; j < k; ++j) {
      inner_zeros.push_back(z);
      z = g.generator(z);
    }
  }
  BlaschkeProduct inner(std::move(inner_zeros));

  const Real cluster_tol = 1e-7 * Real(n);
  std::vector<std::vector<Complex>> clusters;
  for (const Complex& a : b.zeros()) {
    const Complex w = inner(a);
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const auto& cl) { return std::abs(cl.front() - w) <= cluster_tol; });
    if (it == clusters.end())
      clusters.push_back({w});
    else
      it->push_back(w);
  }
  std::vector<Complex> outer_zeros;
  for (const auto& cl : clusters) {
    if (cl.size() % k != 0)
      fail(ErrorKind::OrbitClusterError, "inner images of the zeros do not cluster in groups of the order");
    Complex mean{};
    for (const Complex& w : cl) mean += w;
    mean /= Real(cl.size());
    outer_zeros.insert(outer_zeros.end(), cl.size() / k, mean);
  }
  if (outer_zeros.size() != n / k)
    fail(ErrorKind::OrbitClusterError, "wrong number of outer zeros");
  const Complex constant = detail::match_outer_constant(b, inner, outer_zeros);
  return detail::finish(b, std::move(inner), BlaschkeProduct(constant, std::move(outer_zeros)),
                        DecompositionSource::InvariantGroup);
}

struct StructuredZeroConditions {
  std::vector<Complex> residuals;
  bool satisfied = false;
};

inline StructuredZeroConditions make_conditions(std::vector<Complex> residuals, Real tol) {
  Real worst = 0;
  for (const Complex& r : residuals) worst = std::max(worst, std::abs(r));
  return {std::move(residuals), worst <= tol};
}

/// a1 + conj(a1) s t - s - t for each pair (s, t).
inline StructuredZeroConditions paired_conditions(Complex a1, std::span<const std::pair<Complex, Complex>> pairs,
                                                  Real tol) {
  std::vector<Complex> res;
  res.reserve(pairs.size());
  for (const auto& [s, t] : pairs) res.push_back(a1 + std::conj(a1) * s * t - s - t);
  return make_conditions(std::move(res), tol);
}

using IndexPair = std::pair<std::size_t, std::size_t>;
using IndexTriple = std::array<std::size_t, 3>;

namespace detail {

/// Indices must cover every zero exactly once except a single origin zero.
inline void require_cover(const BlaschkeProduct& b, std::vector<std::size_t> used) {
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end())
    fail(ErrorKind::BadShape, "zero index used twice");
  if (!used.empty() && used.back() >= b.degree()) fail(ErrorKind::BadShape, "zero index out of range");
  if (used.size() + 1 != b.degree()) fail(ErrorKind::BadShape, "designation must leave exactly one zero");
  std::size_t left = 0;
  while (left < used.size() && used[left] == left) ++left;
  if (std::abs(b.zeros()[left]) > kOriginTol) fail(ErrorKind::BadShape, "the undesignated zero is not the origin");
}

}  // namespace detail

/// Paired conditions for a product of even degree, with a1 and the pairing given by zero index.
inline StructuredZeroConditions check_paired_conditions_2n(const BlaschkeProduct& b, std::size_t a1_index,
                                                           std::span<const IndexPair> pairing, Real tol) {
  if (b.degree() % 2 != 0) fail(ErrorKind::BadShape, "paired conditions need even degree");
  std::vector<std::size_t> used{a1_index};
  for (const auto& [i, j] : pairing) {
    used.push_back(i);
    used.push_back(j);
  }
  detail::require_cover(b, used);
  std::vector<std::pair<Complex, Complex>> pairs;
  for (const auto& [i, j] : pairing) pairs.emplace_back(b.zeros()[i], b.zeros()[j]);
  return paired_conditions(b.zeros()[a1_index], pairs, tol);
}

/// Pairing of `indices` whose pair residuals are all <= tol, by backtracking.
inline std::optional<std::vector<IndexPair>> find_pairing(const BlaschkeProduct& b, std::size_t a1_index,
                                                          std::vector<std::size_t> indices, Real tol) {
  const Complex a1 = b.zeros()[a1_index];
  const auto& z = b.zeros();
  std::vector<IndexPair> chosen;
  std::vector<bool> taken(indices.size(), false);
  std::function<bool()> search = [&]() -> bool {
    std::size_t first = 0;
    while (first < indices.size() && taken[first]) ++first;
    if (first == indices.size()) return true;
    taken[first] = true;
    std::vector<std::pair<Real, std::size_t>> options;
    for (std::size_t j = first + 1; j < indices.size(); ++j) {
      if (taken[j]) continue;
      const Complex s = z[indices[first]], t = z[indices[j]];
      const Real r = std::abs(a1 + std::conj(a1) * s * t - s - t);
      if (r <= tol) options.emplace_back(r, j);
    }
    std::sort(options.begin(), options.end());
    for (const auto& [r, j] : options) {
      taken[j] = true;
      chosen.emplace_back(indices[first], indices[j]);
      if (search()) return true;
      chosen.pop_back();
      taken[j] = false;
    }
    taken[first] = false;
    return false;
  };
  if (!search()) return std::nullopt;
  return chosen;
}

/// B = B2 ∘ B1 with B1 = z (z - a1)/(1 - conj(a1) z) and
/// B2 = z prod (z + s t)/(1 + conj(s t) z) over the pairs (s, t).
///
/// Without `a1_index` every nonzero zero is tried as a1 in order; the pairing
/// of the remaining zeros is searched exhaustively.
inline Decomposition decompose_paired_2n(const BlaschkeProduct& b, std::optional<std::size_t> a1_index = {},
                                         Real tol = kRoundTripTol) {
  const std::size_t n = b.degree();
  if (n % 2 != 0) fail(ErrorKind::BadShape, "paired decomposition needs even degree");
  const std::size_t origin = origin_zero_index(b);
  std::vector<std::size_t> choices;
  if (a1_index) {
    if (*a1_index >= n || *a1_index == origin) fail(ErrorKind::BadShape, "invalid a1 index");
    choices.push_back(*a1_index);
  } else {
    for (std::size_t k = 0; k < n; ++k)
      if (k != origin) choices.push_back(k);
  }
  std::string last_error = "no pairing satisfies the paired conditions";
  for (std::size_t a1i : choices) {
    const Complex a1 = b.zeros()[a1i];
    if (std::abs(a1) <= kOriginTol) {
      last_error = "a1 must be nonzero";
      continue;
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
      if (k != origin && k != a1i) rest.push_back(k);
    const auto pairing = find_pairing(b, a1i, rest, tol);
    if (!pairing) continue;
    std::vector<Complex> outer_zeros{Complex{}};
    for (const auto& [i, j] : *pairing) outer_zeros.push_back(-b.zeros()[i] * b.zeros()[j]);
    BlaschkeProduct inner({Complex{}, a1});
    const Complex constant = detail::match_outer_constant(b, inner, outer_zeros);
    try {
      return detail::finish(b, std::move(inner), BlaschkeProduct(constant, std::move(outer_zeros)),
                            DecompositionSource::PairedZeros2n);
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  fail(ErrorKind::ConditionsUnsatisfied, last_error);
}

/// Residual pair per triple (t1, t2, t3) with T = t1 t2 t3:
///   a1 + a2 + T conj(a1 a2) - (t1 + t2 + t3),
///   a1 a2 + T (conj(a1) + conj(a2)) - (t1 t2 + t1 t3 + t2 t3).
inline StructuredZeroConditions tripled_conditions(Complex a1, Complex a2,
                                                   std::span<const std::array<Complex, 3>> triples, Real tol) {
  std::vector<Complex> res;
  for (const auto& [t1, t2, t3] : triples) {
    const Complex prod = t1 * t2 * t3;
    res.push_back(a1 + a2 + prod * std::conj(a1 * a2) - (t1 + t2 + t3));
    res.push_back(a1 * a2 + prod * (std::conj(a1) + std::conj(a2)) - (t1 * t2 + t1 * t3 + t2 * t3));
  }
  return make_conditions(std::move(res), tol);
}

struct TripleDesignation {
  std::size_t a1_index = 0;
  std::size_t a2_index = 0;
  std::vector<IndexTriple> triples;
};

inline StructuredZeroConditions check_tripled_conditions_3n(const BlaschkeProduct& b, const TripleDesignation& d,
                                                            Real tol) {
  if (b.degree() % 3 != 0) fail(ErrorKind::BadShape, "tripled conditions need degree divisible by 3");
  const auto& z = b.zeros();
  std::vector<std::size_t> used{d.a1_index, d.a2_index};
  for (const auto& t : d.triples) used.insert(used.end(), t.begin(), t.end());
  detail::require_cover(b, used);
  const Complex a1 = z[d.a1_index], a2 = z[d.a2_index];
  if (std::abs(a1) <= kOriginTol || std::abs(a2) <= kOriginTol || std::abs(a1 - a2) <= kOriginTol)
    fail(ErrorKind::BadShape, "a1 and a2 must be distinct and nonzero");
  std::vector<std::array<Complex, 3>> triples;
  for (const auto& t : d.triples) triples.push_back({z[t[0]], z[t[1]], z[t[2]]});
  return tripled_conditions(a1, a2, triples, tol);
}

/// Partition of `indices` into triples meeting the tripled conditions, by backtracking.
inline std::optional<std::vector<IndexTriple>> find_tripling(const BlaschkeProduct& b, Complex a1, Complex a2,
                                                             const std::vector<std::size_t>& indices, Real tol) {
  const auto& z = b.zeros();
  std::vector<IndexTriple> chosen;
  std::vector<bool> taken(indices.size(), false);
  std::function<bool()> search = [&]() -> bool {
    std::size_t first = 0;
    while (first < indices.size() && taken[first]) ++first;
    if (first == indices.size()) return true;
    taken[first] = true;
    for (std::size_t j = first + 1; j < indices.size(); ++j) {
      if (taken[j]) continue;
      for (std::size_t k = j + 1; k < indices.size(); ++k) {
        if (taken[k]) continue;
        const std::array<Complex, 3> t{z[indices[first]], z[indices[j]], z[indices[k]]};
        if (!tripled_conditions(a1, a2, std::span(&t, 1), tol).satisfied) continue;
        taken[j] = taken[k] = true;
        chosen.push_back({indices[first], indices[j], indices[k]});
        if (search()) return true;
        chosen.pop_back();
        taken[j] = taken[k] = false;
      }
    }
    taken[first] = false;
    return false;
  };
  if (!search()) return std::nullopt;
  return chosen;
}

/// B = B2 ∘ B1 with B1 = z (z - a1)(z - a2)/((1 - conj(a1) z)(1 - conj(a2) z)) and
/// B2 = z prod (z - T)/(1 - conj(T) z), T = t1 t2 t3 over the triples.
///
/// Without a designation every unordered pair of distinct nonzero zeros is
/// tried as {a1, a2} and the remaining zeros are partitioned exhaustively.
inline Decomposition decompose_tripled_3n(const BlaschkeProduct& b,
                                          const std::optional<TripleDesignation>& designation = {},
                                          Real tol = kRoundTripTol) {
  const std::size_t n = b.degree();
  if (n % 3 != 0) fail(ErrorKind::BadShape, "tripled decomposition needs degree divisible by 3");
  const auto& z = b.zeros();

  auto build = [&](std::size_t i1, std::size_t i2, const std::vector<IndexTriple>& triples) {
    std::vector<Complex> outer_zeros{Complex{}};
    for (const auto& t : triples) outer_zeros.push_back(z[t[0]] * z[t[1]] * z[t[2]]);
    BlaschkeProduct inner({Complex{}, z[i1], z[i2]});
    const Complex constant = detail::match_outer_constant(b, inner, outer_zeros);
    return detail::finish(b, std::move(inner), BlaschkeProduct(constant, std::move(outer_zeros)),
                          DecompositionSource::TripledZeros3n);
  };

  if (designation) {
    const auto cond = check_tripled_conditions_3n(b, *designation, tol);
    if (!cond.satisfied) fail(ErrorKind::ConditionsUnsatisfied, "tripled conditions not satisfied");
    return build(designation->a1_index, designation->a2_index, designation->triples);
  }

  const std::size_t origin = origin_zero_index(b);
  std::string last_error = "no designation satisfies the tripled conditions";
  for (std::size_t i = 0; i < n; ++i) {
    if (i == origin || std::abs(z[i]) <= kOriginTol) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == origin || std::abs(z[j]) <= kOriginTol || std::abs(z[i] - z[j]) <= kOriginTol) continue;
      std::vector<std::size_t> rest;
      for (std::size_t k = 0; k < n; ++k)
        if (k != origin && k != i && k != j) rest.push_back(k);
      const auto triples = find_tripling(b, z[i], z[j], rest, tol);
      if (!triples) continue;
      try {
        return build(i, j, *triples);
      } catch (const Error& e) {
        last_error = e.what();
      }
    }
  }
  fail(ErrorKind::ConditionsUnsatisfied, last_error);
}

enum class DecomposeMethod { Auto, Invariants, Paired, Tripled };

/// Nontrivial decomposition through the invariant group: uses the largest
/// subgroup order k with 1 < k < n.
inline Decomposition decompose_by_invariant_subgroup(const BlaschkeProduct& b, InnerForm form,
                                                     Real tol = 1e-8) {
  const std::size_t n = b.degree();
  for (const auto& g : find_invariant_group(b, tol)) {
    for (std::size_t k = g.order; k >= 2; --k) {
      if (g.order % k != 0 || k >= n) continue;
      const InvariantGroup sub{moebius_power(g.generator, g.order / k), k};
      return decompose_via_invariants(b, sub, form);
    }
  }
  fail(ErrorKind::NoSolution, "no invariant subgroup of order strictly between 1 and the degree");
}

/// Tries invariants, then paired-2n, then tripled-3n (or just the requested method).
inline Decomposition decompose(const BlaschkeProduct& b, DecomposeMethod method = DecomposeMethod::Auto,
                               InnerForm form = InnerForm::OriginOrbit) {
  switch (method) {
    case DecomposeMethod::Invariants: return decompose_by_invariant_subgroup(b, form);
    case DecomposeMethod::Paired: return decompose_paired_2n(b);
    case DecomposeMethod::Tripled: return decompose_tripled_3n(b);
    case DecomposeMethod::Auto: break;
  }
  std::string details;
  const std::array<std::function<Decomposition()>, 3> routes{
      [&] { return decompose_by_invariant_subgroup(b, form); },
      [&] { return decompose_paired_2n(b); },
      [&] { return decompose_tripled_3n(b); },
  };
  for (const auto& route : routes) {
    try {
      return route();
    } catch (const Error& e) {
      if (!details.empty()) details += "; ";
      details += e.what();
    }
  }
  fail(ErrorKind::NoSolution, "no decomposition route applies: " + details);
}

}  // namespace blaschke
