#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "blaschke/blaschke.hpp"

namespace blaschke::testing {

using namespace std::complex_literals;

/// z (z - 2/3)/(..) (z - (1-i)/2)/(..) (z - (1+i)/2)/(..): the Poncelet quartic.
inline BlaschkeProduct poncelet_quartic() {
  return BlaschkeProduct({0.0, 2.0 / 3.0, Complex(0.5, -0.5), Complex(0.5, 0.5)});
}

/// Degree-4 product invariant under the involution (c = -1, alpha = 1/2).
inline BlaschkeProduct involution_quartic() {
  return BlaschkeProduct({0.0, 0.5, Complex(0.5, -0.5), Complex(0.2, 0.6)});
}

inline MoebiusTransform half_involution() { return MoebiusTransform(-1.0, 0.5); }

/// (z (z - 2/3)/(1 - 2z/3))^2.
inline BlaschkeProduct squared_quartic() { return BlaschkeProduct({0.0, 0.0, 2.0 / 3.0, 2.0 / 3.0}); }

/// Degree-6 product with zeros as printed (0.5 triple, two ~1e-16 zeros).
inline BlaschkeProduct printed_sextic_paired() {
  return BlaschkeProduct({0.0, 0.5, 0.5, 0.5, 1.4803e-16, 7.40149e-17});
}

/// Degree-6 product with zeros as printed for the order-3 rotation constant.
inline BlaschkeProduct printed_sextic_tripled() {
  const Complex q(0.3125, -0.390312);
  return BlaschkeProduct({0.0, 0.5, Complex(0.5, -6.39697e-11), q, q, Complex(2.51094e-11, 1.05107e-10)});
}

/// The order-3 constant as an exact root of c^2 + 1.25 c + 1 (positive imaginary part).
inline Complex order3_constant() { return Complex(-0.625, std::sqrt(1.0 - 0.625 * 0.625)); }

/// Orbit of 0 of length 6 under (c = order3_constant, alpha = 1/2): every point twice.
inline BlaschkeProduct exact_sextic_tripled() {
  return construct_invariant_product(MoebiusTransform(order3_constant(), 0.5), 6, 0.0);
}

/// The exact involution orbit of length 6: zeros 0 and 1/2, three times each.
inline BlaschkeProduct exact_sextic_paired() {
  return construct_invariant_product(half_involution(), 6, 0.0);
}

/// Rotation constant and product for the degree-n orbit at alpha = 1/2 closest to `printed`.
inline UnimodularSolution orbit_solution_near(std::size_t n, Complex printed) {
  const auto sols = solve_unimodular_c(0.5, n);
  const UnimodularSolution* best = &sols.front();
  for (const auto& s : sols)
    if (std::abs(s.c - printed) < std::abs(best->c - printed)) best = &s;
  return *best;
}

inline Complex degree5_printed_constant() { return Complex(-0.856763, -0.515711); }
inline Complex degree7_printed_constant() { return Complex(0.217617, -0.976034); }

/// Small deterministic generator for the property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * Real(rng_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t lo, std::size_t hi) { return lo + std::size_t(rng_() % (hi - lo + 1)); }

  /// Uniform point in the disk of radius r.
  Complex in_disk(Real r = 0.9) {
    return std::polar(r * std::sqrt(uniform(0, 1)), uniform(0, 2 * std::numbers::pi));
  }
  Complex on_circle() { return std::polar(1.0, uniform(0, 2 * std::numbers::pi)); }

  BlaschkeProduct product(std::size_t degree, Real r = 0.9) {
    std::vector<Complex> zeros;
    for (std::size_t k = 0; k < degree; ++k) zeros.push_back(in_disk(r));
    return BlaschkeProduct(on_circle(), std::move(zeros));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace blaschke::testing
