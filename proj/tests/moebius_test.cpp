#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "blaschke/invariants.hpp"
#include "blaschke/moebius.hpp"
#include "fixtures.hpp"

namespace {

using namespace blaschke;
using namespace std::complex_literals;
using blaschke::testing::Sampler;

TEST(MoebiusEval, IdentityAndBasicValues) {
  EXPECT_EQ(moebius_eval(MoebiusTransform::identity(), Complex(0.3, 0.4)), Complex(0.3, 0.4));
  EXPECT_LT(std::abs(moebius_eval(MoebiusTransform(-1.0, 0.5), 0.0) - 0.5), 1e-15);
  const MoebiusTransform m(std::polar(1.0, 0.7), Complex(0.2, -0.3));
  EXPECT_LT(std::abs(m(0.0) + m.c() * m.alpha()), 1e-15);
}

TEST(MoebiusEval, InvolutionMatchesRationalForm) {
  const MoebiusTransform m(-1.0, 0.5);
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.4, 0.3), Complex(0.0, -0.9)})
    EXPECT_LT(std::abs(m(z) - (2.0 * z - 1.0) / (z - 2.0)), 1e-15);
}

TEST(MoebiusEval, RejectsPointsOutsideClosedDisk) {
  try {
    MoebiusTransform(1i, 0.2)(Complex(1.1, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
  EXPECT_NO_THROW(MoebiusTransform(1i, 0.2)(Complex(1.0, 0.0)));
}

TEST(MoebiusTransform, ValidatesParameters) {
  EXPECT_THROW(MoebiusTransform(1.1, 0.0), Error);
  EXPECT_THROW(MoebiusTransform(1.0, 1.0), Error);
  EXPECT_THROW(MoebiusTransform(Complex(std::nan(""), 0.0), 0.0), Error);
}

TEST(MoebiusCompose, InverseGivesIdentity) {
  const MoebiusTransform m(std::polar(1.0, 2.1), Complex(0.4, 0.35));
  EXPECT_LE(moebius_compose(m, m.inverse()).distance_to_identity(), 1e-12);
  EXPECT_LE(moebius_compose(m.inverse(), m).distance_to_identity(), 1e-12);
}

TEST(MoebiusCompose, RotationsAddAngles) {
  const auto r = moebius_compose(MoebiusTransform::rotation(1i), MoebiusTransform::rotation(1i));
  EXPECT_LT(std::abs(r.c() + 1.0), 1e-15);
  EXPECT_EQ(r.alpha(), Complex(0.0));
}

TEST(MoebiusCompose, HalfInvolutionSquaresToIdentity) {
  // (2(2z-1)/(z-2) - 1) / ((2z-1)/(z-2) - 2) = (3z) / 3 = z.
  const MoebiusTransform m(-1.0, 0.5);
  EXPECT_LE(moebius_compose(m, m).distance_to_identity(), 1e-15);
}

TEST(MoebiusCompose, InconsistentMatrixIsANormalizationError) {
  try {
    moebius_from_matrix({2.0, 0.0, 0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NormalizationError);
  }
}

TEST(MoebiusIterateZero, QuinticOrbitFromQuotedConstant) {
  const MoebiusTransform m(Complex(-0.856763, -0.515711), 0.5);
  const auto r = moebius_iterate_zero(m, 5);
  const std::vector<Complex> expected{0.0, Complex(0.428381, 0.257855), Complex(0.278236, -0.188486),
                                      Complex(0.141178, 0.304977), 0.5};
  ASSERT_EQ(r.points.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_LT(std::abs(r.points[k] - expected[k]), 1e-4) << k;
  EXPECT_TRUE(r.closes);
  EXPECT_EQ(r.points[0], Complex(0.0));
}

TEST(MoebiusIterateZero, SepticOrbitEndpoints) {
  const MoebiusTransform m(Complex(0.217617, -0.976034), 0.5);
  const auto r = moebius_iterate_zero(m, 7);
  EXPECT_LT(std::abs(r.points[1] - Complex(-0.108809, 0.488017)), 1e-4);
  EXPECT_LT(std::abs(r.points[6] - 0.5), 1e-4);
  EXPECT_TRUE(r.closes);
}

TEST(MoebiusIterateZero, IdentityOrbitIsDegenerate) {
  const auto r = moebius_iterate_zero(MoebiusTransform::identity(), 3);
  EXPECT_EQ(r.points, std::vector<Complex>(3, 0.0));
  EXPECT_TRUE(r.closes);
  EXPECT_EQ(r.min_pairwise_gap, 0.0);
}

TEST(MoebiusOrder, KnownOrders) {
  EXPECT_EQ(moebius_order(MoebiusTransform::rotation(std::polar(1.0, 2 * std::numbers::pi / 3)), 10), 3u);
  EXPECT_EQ(moebius_order(MoebiusTransform::rotation(1i), 10), 4u);
  EXPECT_EQ(moebius_order(MoebiusTransform(-1.0, 2.0 / 3.0), 10), 2u);
  EXPECT_FALSE(moebius_order(MoebiusTransform(1.0, 0.5), 20).has_value());
}

TEST(MoebiusFixedPoint, Rotation) {
  EXPECT_EQ(moebius_fixed_point_in_disk(MoebiusTransform::rotation(1i)), Complex(0.0));
}

TEST(MoebiusFixedPoint, HalfInvolution) {
  // Oracle: (1/2) z^2 - 2 z + 1/2 = 0  =>  z = 2 ± sqrt(3).
  const Real expected = 2.0 - std::sqrt(3.0);
  const auto g = moebius_fixed_point_in_disk(MoebiusTransform(-1.0, 0.5));
  ASSERT_TRUE(g.has_value());
  EXPECT_LT(std::abs(*g - expected), 1e-15);
  EXPECT_NEAR(expected, 0.267949, 1e-6);
}

TEST(MoebiusFixedPoint, BoundaryFixedPointsGiveNothing) {
  // c = 1, alpha = 1/2: (1/2) z^2 - 1/2 = 0 has roots ±1, both on the circle.
  const std::array<Complex, 2> roots{1.0, -1.0};
  for (Complex r : roots) EXPECT_DOUBLE_EQ(std::abs(r), 1.0);
  EXPECT_FALSE(moebius_fixed_point_in_disk(MoebiusTransform(1.0, 0.5)).has_value());
  // A rotation-free map with complex pole parameter also has two boundary fixed points.
  EXPECT_FALSE(moebius_fixed_point_in_disk(MoebiusTransform(1.0, Complex(0.3, 0.4))).has_value());
}

/// Closed-form rotation equations at pole parameter a (real coefficients in |a|^2), divided by a.
ComplexPolynomial quintic_closed_form(Real s) {
  // 1 + (1 + 3s) c + (1 + 4s + s^2) c^2 + (1 + 3s) c^3 + c^4
  return ComplexPolynomial{1.0, 1.0 + 3 * s, 1.0 + 4 * s + s * s, 1.0 + 3 * s, 1.0};
}

ComplexPolynomial septic_closed_form(Real s) {
  return ComplexPolynomial{1.0,
                           1.0 + 5 * s,
                           1.0 + 8 * s + 6 * s * s,
                           1.0 + 9 * s + 9 * s * s + s * s * s,
                           1.0 + 8 * s + 6 * s * s,
                           1.0 + 5 * s,
                           1.0};
}

void expect_closure_matches(Complex alpha, std::size_t n, const ComplexPolynomial& closed) {
  // A^n_{12} = -c alpha Q(c): compare coefficient k+1 with -alpha * Q_k.
  const auto p = orbit_closure_polynomial(alpha, n);
  ASSERT_EQ(p.degree(), closed.degree() + 1);
  EXPECT_EQ(p[0], Complex(0.0));
  for (std::size_t k = 0; k <= closed.degree(); ++k)
    EXPECT_LT(std::abs(p[k + 1] + alpha * closed[k]), 1e-13) << "n=" << n << " k=" << k;
}

TEST(OrbitClosurePolynomial, MatchesClosedFormsAtHalf) {
  expect_closure_matches(0.5, 3, ComplexPolynomial{1.0, 1.25, 1.0});
  expect_closure_matches(0.5, 5, quintic_closed_form(0.25));
  expect_closure_matches(0.5, 7, septic_closed_form(0.25));
  // Integer-scaled forms quoted for |a| = 1/2.
  const auto q5 = quintic_closed_form(0.25) * Complex(16.0);
  const std::vector<Real> want5{16, 28, 33, 28, 16};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(q5[k].real(), want5[k], 1e-12);
  const auto q7 = septic_closed_form(0.25) * Complex(64.0);
  const std::vector<Real> want7{64, 144, 216, 245, 216, 144, 64};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(q7[k].real(), want7[k], 1e-12);
}

TEST(OrbitClosurePolynomial, DependsOnlyOnModulusForComplexAlpha) {
  const Complex alpha = std::polar(0.6, 1.1);
  expect_closure_matches(alpha, 5, quintic_closed_form(0.36));
  expect_closure_matches(alpha, 7, septic_closed_form(0.36));
}

TEST(SolveUnimodularC, CubicClosedForm) {
  const auto sols = solve_unimodular_c(0.5, 3);
  ASSERT_EQ(sols.size(), 2u);
  // Oracle: c^2 + 1.25 c + 1 = 0.
  const Complex disc = std::sqrt(Complex(1.25 * 1.25 - 4.0));
  const std::array<Complex, 2> exact{(-1.25 + disc) / 2.0, (-1.25 - disc) / 2.0};
  for (const auto& s : sols) {
    const Real d = std::min(std::abs(s.c - exact[0]), std::abs(s.c - exact[1]));
    EXPECT_LE(d, 1e-9);
    EXPECT_LE(std::min(std::abs(s.c - Complex(-0.625, 0.780625)), std::abs(s.c - Complex(-0.625, -0.780625))),
              1e-6);
  }
}

TEST(SolveUnimodularC, QuinticContainsQuotedConstant) {
  const auto sols = solve_unimodular_c(0.5, 5);
  const auto it = std::find_if(sols.begin(), sols.end(), [](const auto& s) {
    return std::abs(s.c - Complex(-0.856763, -0.515711)) <= 1e-4;
  });
  ASSERT_NE(it, sols.end());
  EXPECT_LT(std::abs(it->orbit.points[1] - Complex(0.428381, 0.257855)), 1e-4);
  EXPECT_LT(std::abs(it->orbit.points[4] - 0.5), 1e-4);
}

TEST(SolveUnimodularC, SepticContainsQuotedConstant) {
  const auto sols = solve_unimodular_c(0.5, 7);
  EXPECT_TRUE(std::any_of(sols.begin(), sols.end(), [](const auto& s) {
    return std::abs(s.c - Complex(0.217617, -0.976034)) <= 1e-4;
  }));
}

TEST(SolveUnimodularC, DegenerateOrbitsNeedZeroTolerance) {
  // n = 2 has only the involution c = -1 with orbit {0, alpha}.
  const auto two = solve_unimodular_c(0.5, 2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_LT(std::abs(two[0].c + 1.0), 1e-12);
  // n = 6 at tol 0 admits c = -1, whose orbit repeats {0, 1/2}.
  const auto loose = solve_unimodular_c(0.5, 6, 0.0);
  const auto strict = solve_unimodular_c(0.5, 6);
  auto has_minus_one = [](const auto& v) {
    return std::any_of(v.begin(), v.end(), [](const auto& s) { return std::abs(s.c + 1.0) < 1e-6; });
  };
  EXPECT_TRUE(has_minus_one(loose));
  EXPECT_FALSE(has_minus_one(strict));
  EXPECT_GT(loose.size(), strict.size());
}

TEST(SolveUnimodularC, Errors) {
  EXPECT_THROW(solve_unimodular_c(0.0, 3), Error);
  EXPECT_THROW(solve_unimodular_c(0.5, 1), Error);
}

TEST(MoebiusProperty, CircleMapsToCircle) {
  Sampler s(21);
  for (int trial = 0; trial < 20; ++trial) {
    const MoebiusTransform m(s.on_circle(), s.in_disk(0.95));
    for (int k = 0; k < 256; ++k) {
      const Complex z = std::polar(1.0, 2 * std::numbers::pi * k / 256.0);
      EXPECT_LE(std::abs(std::abs(m(z)) - 1.0), 1e-12);
    }
  }
}

TEST(MoebiusProperty, CompositionIsAssociative) {
  Sampler s(22);
  for (int trial = 0; trial < 100; ++trial) {
    const MoebiusTransform a(s.on_circle(), s.in_disk(0.8));
    const MoebiusTransform b(s.on_circle(), s.in_disk(0.8));
    const MoebiusTransform c(s.on_circle(), s.in_disk(0.8));
    const auto left = moebius_compose(moebius_compose(a, b), c);
    const auto right = moebius_compose(a, moebius_compose(b, c));
    EXPECT_LE(left.distance(right), 1e-10);
  }
}

TEST(MoebiusProperty, OrdersOfPowersDivideTheOrder) {
  Sampler s(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = s.index(2, 7);
    const Complex alpha = s.in_disk(0.7);
    if (std::abs(alpha) < 0.05) continue;
    const auto sols = solve_unimodular_c(alpha, n);
    const MoebiusTransform m(sols[s.index(0, sols.size() - 1)].c, alpha);
    const auto k = moebius_order(m, 16);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, n);
    for (std::size_t j = 1; j < 2 * n; ++j) {
      const auto kj = moebius_order(moebius_power(m, j), 16);
      ASSERT_TRUE(kj.has_value());
      EXPECT_EQ(*k % *kj, 0u);
    }
  }
}

TEST(MoebiusProperty, FixedPointResidual) {
  Sampler s(24);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const MoebiusTransform m(s.on_circle(), s.in_disk(0.9));
    const auto g = moebius_fixed_point_in_disk(m);
    if (!g) continue;
    ++found;
    EXPECT_LE(std::abs(m(*g) - *g), 1e-10);
  }
  EXPECT_GT(found, 50);
}

}  // namespace
