#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tgmaps/constants.hpp"

using namespace tgmaps;

TEST(Tau, FirstValues) {
  const auto tau = tau_sequence(3);
  ASSERT_EQ(tau.size(), 4u);
  EXPECT_EQ(tau[0], Rational(-1));
  EXPECT_EQ(tau[1], Rational(1, 3));
  EXPECT_EQ(tau[2], Rational(49, 18));
  EXPECT_EQ(tau[3], Rational(2450, 27));
}

TEST(Tau, PositiveAndIncreasingFromOne) {
  const auto tau = tau_sequence(40);
  for (unsigned g = 1; g + 1 < tau.size(); ++g) {
    EXPECT_GT(tau[g], Rational(0));
    EXPECT_LT(tau[g], tau[g + 1]);
  }
}

TEST(Tau, PrefixStable) {
  const auto a = tau_sequence(10);
  const auto b = tau_sequence(25);
  for (unsigned g = 0; g <= 10; ++g) EXPECT_EQ(a[g], b[g]);
}

TEST(GammaHalf, KnownValues) {
  EXPECT_EQ(gamma_half(1), (SqrtPiRational{Rational(1), 1}));
  EXPECT_EQ(gamma_half(9), (SqrtPiRational{Rational(105, 16), 1}));
  EXPECT_EQ(gamma_half(-1), (SqrtPiRational{Rational(-2), 1}));
  EXPECT_EQ(gamma_half(-3), (SqrtPiRational{Rational(4, 3), 1}));
  EXPECT_EQ(gamma_half(2), (SqrtPiRational{Rational(1), 0}));
  EXPECT_EQ(gamma_half(10), (SqrtPiRational{Rational(24), 0}));
}

TEST(GammaHalf, Poles) {
  EXPECT_THROW(gamma_half(0), PoleError);
  EXPECT_THROW(gamma_half(-2), PoleError);
  EXPECT_THROW(gamma_half(-8), PoleError);
}

TEST(GammaHalf, MatchesTgamma) {
  for (long k = -9; k <= 30; ++k) {
    if (k <= 0 && k % 2 == 0) continue;
    const double want = std::tgamma(0.5 * static_cast<double>(k));
    EXPECT_NEAR(gamma_half(k).to_double() / want, 1.0, 1e-12) << k;
  }
}

TEST(GammaHalf, FunctionalEquation) {
  // Gamma(x + 1) = x Gamma(x) for x = k/2.
  for (long k = -11; k <= 40; k += 2) {
    const auto a = gamma_half(k);
    const auto b = gamma_half(k + 2);
    EXPECT_EQ(b.sqrt_pi_exp, a.sqrt_pi_exp);
    EXPECT_EQ(b.coeff, a.coeff * Rational(k, 2));
  }
}

TEST(TConstant, FirstValues) {
  EXPECT_EQ(t_constant(0), (SqrtPiRational{Rational(2), -1}));
  EXPECT_EQ(t_constant(1), (SqrtPiRational{Rational(1, 24), 0}));
  EXPECT_EQ(t_constant(2), (SqrtPiRational{Rational(7, 4320), -1}));
  EXPECT_NEAR(t_constant(0).to_double(), 2.0 / std::sqrt(std::numbers::pi), 1e-15);
}

TEST(TConstant, PiExponentAlternates) {
  const auto tau = tau_sequence(30);
  for (unsigned g = 0; g <= 30; ++g) EXPECT_EQ(t_constant(g, tau).sqrt_pi_exp, g % 2 == 0 ? -1 : 0) << g;
}

TEST(ImpliedPairMoment, OneSixthForAllGenera) {
  const auto tau = tau_sequence(201);
  for (unsigned g = 1; g <= 200; ++g) EXPECT_EQ(implied_pair_moment(g, tau), Rational(1, 6)) << g;
}

TEST(RationalProperty, FieldAxioms) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  auto draw = [&] {
    long q = 0;
    while (q == 0) q = d(rng);
    return Rational(d(rng), q);
  };
  for (int i = 0; i < 500; ++i) {
    const Rational a = draw(), b = draw(), c = draw();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(Rational::parse(a.str()), a);
  }
}

TEST(Rational, StrShapeAndErrors) {
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_EQ(Rational(-4, 6).str(), "-2/3");
  EXPECT_EQ(Rational(4, -6).str(), "-2/3");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_EQ(Rational::pow2(-3), Rational(1, 8));
  EXPECT_EQ(double_factorial_odd(4), BigInt(105));
  EXPECT_EQ(catalan(5), BigInt(42));
}
