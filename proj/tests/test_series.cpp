#include <gtest/gtest.h>

#include <random>

#include "tgmaps/series.hpp"

using namespace tgmaps;

namespace {
TruncatedSeries random_series(std::mt19937_64& rng, std::size_t order) {
  std::uniform_int_distribution<long> d(-20, 20);
  std::vector<Rational> c;
  for (std::size_t i = 0; i <= order; ++i) c.emplace_back(d(rng), 1 + std::abs(d(rng)));
  return TruncatedSeries(std::move(c));
}
}  // namespace

TEST(TruncatedSeries, MinOrderRule) {
  const auto a = TruncatedSeries::monomial(5, 1);
  const auto b = TruncatedSeries::monomial(3, 2);
  EXPECT_EQ((a + b).order(), 3u);
  EXPECT_EQ((a * b).order(), 3u);
  EXPECT_EQ((a * b)[3], Rational(1));
  EXPECT_EQ(a.shifted(2).order(), 7u);
}

TEST(TruncatedSeries, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_series(rng, 8), b = random_series(rng, 8), c = random_series(rng, 8);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Theta, FiveFactorsOnSSquared) {
  const auto r = theta_apply(TruncatedSeries::monomial(4, 2), falling_five_factors());
  EXPECT_EQ(r[2], Rational(-105));
  EXPECT_EQ(r.first_nonzero(), std::optional<std::size_t>(2));
}

TEST(Theta, Composition) {
  std::mt19937_64 rng(5);
  const auto a = random_series(rng, 10);
  const std::vector<ThetaFactor> f{{5, 1}}, g{{5, -1}};
  EXPECT_EQ(theta_apply(theta_apply(a, g), f), theta_apply(a, {{5, 1}, {5, -1}}));
}

TEST(L0, CatalanTimesPowersOfThree) {
  const auto l0 = l0_series(30);
  EXPECT_EQ(l0[3], Rational(135));
  for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(l0[n], Rational(catalan(n) * ipow(3, n))) << n;
}

TEST(Kernel, VanishesToOrder) {
  EXPECT_TRUE(kernel_check(60).is_zero());
}

TEST(TauOde, ResidualZero) {
  for (std::size_t n : {10u, 50u, 100u}) EXPECT_TRUE(verify_tau_ode(n).is_zero()) << n;
}

TEST(TauOde, DetectsCorruption) {
  // Perturbing tau_3 must show up in the residual.
  auto u = u_series(20);
  u[3] += Rational(1);
  auto r = u - TruncatedSeries::monomial(20, 1, Rational(1, 3)) - (u * u) * Rational(1, 2);
  r -= theta_apply(u, {{5, 1}, {5, -1}}).shifted(1).truncated(20) * Rational(1, 3);
  EXPECT_FALSE(r.is_zero());
}

TEST(FifthOrderIdentity, ResidualZero) {
  for (std::size_t n : {10u, 50u, 100u}) EXPECT_TRUE(verify_eliminate_identity(n).is_zero()) << n;
}

TEST(CPrime, GenusZeroValue) {
  const auto c = cprime_check(0);
  EXPECT_EQ(c.raw, Rational(4));
  EXPECT_EQ(c.simplified, Rational(4));
}

TEST(CPrime, RawEqualsSimplified) {
  const auto tau = tau_sequence(52);
  for (unsigned g = 0; g <= 50; ++g) {
    const auto c = cprime_check(g, tau);
    EXPECT_EQ(c.raw, c.simplified) << g;
  }
}
