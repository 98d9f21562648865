#include <gtest/gtest.h>

#include "tgmaps/elimination.hpp"

using namespace tgmaps;

namespace {
void expect_vanishes(const DiffPoly& p, std::size_t order, const std::string& what) {
  const auto v = evaluate(p, u_series(order));
  EXPECT_GT(v.precision(), 5) << what;
  EXPECT_TRUE(v.is_zero()) << what;
}
}  // namespace

TEST(DiffPoly, DeriveRules) {
  // d/ds (s^-2 U0^2) = -2 s^-3 U0^2 + 2 s^-2 U0 U1
  const auto p = DiffPoly::term(1, -2, 0, 2);
  const auto d = p.derive();
  DiffPoly want = DiffPoly::term(-2, -3, 0, 2) + DiffPoly::term(2, -2, 0) * DiffPoly::u(1);
  EXPECT_EQ(d, want);
  EXPECT_THROW(DiffPoly::u(5).derive(), StructureError);
}

TEST(DiffPoly, SExponentBound) {
  EXPECT_THROW(DiffPoly::s(13), BoundError);
  EXPECT_THROW(DiffPoly::s(-12) * DiffPoly::s(-1), BoundError);
  EXPECT_NO_THROW(DiffPoly::s(-12) * DiffPoly::s(24 - 12));
}

TEST(DiffPoly, SubstituteAndCoefficient) {
  const auto p = DiffPoly::u(2) * DiffPoly::u(2) + DiffPoly::term(3, 1, 2);
  const auto q = p.substitute(2, DiffPoly::u(0) + DiffPoly::s());
  EXPECT_FALSE(q.uses(2));
  EXPECT_EQ(p.degree_in(2), 2);
  EXPECT_EQ(p.coefficient_of(2, 1), DiffPoly::s() * Rational(3));
}

TEST(DiffPoly, LeibnizProperty) {
  const DiffPoly a = DiffPoly::term(2, -1, 0, 2) + DiffPoly::term(Rational(1, 3), 2, 1);
  const DiffPoly b = DiffPoly::term(-5, 1, 0) * DiffPoly::u(2) + DiffPoly::s(-3);
  EXPECT_EQ((a * b).derive(), a.derive() * b + a * b.derive());
}

TEST(Elimination, E0MatchesSeries) {
  expect_vanishes(build_e0(), 40, "E0");
}

TEST(Elimination, TriangularSolveValidOnSeries) {
  const auto sol = triangular_solve();
  for (int i = 0; i < 4; ++i) {
    expect_vanishes(sol.equations[i], 40, "E" + std::to_string(i));
    EXPECT_FALSE(sol.u[i].uses(2) || sol.u[i].uses(3) || sol.u[i].uses(4) || sol.u[i].uses(5));
    expect_vanishes(DiffPoly::u(i + 2) - sol.u[i], 40, "U" + std::to_string(i + 2));
  }
}

TEST(Elimination, TwoRoutesAgree) {
  const auto a = triangular_solve();
  const auto b = solve_by_differentiation();
  for (int i = 0; i < 4; ++i) EXPECT_EQ(a.u[i], b[i]) << "U" << i + 2;
}

TEST(Elimination, FifthOrderIdentityExact) {
  const auto d = derive_rhs_identity();
  EXPECT_TRUE(d.residual.is_zero()) << d.residual.str();
  EXPECT_FALSE(d.lhs_substituted.uses(2));
  expect_vanishes(d.lhs_linear - d.rhs, 40, "identity on series");
}

TEST(Elimination, DumpIsDeterministic) {
  EXPECT_EQ(derive_rhs_identity().rhs.str(), derive_rhs_identity().rhs.str());
  EXPECT_EQ(build_e0().str().find("-1/3 * s^1\n") != std::string::npos, true);
}
