#include <gtest/gtest.h>

#include "tgmaps/tutte.hpp"

using namespace tgmaps;

namespace {
CombMap from_cycles(int n2, const std::vector<std::vector<int>>& alpha_pairs, const std::vector<std::vector<int>>& sigma_cycles) {
  CombMap m;
  m.alpha.assign(n2, -1);
  m.sigma.assign(n2, -1);
  for (const auto& e : alpha_pairs) {
    m.alpha[e[0]] = e[1];
    m.alpha[e[1]] = e[0];
  }
  for (const auto& c : sigma_cycles)
    for (std::size_t i = 0; i < c.size(); ++i) m.sigma[c[i]] = c[(i + 1) % c.size()];
  m.validate();
  return m;
}
}  // namespace

TEST(Genus, Examples) {
  EXPECT_EQ(genus(from_cycles(2, {{0, 1}}, {{0}, {1}})), 0);
  // Interleaved double loop a b a b.
  EXPECT_EQ(genus(one_face_from_pairing({2, 3, 0, 1})), 1);
  EXPECT_EQ(genus(from_cycles(4, {{0, 1}, {2, 3}}, {{0}, {1, 2}, {3}})), 0);
  EXPECT_THROW(genus(from_cycles(4, {{0, 1}, {2, 3}}, {{0}, {1}, {2}, {3}})), StructureError);
}

TEST(CombMap, ValidateRejects) {
  CombMap m;
  m.alpha = {0, 1};
  m.sigma = {0, 1};
  EXPECT_THROW(m.validate(), StructureError);
}

TEST(Unicellular, SmallCounts) {
  EXPECT_EQ(enumerate_unicellular(1, 0).size(), 1u);
  EXPECT_EQ(enumerate_unicellular(2, 0).size(), 2u);
  EXPECT_EQ(enumerate_unicellular(2, 1).size(), 1u);
  EXPECT_EQ(enumerate_unicellular(3, 1).size(), 10u);
  EXPECT_THROW(enumerate_unicellular(10, 0), BoundError);
}

TEST(Unicellular, CatalanAndDoubleFactorial) {
  for (int n = 1; n <= 9; ++n) {
    const auto c = unicellular_counts_by_genus(n);
    std::uint64_t total = 0;
    for (auto x : c) total += x;
    EXPECT_EQ(BigInt(static_cast<unsigned long>(total)), double_factorial_odd(n)) << n;
    EXPECT_EQ(BigInt(static_cast<unsigned long>(c[0])), catalan(n)) << n;
  }
}

TEST(Unicellular, AllHaveOneFaceAndIntegerGenus) {
  for (int n = 1; n <= 5; ++n)
    for (int g = 0; 2 * g <= n; ++g)
      for_each_unicellular(n, g, [&](const CombMap& m) {
        m.validate();
        EXPECT_EQ(face_orbits(m).count, 1);
        EXPECT_EQ(genus(m), g);
      });
}

TEST(RootedMaps, KnownCounts) {
  const std::vector<std::vector<std::uint64_t>> want = {{2}, {9, 1}, {54, 20}, {378, 307, 21}};
  for (int n = 1; n <= 4; ++n) {
    const auto c = enumerate_rooted_maps(n);
    EXPECT_EQ(c.by_genus, want[n - 1]) << n;
    EXPECT_EQ(BigInt(static_cast<unsigned long>(c.by_genus[0])), tutte_planar_count(n));
    // labelled transitive pairs / (2n-1)! = rooted maps
    const BigInt pairs = BigInt(static_cast<unsigned long>(c.transitive_rotations)) * double_factorial_odd(n);
    EXPECT_EQ(pairs, BigInt(static_cast<unsigned long>(c.total())) * factorial(2 * n - 1));
  }
  EXPECT_THROW(enumerate_rooted_maps(5), BoundError);
}

TEST(Labellings, Examples) {
  for_each_unicellular(4, 0, [](const CombMap& m) { EXPECT_EQ(count_labellings(m), 81u); });
  // One vertex, two interleaved loops.
  EXPECT_EQ(count_labellings(one_face_from_pairing({2, 3, 0, 1})), 1u);
  EXPECT_EQ(count_labellings(CombMap{}), 1u);
}

TEST(Labellings, AllSatisfyEdgeConstraint) {
  for_each_unicellular(4, 1, [](const CombMap& m) {
    const int root_vertex = vertex_orbits(m).id[m.root];
    for_each_labelling(m, [&](const Orbits& v, const std::vector<int>& l) {
      EXPECT_EQ(l[root_vertex], 0);
      for (int h = 0; h < m.num_half_edges(); ++h) EXPECT_LE(std::abs(l[v.id[h]] - l[v.id[m.alpha[h]]]), 1);
    });
  });
}

TEST(BruteForceL, Examples) {
  EXPECT_EQ(brute_force_L(1, 0), 3u);
  EXPECT_EQ(brute_force_L(2, 1), 1u);
  EXPECT_EQ(brute_force_L(2, 0), 18u);
}

TEST(BruteForceL, MatchesRootedMapCounts) {
  // [z^n] L_g = (n + 2 - 2g) m_g(n) / 2
  for (int n = 1; n <= 4; ++n) {
    const auto m = enumerate_rooted_maps(n);
    for (int g = 0; 2 * g <= n; ++g)
      EXPECT_EQ(2 * brute_force_L(n, g), static_cast<std::uint64_t>(n + 2 - 2 * g) * m.by_genus[g]) << n << "," << g;
  }
  EXPECT_EQ(brute_force_L(3, 1), 3u * 20u / 2u);
}

TEST(BruteForceA, Examples) {
  EXPECT_EQ(brute_force_A(1, 0, std::nullopt), 1u);
  EXPECT_EQ(brute_force_A(1, 0, std::optional<int>(0)), 1u);
  const auto c = brute_force_A_split(2, 0);
  EXPECT_EQ(c.all(), brute_force_A(2, 0, std::optional<int>(-1)) + brute_force_A(2, 0, std::optional<int>(0)) + brute_force_A(2, 0, std::optional<int>(1)));
  EXPECT_EQ(c.eps(-1), c.eps(1));
}

TEST(Tutte, HandCase) {
  const auto r = verify_tutte_equation(2, 1);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[1].lhs, 1);
  EXPECT_EQ(r.rows[1].isthmic_term, 0);
  EXPECT_EQ(r.rows[1].a_term, 1);
}

TEST(Tutte, GenusOneAndTwo) {
  for (int g : {1, 2}) {
    const auto r = verify_tutte_equation(5, g);
    for (const auto& row : r.rows) {
      EXPECT_TRUE(row.formula_ok) << g << " n=" << row.n;
      EXPECT_TRUE(row.isthmic_split_ok) << g << " n=" << row.n;
      EXPECT_TRUE(row.isthmic_injective) << g << " n=" << row.n;
      EXPECT_TRUE(row.nonisthmic_ok) << g << " n=" << row.n;
      EXPECT_TRUE(row.nonisthmic_injective) << g << " n=" << row.n;
    }
    EXPECT_TRUE(r.ok());
  }
}
