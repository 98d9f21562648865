#include <gtest/gtest.h>

#include "tgmaps/bijections.hpp"

using namespace tgmaps;

TEST(MarcusSchaeffer, SingleEdge) {
  const auto tree = one_face_from_pairing({1, 0});
  const auto v = vertex_orbits(tree);
  std::vector<int> label(2);
  label[v.id[0]] = 0;
  label[v.id[1]] = 1;
  const auto pq = marcus_schaeffer_forward(tree, label, Sign::up);
  EXPECT_EQ(pq.q.num_vertices(), 3);
  EXPECT_TRUE(check_quadrangulation(pq.q).ok(0, 1));
  EXPECT_TRUE(ms_distance_identity(tree, label, pq));
}

TEST(MarcusSchaeffer, EmptyMap) {
  const auto pq = marcus_schaeffer_forward(CombMap{}, {0}, Sign::up);
  EXPECT_EQ(pq.q.num_vertices(), 2);
  EXPECT_EQ(pq.q.map.num_half_edges(), 0);
}

TEST(MarcusSchaeffer, DoubleLoopBothSigns) {
  const auto m = one_face_from_pairing({2, 3, 0, 1});
  const auto up = marcus_schaeffer_forward(m, {0}, Sign::up);
  const auto down = marcus_schaeffer_forward(m, {0}, Sign::down);
  EXPECT_TRUE(check_quadrangulation(up.q).ok(1, 2));
  EXPECT_TRUE(check_quadrangulation(down.q).ok(1, 2));
  EXPECT_NE(up.q.map.root, down.q.map.root);
}

TEST(MarcusSchaeffer, RejectsBadInput) {
  const auto tree = one_face_from_pairing({1, 0});
  EXPECT_THROW(marcus_schaeffer_forward(tree, {0, 2}, Sign::up), StructureError);
  EXPECT_THROW(marcus_schaeffer_forward(two_face_from_pairing({1, 0}, 1), {0}, Sign::up), StructureError);
}

TEST(MarcusSchaeffer, CountCheck) {
  for (auto [n, g] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {3, 0}, {2, 1}, {3, 1}, {4, 0}, {4, 1}, {4, 2}}) {
    const auto r = ms_count_check(n, g);
    EXPECT_EQ(r.invalid_outputs, 0u) << n << "," << g;
    EXPECT_EQ(r.distinct_outputs, r.inputs) << n << "," << g;
    EXPECT_EQ(r.inputs, r.expected) << n << "," << g;
  }
  EXPECT_EQ(ms_count_check(1, 0).inputs, 6u);
  EXPECT_EQ(ms_count_check(2, 0).inputs, 36u);
  EXPECT_EQ(ms_count_check(2, 1).inputs, 2u);
}

TEST(Miermont, SingleLoop) {
  const auto m = two_face_from_pairing({1, 0}, 1);
  const auto o = miermont_forward(m, 0, 1, {0});
  EXPECT_EQ(o.q.num_vertices(), 3);
  EXPECT_EQ(o.delta, 0);
  EXPECT_EQ(o.eps, 0);
  EXPECT_TRUE(check_miermont(o, 0, 1).ok());
  EXPECT_EQ(brute_force_A(1, 0, std::nullopt), 1u);
}

TEST(Miermont, GenusZeroSuite) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = miermont_suite(n, 0);
    EXPECT_GT(r.instances, 0u);
    EXPECT_EQ(r.failures, 0u) << "n=" << n << " quad=" << r.quad_fail << " label=" << r.label_fail << " m2=" << r.m2_fail
                              << " m2'=" << r.m2prime_fail << " m3=" << r.m3_fail << " crossed=" << r.crossed_fail;
  }
}

TEST(Miermont, GenusOneSuite) {
  for (int n = 2; n <= 4; ++n) EXPECT_TRUE(miermont_suite(n, 1).ok()) << n;
}

TEST(LeftmostGeodesic, AdjacentSource) {
  const auto m = two_face_from_pairing({1, 0}, 1);
  const auto o = miermont_forward(m, 0, 1, {0});
  EXPECT_EQ(leftmost_geodesic(o.q, o.L, o.e1, {o.s1, o.s2}), o.s1);
}

TEST(Audit, GenusZeroSmall) {
  const std::array<std::uint64_t, 5> slack_expected{0, 4, 70, 1164};
  for (int n = 1; n <= 4; ++n) {
    const auto r = m3_vs_m3prime_audit(n, 0);
    EXPECT_EQ(r.inclusion_failures, 0u) << n;
    EXPECT_EQ(r.label_failures, 0u) << n;
    EXPECT_EQ(r.crossed_failures, 0u) << n;
    EXPECT_EQ(r.wide_gap, 0u) << n;
    // deficit tuples with both gaps above 2 do occur
    EXPECT_EQ(r.slack_failures, slack_expected[n - 1]) << n;
    EXPECT_TRUE(r.counts_match()) << n << ": " << r.m3_weighted[0] << " " << r.m3_weighted[1] << " " << r.m3_weighted[2]
                                  << " vs " << r.a_counts[0] << " " << r.a_counts[1] << " " << r.a_counts[2];
  }
}

TEST(Audit, ForwardImagesCanHaveGapThree) {
  // n = 2 already has Miermont images outside both gap-2 bounds
  int wide = 0;
  for_each_two_face_labelled(2, 0, [&](const CombMap& m, int p, const Orbits&, const std::vector<int>& l, int) {
    const auto o = miermont_forward(m, 0, p, l);
    const auto adj = adjacency(o.q);
    const auto d1 = bfs_distances(adj, o.s1), d2 = bfs_distances(adj, o.s2);
    const auto t = evaluate_tuple(o.q, d1, d2, o.s1, o.s2, o.e1, o.e2, o.eps, true);
    EXPECT_TRUE(t.m2 && t.m3);
    if (!t.m3prime && t.gap > 2) ++wide;
  });
  EXPECT_EQ(wide, 2);
}
