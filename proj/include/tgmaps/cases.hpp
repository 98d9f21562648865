#pragma once

// Labelled one-face maps of genus G rooted at a skeleton half-edge leaving a
// non-intertwined 3-node, split by how many components the opening of the
// root vertex produces (3, 2 or 1), and compared with the series for the
// first two cases.
//
// S_h counts labelled genus-h maps rooted at a non-isthmic edge. S2_h is the
// subfamily whose root vertex has skeleton-degree exactly 2: attaching a
// bridge there yields a 3-node, so S2_h is what the two-component case
// actually needs at finite n. The version with S_h agrees only at leading
// order and is reported separately.

#include <cstdint>
#include <vector>

#include "tgmaps/labelling.hpp"
#include "tgmaps/skeleton.hpp"
#include "tgmaps/tutte.hpp"

namespace tgmaps {

struct CaseRow {
  int n = 0;
  BigInt K;              // roots admissible
  BigInt admissible_sum; // sum over rooted maps of admissible half-edges; equals 2n K
  BigInt K_dominant;
  BigInt L_dominant;     // labelled dominant rooted maps
  std::array<BigInt, 3> by_case;  // index 0: case (i) 3 components, 1: (ii), 2: (iii)
  BigInt case1_series;
  BigInt case2_series_literal;  // with S_h = (1 - 6zL0) L_h - 3z sum L L
  BigInt case2_series_refined;  // with S2_h counted directly
  bool rerooting_ok() const { return admissible_sum == BigInt(2 * n) * K; }
};

struct CaseReport {
  int G = 2;
  int n_max = 0;
  std::vector<CaseRow> rows;
  // Per genus h (index h) and n: direct and series forms of S_h, and S2_h.
  std::vector<std::vector<BigInt>> S_direct, S_series, S2_direct;

  bool case1_ok() const {
    for (const auto& r : rows)
      if (r.by_case[0] != r.case1_series) return false;
    return true;
  }
  bool case2_literal_ok() const {
    for (const auto& r : rows)
      if (r.by_case[1] != r.case2_series_literal) return false;
    return true;
  }
  bool case2_refined_ok() const {
    for (const auto& r : rows)
      if (r.by_case[1] != r.case2_series_refined) return false;
    return true;
  }
  bool s_both_ways_ok() const { return S_direct == S_series; }
  bool rerooting_ok() const {
    for (const auto& r : rows)
      if (!r.rerooting_ok()) return false;
    return true;
  }
  /// 2n K_dom = 6(G-1) L_dom: every dominant map has 2G-2 non-intertwined nodes.
  bool dominant_identity_ok() const {
    for (const auto& r : rows)
      if (BigInt(2 * r.n) * r.K_dominant != BigInt(6 * (G - 1)) * r.L_dominant) return false;
    return true;
  }
};

namespace detail {

inline std::vector<BigInt> series_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<BigInt> r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// z * a (same length, top coefficient dropped).
inline std::vector<BigInt> series_shift(const std::vector<BigInt>& a) {
  std::vector<BigInt> r(a.size());
  for (std::size_t i = 1; i < a.size(); ++i) r[i] = a[i - 1];
  return r;
}

}  // namespace detail

inline CaseReport verify_case_decomposition(int n_max, int G = 2) {
  if (G < 2) throw StructureError("verify_case_decomposition: genus must be >= 2");
  CaseReport rep;
  rep.G = G;
  rep.n_max = n_max;
  const std::size_t len = n_max + 1;

  std::vector<std::vector<BigInt>> L(G + 1);
  L[0].resize(len);
  for (int n = 0; n <= n_max; ++n) L[0][n] = catalan(n) * ipow(3, n);
  for (int h = 1; h < G; ++h) L[h] = l_coefficients(h, n_max);

  rep.S_direct.assign(G, std::vector<BigInt>(len));
  rep.S2_direct.assign(G, std::vector<BigInt>(len));
  rep.S_series.assign(G, std::vector<BigInt>(len));
  for (int h = 1; h < G; ++h) {
    for (int n = 1; n <= n_max; ++n) {
      for_each_unicellular(n, h, [&](const CombMap& m) {
        if (is_isthmus(m, m.root)) return;
        const BigInt lab = static_cast<unsigned long>(count_labellings(m));
        rep.S_direct[h][n] += lab;
        const SkeletonInfo s = skeleton(m);
        if (s.skel_degree[s.vertices.id[m.root]] == 2) rep.S2_direct[h][n] += lab;
      });
    }
    // (1 - 6 z L0) L_h - 3z sum_{g1+g2=h, >0} L_g1 L_g2
    auto zl0 = detail::series_shift(L[0]);
    std::vector<BigInt> kernel(len);
    for (std::size_t i = 0; i < len; ++i) kernel[i] = (i == 0 ? BigInt(1) : BigInt(0)) - 6 * zl0[i];
    auto s = detail::series_mul(kernel, L[h]);
    for (int g1 = 1; g1 < h; ++g1) {
      const auto prod = detail::series_shift(detail::series_mul(L[g1], L[h - g1]));
      for (std::size_t i = 0; i < len; ++i) s[i] -= 3 * prod[i];
    }
    rep.S_series[h] = s;
  }

  // Series for cases (i) and (ii).
  std::vector<BigInt> three_zl0 = detail::series_shift(L[0]);
  for (auto& x : three_zl0) x *= 3;
  std::vector<BigInt> c1(len), c2_lit(len), c2_ref(len);
  {
    std::vector<BigInt> triple(len);
    for (int g1 = 1; g1 < G; ++g1)
      for (int g2 = 1; g1 + g2 < G; ++g2) {
        const auto p = detail::series_mul(detail::series_mul(L[g1], L[g2]), L[G - g1 - g2]);
        for (std::size_t i = 0; i < len; ++i) triple[i] += p[i];
      }
    c1 = detail::series_mul(detail::series_mul(detail::series_mul(three_zl0, three_zl0), three_zl0), triple);
    for (int h = 1; h < G; ++h) {
      const auto lit = detail::series_mul(detail::series_mul(three_zl0, L[G - h]), rep.S_series[h]);
      const auto ref = detail::series_mul(detail::series_mul(three_zl0, L[G - h]), rep.S2_direct[h]);
      for (std::size_t i = 0; i < len; ++i) {
        c2_lit[i] += 3 * lit[i];
        c2_ref[i] += 3 * ref[i];
      }
    }
  }

  for (int n = 1; n <= n_max; ++n) {
    CaseRow row;
    row.n = n;
    row.case1_series = c1[n];
    row.case2_series_literal = c2_lit[n];
    row.case2_series_refined = c2_ref[n];
    if (2 * G <= n) {
      for_each_unicellular(n, G, [&](const CombMap& m) {
        const BigInt lab = static_cast<unsigned long>(count_labellings(m));
        const SkeletonInfo s = skeleton(m);
        if (s.dominant) row.L_dominant += lab;
        std::vector<char> non_intertwined(s.vertices.count, 0);
        std::vector<int> components(s.vertices.count, 0);
        for (int v : s.nodes) {
          if (s.skel_degree[v] != 3) continue;
          const Opening o = open_node(m, s, v);
          if (!o.intertwined) {
            non_intertwined[v] = 1;
            components[v] = o.components;
          }
        }
        int admissible = 0;
        for (int h = 0; h < m.num_half_edges(); ++h)
          if (s.in_skeleton[h] && non_intertwined[s.vertices.id[h]]) ++admissible;
        row.admissible_sum += lab * admissible;
        const int rv = s.vertices.id[m.root];
        if (!s.in_skeleton[m.root] || !non_intertwined[rv]) return;
        row.K += lab;
        if (s.dominant) row.K_dominant += lab;
        row.by_case.at(3 - components[rv]) += lab;
      });
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace tgmaps
