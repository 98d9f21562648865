#pragma once

// Root-edge deletion for labelled one-face maps:
//   [z^n] L_{g+1} = 3 sum_{g1+g2=g+1} [z^(n-1)] L_{g1} L_{g2} + [z^(n-1)] A_g,
// checked both as a coefficient identity and by deleting the root edge of
// every enumerated labelled map and classifying what is left.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "tgmaps/labelling.hpp"

namespace tgmaps {

/// The map with edge {h, alpha(h)} removed, as sigma/alpha arrays where
/// deleted half-edges are -1. after_r / after_rr are the first surviving
/// half-edges after h and alpha(h) in rotation order (-1 if none).
struct EdgeDeletion {
  std::vector<int> sigma;
  std::vector<int> alpha;
  int after_r = -1;
  int after_rr = -1;
};

inline EdgeDeletion delete_edge(const CombMap& m, int r) {
  const int rr = m.alpha[r];
  EdgeDeletion d;
  const int n2 = m.num_half_edges();
  d.sigma.assign(n2, -1);
  d.alpha.assign(n2, -1);
  auto next_alive = [&](int h) {
    int x = m.sigma[h];
    for (int guard = 0; (x == r || x == rr) && guard < 3; ++guard) x = m.sigma[x];
    return (x == r || x == rr) ? -1 : x;
  };
  for (int h = 0; h < n2; ++h) {
    if (h == r || h == rr) continue;
    d.sigma[h] = next_alive(h);
    d.alpha[h] = m.alpha[h];
  }
  d.after_r = next_alive(r);
  d.after_rr = next_alive(rr);
  return d;
}

/// True iff removing the edge of h disconnects the map (a pendant edge counts).
inline bool is_isthmus(const CombMap& m, int h) {
  const EdgeDeletion d = delete_edge(m, h);
  if (d.after_r < 0 || d.after_rr < 0) return true;
  const auto rel = canonical_relabel(d.sigma, d.alpha, d.after_r);
  return rel.old_to_new[d.after_rr] < 0;
}

struct TutteRow {
  int n = 0;
  BigInt lhs;           // [z^n] L_{g+1}
  BigInt isthmic_term;  // 3 sum [z^(n-1)] L_{g1} L_{g2}
  BigInt a_term;        // [z^(n-1)] A_g
  bool formula_ok = false;

  std::uint64_t direct_total = 0;
  std::uint64_t direct_isthmic = 0;
  std::uint64_t direct_nonisthmic = 0;
  bool isthmic_split_ok = false;   // per (g1, a, g2, b) counts match 3 L L
  bool isthmic_injective = false;
  bool nonisthmic_ok = false;      // genus, two faces, per-eps counts match A_g
  bool nonisthmic_injective = false;
  std::array<std::uint64_t, 3> direct_eps{};
  std::array<std::uint64_t, 3> a_eps{};

  bool ok() const {
    return formula_ok && isthmic_split_ok && isthmic_injective && nonisthmic_ok && nonisthmic_injective &&
           BigInt(static_cast<unsigned long>(direct_total)) == lhs;
  }
};

struct TutteReport {
  int g_target = 0;
  int n_max = 0;
  std::vector<TutteRow> rows;
  bool ok() const {
    for (const auto& r : rows)
      if (!r.ok()) return false;
    return true;
  }
  std::optional<int> first_failure() const {
    for (const auto& r : rows)
      if (!r.ok()) return r.n;
    return std::nullopt;
  }
};

namespace detail {

/// Labels of the origins of the relabelled half-edges, translated so the
/// first one is 0.
inline std::vector<int> labels_along(const Relabelled& rel, const Orbits& verts, const std::vector<int>& label) {
  std::vector<int> out;
  out.reserve(rel.new_to_old.size());
  for (int old : rel.new_to_old) out.push_back(label[verts.id[old]]);
  if (!out.empty()) {
    const int base = out[0];
    for (auto& x : out) x -= base;
  }
  return out;
}

inline void append(std::vector<int>& key, const std::vector<int>& part) {
  key.push_back(static_cast<int>(part.size()));
  key.insert(key.end(), part.begin(), part.end());
}

}  // namespace detail

inline TutteReport verify_tutte_equation(int n_max, int g_target) {
  if (g_target < 1) throw StructureError("verify_tutte_equation: g_target must be >= 1");
  const int g = g_target - 1;
  TutteReport report;
  report.g_target = g_target;
  report.n_max = n_max;

  std::vector<std::vector<BigInt>> L(g_target + 1);
  for (int h = 0; h <= g_target; ++h) L[h] = l_coefficients(h, n_max);

  for (int n = 1; n <= n_max; ++n) {
    TutteRow row;
    row.n = n;
    row.lhs = L[g_target][n];
    for (int g1 = 0; g1 <= g_target; ++g1)
      for (int a = 0; a <= n - 1; ++a) row.isthmic_term += 3 * L[g1][a] * L[g_target - g1][n - 1 - a];
    const TwoFaceCounts A = brute_force_A_split(n - 1, g);
    row.a_eps = A.by_eps;
    row.a_term = BigInt(static_cast<unsigned long>(A.all()));
    row.formula_ok = (row.lhs == row.isthmic_term + row.a_term);

    std::map<std::tuple<int, int, int, int>, std::uint64_t> split;
    std::set<std::vector<int>> isthmic_keys, nonisthmic_keys;
    bool structure_ok = true;

    for_each_unicellular(n, g_target, [&](const CombMap& m) {
      const int r = m.root, rr = m.alpha[r];
      const EdgeDeletion d = delete_edge(m, r);
      const bool isthmic = is_isthmus(m, r);
      for_each_labelling(m, [&](const Orbits& verts, const std::vector<int>& label) {
        ++row.direct_total;
        const int incr = label[verts.id[rr]] - label[verts.id[r]];
        if (isthmic) {
          ++row.direct_isthmic;
          const Relabelled m1 = canonical_relabel(d.sigma, d.alpha, d.after_r);
          const Relabelled m2 = canonical_relabel(d.sigma, d.alpha, d.after_rr);
          const int g1 = genus(m1.map), g2 = genus(m2.map);
          ++split[{g1, m1.map.num_edges(), g2, m2.map.num_edges()}];
          std::vector<int> key{incr};
          detail::append(key, map_key(m1.map));
          detail::append(key, detail::labels_along(m1, verts, label));
          detail::append(key, map_key(m2.map));
          detail::append(key, detail::labels_along(m2, verts, label));
          isthmic_keys.insert(std::move(key));
          return;
        }
        ++row.direct_nonisthmic;
        // Contours of the two faces of the remaining map, from c1 and c2.
        auto phi = [&](int h) { return d.sigma[d.alpha[h]]; };
        std::vector<int> order;
        int p = -1;
        for (int start : {d.after_r, d.after_rr}) {
          if (std::find(order.begin(), order.end(), start) != order.end()) break;
          int h = start;
          do {
            order.push_back(h);
            h = phi(h);
          } while (h != start && order.size() <= static_cast<std::size_t>(2 * n));
          if (p < 0) p = static_cast<int>(order.size());
        }
        if (order.size() != static_cast<std::size_t>(2 * n - 2) || p <= 0 || p >= 2 * n - 2) {
          structure_ok = false;
          return;
        }
        std::vector<int> idx(2 * n, -1);
        for (std::size_t i = 0; i < order.size(); ++i) idx[order[i]] = static_cast<int>(i);
        if (std::count(idx.begin(), idx.end(), -1) != 2) {
          structure_ok = false;
          return;
        }
        std::vector<int> alpha_new(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) alpha_new[i] = idx[d.alpha[order[i]]];
        const CombMap two = two_face_from_pairing(alpha_new, p);
        for (std::size_t i = 0; i < order.size(); ++i)
          if (two.sigma[i] != idx[d.sigma[order[i]]]) structure_ok = false;
        if (genus(two) != g) structure_ok = false;
        const int eps = label[verts.id[d.after_rr]] - label[verts.id[d.after_r]];
        if (eps < -1 || eps > 1) {
          structure_ok = false;
          return;
        }
        ++row.direct_eps[eps + 1];
        std::vector<int> key{p};
        key.insert(key.end(), alpha_new.begin(), alpha_new.end());
        const int base = label[verts.id[d.after_r]];
        for (int h : order) key.push_back(label[verts.id[h]] - base);
        nonisthmic_keys.insert(std::move(key));
      });
    });

    row.isthmic_split_ok = true;
    for (const auto& [k, c] : split) {
      const auto [g1, a, g2, b] = k;
      if (BigInt(static_cast<unsigned long>(c)) != 3 * L.at(g1).at(a) * L.at(g2).at(b)) row.isthmic_split_ok = false;
    }
    BigInt split_total;
    for (const auto& [k, c] : split) split_total += static_cast<unsigned long>(c);
    if (split_total != row.isthmic_term) row.isthmic_split_ok = false;
    row.isthmic_injective = isthmic_keys.size() == row.direct_isthmic;
    row.nonisthmic_injective = nonisthmic_keys.size() == row.direct_nonisthmic;
    row.nonisthmic_ok = structure_ok && row.direct_eps == row.a_eps;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace tgmaps
