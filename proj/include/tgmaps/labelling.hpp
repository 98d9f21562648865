#pragma once

// Integer vertex labellings with increments in {-1, 0, 1} along every edge,
// taken up to translation (the root vertex gets label 0), and the brute-force
// generating-function coefficients built on them.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tgmaps/combmap.hpp"

namespace tgmaps {

/// Calls f(vertices, labels) for every admissible labelling; labels[v] is the
/// label of vertex id v in `vertices` and the root vertex has label 0.
/// Vertices are assigned in BFS order from the root, each relative to its BFS
/// parent, and constraints on already-labelled neighbours are checked eagerly.
inline void for_each_labelling(const CombMap& m,
                               const std::function<void(const Orbits&, const std::vector<int>&)>& f) {
  const Orbits verts = vertex_orbits(m);
  if (m.num_half_edges() == 0) {
    Orbits single;
    single.count = 1;
    f(single, std::vector<int>{0});
    return;
  }
  if (!is_connected(m)) throw StructureError("for_each_labelling: map is disconnected");
  const int nv = verts.count;

  std::vector<std::vector<int>> adj(nv);  // neighbour vertex per incident edge end
  for (int h = 0; h < m.num_half_edges(); ++h) adj[verts.id[h]].push_back(verts.id[m.alpha[h]]);

  std::vector<int> order{verts.id[m.root]};
  std::vector<int> pos(nv, -1), parent(nv, -1);
  pos[order[0]] = 0;
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (int w : adj[order[q]]) {
      if (pos[w] < 0) {
        pos[w] = static_cast<int>(order.size());
        parent[w] = order[q];
        order.push_back(w);
      }
    }
  }
  // back[k]: neighbours of order[k] placed before it (includes the parent).
  std::vector<std::vector<int>> back(nv);
  for (int k = 0; k < nv; ++k)
    for (int w : adj[order[k]])
      if (pos[w] < k) back[k].push_back(w);

  std::vector<int> label(nv, 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == nv) {
      f(verts, label);
      return;
    }
    const int v = order[k];
    for (int d = -1; d <= 1; ++d) {
      label[v] = label[parent[v]] + d;
      bool ok = true;
      for (int w : back[k]) {
        const int diff = label[v] - label[w];
        if (diff < -1 || diff > 1) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1);
    }
  };
  rec(1);
}

inline std::uint64_t count_labellings(const CombMap& m) {
  std::uint64_t c = 0;
  for_each_labelling(m, [&](const Orbits&, const std::vector<int>&) { ++c; });
  return c;
}

/// [z^n] L_g: labelled rooted one-face maps of genus g with n edges.
inline std::uint64_t brute_force_L(int n, int g, int max_edges = kUnicellularMaxEdges) {
  std::uint64_t total = 0;
  for_each_unicellular(n, g, [&](const CombMap& m) { total += count_labellings(m); }, max_edges);
  return total;
}

/// L_g[0..n_max] as exact coefficients.
inline std::vector<BigInt> l_coefficients(int g, int n_max, int max_edges = kUnicellularMaxEdges) {
  std::vector<BigInt> c(n_max + 1);
  for (int n = 0; n <= n_max; ++n) c[n] = BigInt(static_cast<unsigned long>(brute_force_L(n, g, max_edges)));
  return c;
}

inline constexpr int kTwoFaceMaxEdges = 6;

/// Counts of labelled two-face maps with marked corners c1 in F1, c2 in F2,
/// split by eps = l(c2) - l(c1). Pairs with |eps| > 1 are not counted.
struct TwoFaceCounts {
  std::array<std::uint64_t, 3> by_eps{};  // index eps + 1
  std::uint64_t all() const { return by_eps[0] + by_eps[1] + by_eps[2]; }
  std::uint64_t eps(int e) const { return by_eps.at(e + 1); }
};

/// Calls f(map, p, vertices, labels, eps) for every connected labelled
/// two-face map of genus g with n edges and marked corners 0 and p.
inline void for_each_two_face_labelled(
    int n, int g,
    const std::function<void(const CombMap&, int, const Orbits&, const std::vector<int>&, int)>& f,
    int max_edges = kTwoFaceMaxEdges) {
  if (n < 0 || n > max_edges) throw BoundError("two-face enumeration: n outside [0, " + std::to_string(max_edges) + "]");
  if (n == 0) return;
  for (int p = 1; p < 2 * n; ++p) {
    for_each_pairing(n, [&](const std::vector<int>& alpha) {
      const CombMap m = two_face_from_pairing(alpha, p);
      if (!is_connected(m) || genus(m) != g) return;
      for_each_labelling(m, [&](const Orbits& verts, const std::vector<int>& label) {
        const int eps = label[verts.id[p]] - label[verts.id[0]];
        if (eps >= -1 && eps <= 1) f(m, p, verts, label, eps);
      });
    });
  }
}

/// [z^n] A_g split by eps.
inline TwoFaceCounts brute_force_A_split(int n, int g, int max_edges = kTwoFaceMaxEdges) {
  TwoFaceCounts c;
  for_each_two_face_labelled(
      n, g, [&](const CombMap&, int, const Orbits&, const std::vector<int>&, int eps) { ++c.by_eps[eps + 1]; },
      max_edges);
  return c;
}

/// [z^n] A_g restricted to one eps, or all |eps| <= 1 when eps is empty.
inline std::uint64_t brute_force_A(int n, int g, std::optional<int> eps, int max_edges = kTwoFaceMaxEdges) {
  const auto c = brute_force_A_split(n, g, max_edges);
  return eps ? c.eps(*eps) : c.all();
}

}  // namespace tgmaps
