#pragma once

// Skeletons of one-face maps, node opening, and the intertwined /
// non-intertwined classification of 3-nodes.

#include <array>
#include <cstdint>
#include <vector>

#include "tgmaps/combmap.hpp"

namespace tgmaps {

struct SkeletonInfo {
  Orbits vertices;
  std::vector<char> in_skeleton;   // per half-edge
  std::vector<int> skel_degree;    // per vertex id
  std::vector<int> nodes;          // vertex ids with skeleton-degree >= 3
  bool dominant = true;            // every node is a 3-node
};

/// Iteratively strips vertices of degree 1.
inline SkeletonInfo skeleton(const CombMap& m) {
  SkeletonInfo s;
  s.vertices = vertex_orbits(m);
  const int n2 = m.num_half_edges();
  s.in_skeleton.assign(n2, 1);
  s.skel_degree.assign(s.vertices.count, 0);
  for (int h = 0; h < n2; ++h) ++s.skel_degree[s.vertices.id[h]];

  std::vector<std::vector<int>> at(s.vertices.count);
  for (int h = 0; h < n2; ++h) at[s.vertices.id[h]].push_back(h);
  std::vector<int> leaves;
  for (int v = 0; v < s.vertices.count; ++v)
    if (s.skel_degree[v] == 1) leaves.push_back(v);
  while (!leaves.empty()) {
    const int v = leaves.back();
    leaves.pop_back();
    if (s.skel_degree[v] != 1) continue;
    int h = -1;
    for (int x : at[v])
      if (s.in_skeleton[x]) h = x;
    const int a = m.alpha[h];
    s.in_skeleton[h] = s.in_skeleton[a] = 0;
    --s.skel_degree[v];
    const int w = s.vertices.id[a];
    if (--s.skel_degree[w] == 1) leaves.push_back(w);
  }
  for (int v = 0; v < s.vertices.count; ++v) {
    if (s.skel_degree[v] >= 3) s.nodes.push_back(v);
    if (s.skel_degree[v] > 3) s.dominant = false;
  }
  return s;
}

struct Opening {
  CombMap map;                       // same half-edges, vertex v split in three
  std::array<int, 3> piece_start{};  // skeleton half-edge starting each piece
  std::array<int, 3> piece_component{};
  int components = 0;
  int faces = 0;
  int genus_sum = 0;  // additive over components
  bool intertwined = false;
};

/// Splits the rotation at vertex v into three pieces, each a skeleton
/// half-edge followed by the non-skeleton half-edges up to the next one.
inline Opening open_node(const CombMap& m, const SkeletonInfo& s, int v) {
  if (v < 0 || v >= s.vertices.count || s.skel_degree[v] != 3)
    throw StructureError("open_node: vertex is not a 3-node");
  int start = -1;
  for (int h = 0; h < m.num_half_edges(); ++h)
    if (s.vertices.id[h] == v && s.in_skeleton[h]) {
      start = h;
      break;
    }
  std::vector<int> cycle;
  for (int h = start;;) {
    cycle.push_back(h);
    h = m.sigma[h];
    if (h == start) break;
  }
  Opening o;
  o.map = m;
  std::vector<std::vector<int>> pieces;
  for (int h : cycle) {
    if (s.in_skeleton[h]) pieces.emplace_back();
    pieces.back().push_back(h);
  }
  for (int i = 0; i < 3; ++i) {
    const auto& p = pieces[i];
    o.piece_start[i] = p.front();
    for (std::size_t k = 0; k < p.size(); ++k) o.map.sigma[p[k]] = p[(k + 1) % p.size()];
  }
  const Orbits comp = components(o.map);
  const Orbits faces = face_orbits(o.map);
  const Orbits verts = vertex_orbits(o.map);
  o.components = comp.count;
  o.faces = faces.count;
  for (int i = 0; i < 3; ++i) o.piece_component[i] = comp.id[o.piece_start[i]];
  // sum over components of (2 - V + E - F)/2
  const int twice = 2 * comp.count - verts.count + o.map.num_edges() - faces.count;
  if (twice % 2 != 0) throw StructureError("open_node: odd Euler characteristic");
  o.genus_sum = twice / 2;
  o.intertwined = (o.faces == 1);
  return o;
}

struct NodeClassification {
  int nodes = 0;
  int intertwined = 0;
  int non_intertwined = 0;
  bool dominant = false;
};

inline NodeClassification classify_nodes(const CombMap& m) {
  const SkeletonInfo s = skeleton(m);
  NodeClassification c;
  c.dominant = s.dominant;
  c.nodes = static_cast<int>(s.nodes.size());
  for (int v : s.nodes) {
    if (s.skel_degree[v] != 3) continue;
    if (open_node(m, s, v).intertwined)
      ++c.intertwined;
    else
      ++c.non_intertwined;
  }
  return c;
}

struct TrisectionRow {
  int n = 0;
  int g = 0;
  std::uint64_t maps = 0;
  std::uint64_t dominant = 0;
  std::uint64_t violations = 0;  // dominant maps without 2g intertwined / 4g-2 nodes
  std::uint64_t opening_inconsistent = 0;  // one face but not genus g-1, or 3 faces with wrong genus
};

/// Checks every dominant one-face map of genus g with n edges.
inline TrisectionRow verify_trisection(int n, int g) {
  TrisectionRow row;
  row.n = n;
  row.g = g;
  for_each_unicellular(n, g, [&](const CombMap& m) {
    ++row.maps;
    const SkeletonInfo s = skeleton(m);
    int intertwined = 0;
    for (int v : s.nodes) {
      if (s.skel_degree[v] != 3) continue;
      const Opening o = open_node(m, s, v);
      if (o.faces == 1) {
        ++intertwined;
        if (o.components != 1 || o.genus_sum != g - 1) ++row.opening_inconsistent;
      } else if (o.faces != 3 || o.genus_sum != g - 3 + o.components) {
        ++row.opening_inconsistent;
      }
    }
    if (!s.dominant) return;
    ++row.dominant;
    if (intertwined != 2 * g || static_cast<int>(s.nodes.size()) != 4 * g - 2) ++row.violations;
  });
  return row;
}

}  // namespace tgmaps
