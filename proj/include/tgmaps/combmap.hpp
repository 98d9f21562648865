#pragma once

// Combinatorial maps as permutation pairs on half-edges.
//
// Conventions used throughout the library:
//   alpha  fixed-point-free involution pairing the two halves of each edge
//   sigma  counterclockwise rotation around each vertex
//   phi    = sigma o alpha, i.e. phi(h) = sigma[alpha[h]]; faces are phi-orbits
// The corner of h sits at the origin of h, between sigma^-1(h) and h, and
// belongs to the face of h.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "tgmaps/errors.hpp"
#include "tgmaps/rational.hpp"

namespace tgmaps {

struct CombMap {
  std::vector<int> alpha;
  std::vector<int> sigma;
  int root = 0;

  int num_half_edges() const { return static_cast<int>(alpha.size()); }
  int num_edges() const { return num_half_edges() / 2; }
  int phi(int h) const { return sigma[alpha[h]]; }

  std::vector<int> phi_perm() const {
    std::vector<int> p(alpha.size());
    for (std::size_t h = 0; h < p.size(); ++h) p[h] = sigma[alpha[h]];
    return p;
  }

  void validate() const {
    const int n = num_half_edges();
    if (static_cast<int>(sigma.size()) != n) throw StructureError("CombMap: sigma/alpha size mismatch");
    std::vector<char> seen(n, 0);
    for (int h = 0; h < n; ++h) {
      const int a = alpha[h];
      if (a < 0 || a >= n || a == h || alpha[a] != h) throw StructureError("CombMap: alpha is not a fixed-point-free involution");
      const int s = sigma[h];
      if (s < 0 || s >= n || seen[s]) throw StructureError("CombMap: sigma is not a permutation");
      seen[s] = 1;
    }
    if (n > 0 && (root < 0 || root >= n)) throw StructureError("CombMap: root out of range");
  }

  friend bool operator==(const CombMap&, const CombMap&) = default;
};

struct Orbits {
  std::vector<int> id;
  int count = 0;
};

inline Orbits orbits(const std::vector<int>& perm) {
  Orbits o;
  o.id.assign(perm.size(), -1);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (o.id[s] >= 0) continue;
    for (int h = static_cast<int>(s); o.id[h] < 0; h = perm[h]) o.id[h] = o.count;
    ++o.count;
  }
  return o;
}

inline Orbits vertex_orbits(const CombMap& m) { return orbits(m.sigma); }
inline Orbits face_orbits(const CombMap& m) { return orbits(m.phi_perm()); }

/// Connected components of the group generated by sigma and alpha.
inline Orbits components(const CombMap& m) {
  Orbits o;
  const int n = m.num_half_edges();
  o.id.assign(n, -1);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (o.id[s] >= 0) continue;
    o.id[s] = o.count;
    stack.push_back(s);
    while (!stack.empty()) {
      const int h = stack.back();
      stack.pop_back();
      for (int k : {m.sigma[h], m.alpha[h]}) {
        if (o.id[k] < 0) {
          o.id[k] = o.count;
          stack.push_back(k);
        }
      }
    }
    ++o.count;
  }
  return o;
}

inline bool is_connected(const CombMap& m) { return m.num_half_edges() == 0 || components(m).count == 1; }

/// (2 - V + E - F) / 2. The empty map is a single vertex in the sphere.
inline int genus(const CombMap& m) {
  if (m.num_half_edges() == 0) return 0;
  if (!is_connected(m)) throw StructureError("genus: map is disconnected");
  const int twice = 2 - vertex_orbits(m).count + m.num_edges() - face_orbits(m).count;
  if (twice < 0 || twice % 2 != 0) throw StructureError("genus: Euler characteristic is not even");
  return twice / 2;
}

/// Relabels half-edges reachable from `root` in breadth-first order (sigma
/// before alpha). Entries equal to -1 in sigma mark deleted half-edges.
/// Two rooted maps are isomorphic iff their relabelled forms are equal.
struct Relabelled {
  CombMap map;
  std::vector<int> old_to_new;  // -1 for half-edges outside the component
  std::vector<int> new_to_old;
};

inline Relabelled canonical_relabel(const std::vector<int>& sigma, const std::vector<int>& alpha, int root) {
  Relabelled r;
  r.old_to_new.assign(sigma.size(), -1);
  if (root < 0) return r;
  r.old_to_new[root] = 0;
  r.new_to_old.push_back(root);
  for (std::size_t q = 0; q < r.new_to_old.size(); ++q) {
    const int h = r.new_to_old[q];
    for (int k : {sigma[h], alpha[h]}) {
      if (k < 0) throw StructureError("canonical_relabel: dangling half-edge");
      if (r.old_to_new[k] < 0) {
        r.old_to_new[k] = static_cast<int>(r.new_to_old.size());
        r.new_to_old.push_back(k);
      }
    }
  }
  const std::size_t n = r.new_to_old.size();
  r.map.alpha.resize(n);
  r.map.sigma.resize(n);
  r.map.root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int h = r.new_to_old[i];
    r.map.alpha[i] = r.old_to_new[alpha[h]];
    r.map.sigma[i] = r.old_to_new[sigma[h]];
  }
  return r;
}

inline CombMap canonical_form(const CombMap& m) { return canonical_relabel(m.sigma, m.alpha, m.num_half_edges() ? m.root : -1).map; }

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

inline std::vector<int> map_key(const CombMap& m) {
  std::vector<int> k(m.sigma);
  k.insert(k.end(), m.alpha.begin(), m.alpha.end());
  return k;
}

/// Calls f(alpha) for every fixed-point-free pairing of {0..2n-1}.
inline void for_each_pairing(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> alpha(2 * n, -1);
  std::function<void(int)> rec = [&](int first) {
    while (first < 2 * n && alpha[first] >= 0) ++first;
    if (first == 2 * n) {
      f(alpha);
      return;
    }
    for (int j = first + 1; j < 2 * n; ++j) {
      if (alpha[j] >= 0) continue;
      alpha[first] = j;
      alpha[j] = first;
      rec(first + 1);
      alpha[first] = alpha[j] = -1;
    }
  };
  rec(0);
}

/// The rooted one-face map whose face contour is 0, 1, ..., 2n-1 and whose
/// edges pair the polygon sides by `alpha`.
inline CombMap one_face_from_pairing(const std::vector<int>& alpha) {
  CombMap m;
  const int n2 = static_cast<int>(alpha.size());
  m.alpha = alpha;
  m.sigma.resize(n2);
  for (int j = 0; j < n2; ++j) m.sigma[j] = (alpha[j] + 1) % n2;
  m.root = 0;
  return m;
}

/// A map whose faces are the contours (0..p-1) and (p..2n-1), glued by alpha.
/// Half-edge 0 carries the marked corner of F1, half-edge p that of F2.
inline CombMap two_face_from_pairing(const std::vector<int>& alpha, int p) {
  CombMap m;
  const int n2 = static_cast<int>(alpha.size());
  if (p <= 0 || p >= n2) throw StructureError("two_face_from_pairing: bad split");
  auto phi = [&](int h) { return h < p ? (h + 1) % p : p + (h - p + 1) % (n2 - p); };
  m.alpha = alpha;
  m.sigma.resize(n2);
  for (int j = 0; j < n2; ++j) m.sigma[j] = phi(alpha[j]);
  m.root = 0;
  return m;
}

inline constexpr int kUnicellularMaxEdges = 9;

/// Number of vertices of the one-face map of a pairing; no allocation.
inline int one_face_vertex_count(const std::vector<int>& alpha) {
  const int n2 = static_cast<int>(alpha.size());
  if (n2 > 32) return vertex_orbits(one_face_from_pairing(alpha)).count;
  std::uint32_t seen = 0;
  int v = 0;
  for (int s = 0; s < n2; ++s) {
    if (seen >> s & 1U) continue;
    ++v;
    for (int h = s; !(seen >> h & 1U); h = (alpha[h] + 1) % n2) seen |= 1U << h;
  }
  return v;
}

inline int one_face_genus(const std::vector<int>& alpha) {
  const int n = static_cast<int>(alpha.size()) / 2;
  return (n + 1 - one_face_vertex_count(alpha)) / 2;
}

/// Calls f(map) for every rooted one-face map with n edges and genus g.
inline void for_each_unicellular(int n, int g, const std::function<void(const CombMap&)>& f,
                                 int max_edges = kUnicellularMaxEdges) {
  if (n < 0 || n > max_edges) throw BoundError("unicellular enumeration: n outside [0, " + std::to_string(max_edges) + "]");
  if (n == 0) {
    if (g == 0) f(CombMap{});
    return;
  }
  for_each_pairing(n, [&](const std::vector<int>& alpha) {
    if (one_face_genus(alpha) == g) f(one_face_from_pairing(alpha));
  });
}

inline std::vector<CombMap> enumerate_unicellular(int n, int g, int max_edges = kUnicellularMaxEdges) {
  std::vector<CombMap> out;
  for_each_unicellular(n, g, [&](const CombMap& m) { out.push_back(m); }, max_edges);
  return out;
}

/// Counts of rooted one-face maps with n edges, indexed by genus.
inline std::vector<std::uint64_t> unicellular_counts_by_genus(int n, int max_edges = kUnicellularMaxEdges) {
  if (n < 0 || n > max_edges) throw BoundError("unicellular enumeration: n outside bound");
  std::vector<std::uint64_t> c(n / 2 + 1, 0);
  if (n == 0) {
    c[0] = 1;
    return c;
  }
  for_each_pairing(n, [&](const std::vector<int>& alpha) { ++c[one_face_genus(alpha)]; });
  return c;
}

inline constexpr int kRootedMapsMaxEdges = 4;

struct RootedMapCounts {
  std::vector<std::uint64_t> by_genus;  // m_g(n)
  std::uint64_t transitive_rotations = 0;  // sigma with alpha fixed, <sigma, alpha> transitive
  std::uint64_t total() const { return std::accumulate(by_genus.begin(), by_genus.end(), std::uint64_t{0}); }
};

/// m_g(n) for all g by exhaustive rotation systems with alpha = (0 1)(2 3)...,
/// deduplicated by canonical form from root 0.
inline RootedMapCounts enumerate_rooted_maps(int n, int max_edges = kRootedMapsMaxEdges) {
  if (n < 1 || n > max_edges) throw BoundError("enumerate_rooted_maps: n outside [1, " + std::to_string(max_edges) + "]");
  const int n2 = 2 * n;
  CombMap m;
  m.alpha.resize(n2);
  for (int h = 0; h < n2; ++h) m.alpha[h] = h ^ 1;
  m.sigma.resize(n2);
  std::iota(m.sigma.begin(), m.sigma.end(), 0);
  m.root = 0;

  RootedMapCounts out;
  out.by_genus.assign(n / 2 + 1, 0);
  std::unordered_set<std::vector<int>, VectorHash> seen;
  do {
    if (!is_connected(m)) continue;
    ++out.transitive_rotations;
    const CombMap c = canonical_form(m);
    if (seen.insert(map_key(c)).second) ++out.by_genus.at(genus(c));
  } while (std::next_permutation(m.sigma.begin(), m.sigma.end()));
  return out;
}

/// 2 * 3^n * binom(2n, n) / ((n+2)(n+1)).
inline BigInt tutte_planar_count(unsigned long n) {
  return BigInt(2) * ipow(3, n) * binomial(2 * n, n) / BigInt((n + 2) * (n + 1));
}

}  // namespace tgmaps
