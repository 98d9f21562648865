#pragma once

// Chain closure of labelled maps into bipartite quadrangulations: one face
// and one pointed vertex (Marcus-Schaeffer), or several faces each with its
// own source and a delay (Miermont). Plus the (M2)/(M3) property checks and
// the audit comparing (M3) with the distance condition (M'3).
//
// Output numbering: the arc drawn from corner h of the input map has
// half-edges 2h (at the corner) and 2h + 1 (at its target).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "tgmaps/labelling.hpp"

namespace tgmaps {

struct Quadrangulation {
  CombMap map;
  Orbits vertices;
  std::vector<int> source;              // vertex id of each face's source, in face order
  std::vector<int> vertex_of_original;  // input vertex id -> output vertex id
  int num_vertices() const { return vertices.count; }
};

inline std::vector<std::vector<int>> adjacency(const Quadrangulation& q) {
  std::vector<std::vector<int>> adj(q.num_vertices());
  for (int h = 0; h < q.map.num_half_edges(); ++h) adj[q.vertices.id[h]].push_back(q.vertices.id[q.map.alpha[h]]);
  return adj;
}

inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int from) {
  std::vector<int> d(adj.size(), -1);
  std::vector<int> queue{from};
  d[from] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int w : adj[queue[i]])
      if (d[w] < 0) {
        d[w] = d[queue[i]] + 1;
        queue.push_back(w);
      }
  return d;
}

/// Connects each corner to the next corner of its face (contour order) with
/// label one less, or to the face's source when its label is the face
/// minimum. face_starts lists one half-edge per face; labels are per vertex.
inline Quadrangulation chain_closure(const CombMap& m, const Orbits& verts, const std::vector<int>& label,
                                     const std::vector<int>& face_starts) {
  const int n2 = m.num_half_edges();
  Quadrangulation q;
  if (n2 == 0) {
    // Single vertex and one source, no edges.
    q.vertices.count = 2;
    q.vertex_of_original = {0};
    q.source = {1};
    return q;
  }
  std::vector<int> face(n2, -1), pos(n2, -1);
  std::vector<std::vector<int>> contour(face_starts.size());
  for (std::size_t f = 0; f < face_starts.size(); ++f) {
    int h = face_starts[f];
    do {
      if (face[h] >= 0) throw StructureError("chain_closure: face starts share a face");
      face[h] = static_cast<int>(f);
      pos[h] = static_cast<int>(contour[f].size());
      contour[f].push_back(h);
      h = m.phi(h);
    } while (h != face_starts[f]);
  }
  if (std::count(face.begin(), face.end(), -1) != 0) throw StructureError("chain_closure: faces do not cover the map");

  // succ[h]: target corner of the arc from h, or -1 for the face source.
  std::vector<int> succ(n2, -1);
  std::vector<std::vector<int>> incoming(n2);
  std::vector<std::vector<int>> min_corners(face_starts.size());
  for (std::size_t f = 0; f < contour.size(); ++f) {
    const auto& c = contour[f];
    const int d = static_cast<int>(c.size());
    int lo = label[verts.id[c[0]]], hi = lo;
    for (int h : c) {
      lo = std::min(lo, label[verts.id[h]]);
      hi = std::max(hi, label[verts.id[h]]);
    }
    std::vector<std::vector<int>> pending(hi - lo + 2);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < d; ++k) {
        const int h = c[k];
        const int l = label[verts.id[h]] - lo;
        for (int j : pending[l + 1]) succ[j] = h;
        pending[l + 1].clear();
        if (pass == 0 && l > 0) pending[l].push_back(h);
      }
    }
    for (int h : c)
      if (label[verts.id[h]] == lo) min_corners[f].push_back(h);
    for (int h : c)
      if (succ[h] >= 0) incoming[succ[h]].push_back(h);
    // Incoming arcs inside a corner: nearest predecessor first.
    for (int h : c)
      std::sort(incoming[h].begin(), incoming[h].end(), [&](int a, int b) {
        return (pos[h] - pos[a] + d) % d < (pos[h] - pos[b] + d) % d;
      });
  }

  q.map.alpha.resize(2 * n2);
  q.map.sigma.assign(2 * n2, -1);
  for (int h = 0; h < n2; ++h) {
    q.map.alpha[2 * h] = 2 * h + 1;
    q.map.alpha[2 * h + 1] = 2 * h;
  }
  // Rotation around each original vertex: corners in sigma order.
  std::vector<char> done(n2, 0);
  std::vector<int> ring;
  for (int s = 0; s < n2; ++s) {
    if (done[s]) continue;
    ring.clear();
    int h = s;
    do {
      done[h] = 1;
      for (int j : incoming[h]) ring.push_back(2 * j + 1);
      ring.push_back(2 * h);
      h = m.sigma[h];
    } while (h != s);
    for (std::size_t i = 0; i < ring.size(); ++i) q.map.sigma[ring[i]] = ring[(i + 1) % ring.size()];
  }
  // Around each source: sigma(arc from min corner) = arc from previous min corner.
  for (const auto& mc : min_corners) {
    const std::size_t k = mc.size();
    for (std::size_t i = 0; i < k; ++i) q.map.sigma[2 * mc[i] + 1] = 2 * mc[(i + k - 1) % k] + 1;
  }
  q.map.root = 0;
  q.vertices = vertex_orbits(q.map);
  for (const auto& mc : min_corners) q.source.push_back(q.vertices.id[2 * mc[0] + 1]);
  q.vertex_of_original.assign(verts.count, -1);
  for (int h = 0; h < n2; ++h) q.vertex_of_original[verts.id[h]] = q.vertices.id[2 * h];
  return q;
}

struct QuadCheck {
  bool all_faces_degree_4 = false;
  bool bipartite = false;
  int genus = -1;
  int faces = 0;
  bool ok(int want_genus, int want_faces) const {
    return all_faces_degree_4 && bipartite && genus == want_genus && faces == want_faces;
  }
};

inline QuadCheck check_quadrangulation(const Quadrangulation& q) {
  QuadCheck c;
  if (q.map.num_half_edges() == 0) {
    c.all_faces_degree_4 = c.bipartite = true;
    c.genus = 0;
    return c;
  }
  const Orbits f = face_orbits(q.map);
  c.faces = f.count;
  std::vector<int> deg(f.count, 0);
  for (int id : f.id) ++deg[id];
  c.all_faces_degree_4 = std::all_of(deg.begin(), deg.end(), [](int d) { return d == 4; });
  const auto adj = adjacency(q);
  const auto d = bfs_distances(adj, 0);
  c.bipartite = std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
  for (int v = 0; v < q.num_vertices() && c.bipartite; ++v)
    for (int w : adj[v])
      if ((d[v] + d[w]) % 2 == 0) c.bipartite = false;
  c.genus = is_connected(q.map) ? genus(q.map) : -1;
  return c;
}

// ---------------------------------------------------------------- one source

enum class Sign { up, down };

struct PointedQuadrangulation {
  Quadrangulation q;
  int pointed = -1;  // vertex id
};

inline void validate_labels(const CombMap& m, const Orbits& verts, const std::vector<int>& label) {
  if (static_cast<int>(label.size()) != std::max(verts.count, 1)) throw StructureError("labels: wrong size");
  for (int h = 0; h < m.num_half_edges(); ++h) {
    const int d = label[verts.id[h]] - label[verts.id[m.alpha[h]]];
    if (d < -1 || d > 1) throw StructureError("labels: increment outside {-1, 0, 1}");
  }
}

inline PointedQuadrangulation marcus_schaeffer_forward(const CombMap& m, const std::vector<int>& label, Sign sign) {
  PointedQuadrangulation out;
  const Orbits verts = vertex_orbits(m);
  validate_labels(m, verts, label);
  if (m.num_half_edges() == 0) {
    out.q = chain_closure(m, verts, label, {});
    out.pointed = 1;
    return out;
  }
  if (face_orbits(m).count != 1) throw StructureError("marcus_schaeffer_forward: input has more than one face");
  out.q = chain_closure(m, verts, label, {m.root});
  out.q.map.root = sign == Sign::up ? 2 * m.root : 2 * m.root + 1;
  out.pointed = out.q.source[0];
  return out;
}

/// d(v, v0) = l(v) - l_min + 1 for every input vertex v.
inline bool ms_distance_identity(const CombMap& m, const std::vector<int>& label, const PointedQuadrangulation& pq) {
  if (m.num_half_edges() == 0) return true;
  const auto d = bfs_distances(adjacency(pq.q), pq.pointed);
  const int lo = *std::min_element(label.begin(), label.end());
  for (std::size_t v = 0; v < label.size(); ++v)
    if (d[pq.q.vertex_of_original[v]] != label[v] - lo + 1) return false;
  return true;
}

/// Identifies a pointed rooted quadrangulation up to isomorphism.
inline std::vector<int> pointed_rooted_key(const PointedQuadrangulation& pq) {
  const Relabelled rel = canonical_relabel(pq.q.map.sigma, pq.q.map.alpha, pq.q.map.root);
  auto key = map_key(rel.map);
  int marker = 1 << 30;
  for (int h = 0; h < pq.q.map.num_half_edges(); ++h)
    if (pq.q.vertices.id[h] == pq.pointed) marker = std::min(marker, rel.old_to_new[h]);
  key.push_back(marker);
  return key;
}

struct MsCountReport {
  int n = 0, g = 0;
  std::uint64_t inputs = 0;          // 2 [z^n] L_g
  std::uint64_t distinct_outputs = 0;
  std::uint64_t invalid_outputs = 0; // failed quadrangulation or distance checks
  std::uint64_t expected = 0;        // (n + 2 - 2g) m_g(n)
  bool ok() const { return invalid_outputs == 0 && distinct_outputs == inputs && inputs == expected; }
};

inline MsCountReport ms_count_check(int n, int g, int rooted_max_edges = kRootedMapsMaxEdges) {
  MsCountReport r;
  r.n = n;
  r.g = g;
  const auto m = enumerate_rooted_maps(n, rooted_max_edges);
  r.expected = static_cast<std::uint64_t>(n + 2 - 2 * g) * (g < static_cast<int>(m.by_genus.size()) ? m.by_genus[g] : 0);
  std::unordered_set<std::vector<int>, VectorHash> keys;
  for_each_unicellular(n, g, [&](const CombMap& map) {
    for_each_labelling(map, [&](const Orbits&, const std::vector<int>& label) {
      for (Sign s : {Sign::up, Sign::down}) {
        ++r.inputs;
        const auto pq = marcus_schaeffer_forward(map, label, s);
        if (!check_quadrangulation(pq.q).ok(g, n) || !ms_distance_identity(map, label, pq)) ++r.invalid_outputs;
        keys.insert(pointed_rooted_key(pq));
      }
    });
  });
  r.distinct_outputs = keys.size();
  return r;
}

// ------------------------------------------------------------ two sources

struct MiermontOutput {
  Quadrangulation q;
  int s1 = -1, s2 = -1;  // vertex ids
  int e1 = -1, e2 = -1;  // half-edges of the arcs drawn from c1, c2 (at the corner)
  int m1 = -1, m2 = -1;  // targets of e1, e2
  int i1 = 0, i2 = 0;    // labels of c1, c2 after translation
  int delta = 0;
  int eps = 0;
  std::vector<int> L;    // per output vertex: input label + 1, sources 0 and delta
};

/// Input: a two-face labelled map with marked corners c1, c2 in distinct faces.
inline MiermontOutput miermont_forward(const CombMap& m, int c1, int c2, const std::vector<int>& label_in) {
  const Orbits verts = vertex_orbits(m);
  validate_labels(m, verts, label_in);
  const Orbits faces = face_orbits(m);
  if (faces.count != 2 || faces.id[c1] == faces.id[c2]) throw StructureError("miermont_forward: need two faces with one marked corner each");
  int lo1 = 1 << 30, lo2 = 1 << 30;
  for (int h = 0; h < m.num_half_edges(); ++h) {
    int& lo = faces.id[h] == faces.id[c1] ? lo1 : lo2;
    lo = std::min(lo, label_in[verts.id[h]]);
  }
  std::vector<int> label(label_in);
  for (auto& x : label) x -= lo1;

  MiermontOutput o;
  o.delta = lo2 - lo1;
  o.i1 = label[verts.id[c1]];
  o.i2 = label[verts.id[c2]];
  o.eps = o.i2 - o.i1;
  if (o.eps < -1 || o.eps > 1) throw StructureError("miermont_forward: |l(c2) - l(c1)| > 1");
  o.q = chain_closure(m, verts, label, {c1, c2});
  o.s1 = o.q.source[0];
  o.s2 = o.q.source[1];
  o.e1 = 2 * c1;
  o.e2 = 2 * c2;
  o.m1 = o.q.vertices.id[2 * c1 + 1];
  o.m2 = o.q.vertices.id[2 * c2 + 1];
  o.L.assign(o.q.num_vertices(), 0);
  for (int v = 0; v < verts.count; ++v) o.L[o.q.vertex_of_original[v]] = label[v] + 1;
  o.L[o.s1] = 0;
  o.L[o.s2] = o.delta;
  return o;
}

/// Follows the leftmost geodesic from the edge of h, oriented toward its
/// smaller label, until a vertex in `stop` is reached. Labels must differ by
/// exactly one along every traversed edge.
inline int leftmost_geodesic(const Quadrangulation& q, const std::vector<int>& L, int h, const std::vector<int>& stop) {
  auto vtx = [&](int x) { return q.vertices.id[x]; };
  auto is_stop = [&](int v) { return std::find(stop.begin(), stop.end(), v) != stop.end(); };
  int cur = h;
  if (L[vtx(cur)] < L[vtx(q.map.alpha[cur])]) cur = q.map.alpha[cur];
  if (std::abs(L[vtx(cur)] - L[vtx(q.map.alpha[cur])]) != 1) throw StructureError("leftmost_geodesic: edge labels do not differ by 1");
  for (int steps = 0; steps <= q.num_vertices(); ++steps) {
    const int arrival = q.map.alpha[cur];
    const int w = vtx(arrival);
    if (is_stop(w)) return w;
    int x = q.map.sigma[arrival];
    while (x != arrival && L[vtx(q.map.alpha[x])] >= L[w]) x = q.map.sigma[x];
    if (x == arrival) throw StructureError("leftmost_geodesic: no outgoing edge at a non-source vertex");
    if (L[w] - L[vtx(q.map.alpha[x])] != 1) throw StructureError("leftmost_geodesic: label drop is not 1");
    cur = x;
  }
  throw StructureError("leftmost_geodesic: cycle detected");
}

struct MiermontCheck {
  bool quadrangulation = false;
  bool label_identity = false;  // L(v) = min(d(v,s1), d(v,s2) + delta)
  bool m2 = false;              // delta from distances agrees, d(s1,s2) + delta even, |delta| < d(s1,s2)
  bool m2prime = false;         // d(m1,m2) = eps mod 2
  bool m3 = false;
  bool crossed_raw = false;     // the four distance relations
  bool crossed = false;         // d(s1,m1) <= d(s1,m2) - eps, d(s2,m2) <= d(s2,m1) + eps
  bool crossed_minus_eps = false;  // same with -eps in the second inequality (diagnostic)
  bool ok() const { return quadrangulation && label_identity && m2 && m2prime && m3 && crossed_raw && crossed; }
};

inline MiermontCheck check_miermont(const MiermontOutput& o, int want_genus, int want_faces) {
  MiermontCheck c;
  c.quadrangulation = check_quadrangulation(o.q).ok(want_genus, want_faces);
  const auto adj = adjacency(o.q);
  const auto d1 = bfs_distances(adj, o.s1);
  const auto d2 = bfs_distances(adj, o.s2);
  const auto dm1 = bfs_distances(adj, o.m1);
  c.label_identity = true;
  for (int v = 0; v < o.q.num_vertices(); ++v)
    if (o.L[v] != std::min(d1[v], d2[v] + o.delta)) c.label_identity = false;
  const int delta_m2 = d1[o.m1] + o.eps - d2[o.m2];
  c.m2 = delta_m2 == o.delta && (d1[o.s2] + o.delta) % 2 == 0 && std::abs(o.delta) < d1[o.s2];
  c.m2prime = ((dm1[o.m2] - o.eps) % 2 + 2) % 2 == 0;
  try {
    c.m3 = leftmost_geodesic(o.q, o.L, o.e1, {o.s1, o.s2}) == o.s1 &&
           leftmost_geodesic(o.q, o.L, o.e2, {o.s1, o.s2}) == o.s2;
  } catch (const StructureError&) {
    c.m3 = false;
  }
  c.crossed_raw = d1[o.m1] == o.i1 && d2[o.m2] == o.i2 - o.delta && d2[o.m1] >= o.i1 - o.delta && d1[o.m2] >= o.i2;
  c.crossed = d1[o.m1] <= d1[o.m2] - o.eps && d2[o.m2] <= d2[o.m1] + o.eps;
  c.crossed_minus_eps = d1[o.m1] <= d1[o.m2] - o.eps && d2[o.m2] <= d2[o.m1] - o.eps;
  return c;
}

struct MiermontSuiteReport {
  int n = 0, g = 0;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::uint64_t m2_fail = 0, m2prime_fail = 0, m3_fail = 0, crossed_fail = 0, label_fail = 0, quad_fail = 0;
  std::uint64_t crossed_minus_eps_fail = 0;  // diagnostic
  bool ok() const { return failures == 0; }
};

inline MiermontSuiteReport miermont_suite(int n, int g) {
  MiermontSuiteReport r;
  r.n = n;
  r.g = g;
  for_each_two_face_labelled(n, g, [&](const CombMap& m, int p, const Orbits&, const std::vector<int>& label, int) {
    ++r.instances;
    const auto o = miermont_forward(m, 0, p, label);
    const auto c = check_miermont(o, g, n);
    if (!c.ok()) ++r.failures;
    r.quad_fail += !c.quadrangulation;
    r.label_fail += !c.label_identity;
    r.m2_fail += !c.m2;
    r.m2prime_fail += !c.m2prime;
    r.m3_fail += !c.m3;
    r.crossed_fail += !(c.crossed && c.crossed_raw);
    r.crossed_minus_eps_fail += !c.crossed_minus_eps;
  });
  return r;
}

// --------------------------------------------------------------- audit

struct TupleStatus {
  bool m2 = false;
  bool m3 = false;
  bool m3prime = false;
  bool slack = false;    // |d(s1,m1) - d(s1,m2)| <= 2 or |d(s2,m2) - d(s2,m1)| <= 2
  int gap = 0;           // min of the two quantities above
  bool crossed = false;  // d(s1,m1) + eps <= d(s1,m2) and d(s2,m2) <= d(s2,m1) + eps
  bool labels_ok = true; // labels differ by 1 along every edge (checked when requested)
};

/// Evaluates (M2), (M3), (M'3) for one tuple given distances from s1 and s2.
inline TupleStatus evaluate_tuple(const Quadrangulation& q, const std::vector<int>& d1, const std::vector<int>& d2, int s1,
                                  int s2, int e1, int e2, int eps, bool check_all_edges) {
  TupleStatus t;
  auto vtx = [&](int x) { return q.vertices.id[x]; };
  const int a1 = vtx(e1), b1 = vtx(q.map.alpha[e1]);
  const int a2 = vtx(e2), b2 = vtx(q.map.alpha[e2]);
  const int m1 = d1[a1] < d1[b1] ? a1 : b1;
  const int m2 = d2[a2] < d2[b2] ? a2 : b2;
  const int delta = d1[m1] + eps - d2[m2];
  // parity, plus admissible delay |delta| < d(s1,s2)
  t.m2 = ((d1[s2] + delta) % 2 + 2) % 2 == 0 && std::abs(delta) < d1[s2];
  if (!t.m2) return t;
  auto Lof = [&](int v) { return std::min(d1[v], d2[v] + delta); };
  if (check_all_edges) {
    for (int h = 0; h < q.map.num_half_edges(); ++h)
      if (std::abs(Lof(vtx(h)) - Lof(vtx(q.map.alpha[h]))) != 1) t.labels_ok = false;
  }
  std::vector<int> L(q.num_vertices());
  for (int v = 0; v < q.num_vertices(); ++v) L[v] = Lof(v);
  try {
    t.m3 = leftmost_geodesic(q, L, e1, {s1, s2}) == s1 && leftmost_geodesic(q, L, e2, {s1, s2}) == s2;
  } catch (const StructureError&) {
    t.m3 = false;
    t.labels_ok = false;
  }
  const int ds1e1 = std::min(d1[a1], d1[b1]), ds1e2 = std::min(d1[a2], d1[b2]);
  const int ds2e1 = std::min(d2[a1], d2[b1]), ds2e2 = std::min(d2[a2], d2[b2]);
  t.m3prime = ds1e1 < ds1e2 - 4 && ds2e2 < ds2e1 - 4;
  t.gap = std::min(std::abs(d1[m1] - d1[m2]), std::abs(d2[m2] - d2[m1]));
  t.slack = t.gap <= 2;
  t.crossed = d1[m1] + eps <= d1[m2] && d2[m2] <= d2[m1] + eps;
  return t;
}

struct AuditReport {
  std::uint64_t quadrangulations = 0;
  std::uint64_t tuples = 0;         // satisfying (M2)
  std::uint64_t m3 = 0;
  std::uint64_t m3prime = 0;
  std::uint64_t deficit = 0;        // (M3) but not (M'3)
  std::uint64_t hard_failures = 0;  // (M'3) without (M3), deficit outside both slacks, or bad labels
  std::uint64_t inclusion_failures = 0;  // (M'3) without (M3)
  std::uint64_t slack_failures = 0;      // deficit tuples with gap > 2
  std::uint64_t label_failures = 0;
  std::uint64_t crossed_failures = 0;  // (M3) tuples violating the crossed inequalities
  std::uint64_t wide_gap = 0;          // deficit tuples with gap > 5; the edge/endpoint offsets allow up to 5
  std::map<int, std::uint64_t> deficit_gaps;
  std::array<Rational, 3> m3_weighted{};  // sum over Q of (M3 tuples)/|Aut Q|, per eps
  std::array<std::uint64_t, 3> a_counts{};
  bool counts_match() const {
    for (int e = 0; e < 3; ++e)
      if (m3_weighted[e] != Rational(static_cast<long>(a_counts[e]))) return false;
    return true;
  }
  bool ok() const { return hard_failures == 0 && crossed_failures == 0; }
};

inline void audit_accumulate(AuditReport& r, const TupleStatus& t, int eps) {
  if (!t.m2) return;
  ++r.tuples;
  if (!t.labels_ok) ++r.hard_failures, ++r.label_failures;
  if (t.m3) ++r.m3;
  if (t.m3prime) ++r.m3prime;
  if (t.m3prime && !t.m3) ++r.hard_failures, ++r.inclusion_failures;
  if (t.m3 && !t.m3prime) {
    ++r.deficit;
    ++r.deficit_gaps[t.gap];
    if (!t.slack) ++r.hard_failures, ++r.slack_failures;
    if (t.gap > 5) ++r.wide_gap;
  }
  if (t.m3 && !t.crossed) ++r.crossed_failures;
  (void)eps;
}

/// All (s1, s2, e1, e2, eps) on every distinct quadrangulation produced by
/// miermont_forward from two-face maps of genus g with n edges.
inline AuditReport m3_vs_m3prime_audit(int n, int g) {
  AuditReport r;
  std::set<std::vector<int>> seen;
  std::vector<Quadrangulation> qs;
  std::vector<int> rootings;
  for_each_two_face_labelled(n, g, [&](const CombMap& m, int p, const Orbits&, const std::vector<int>& label, int eps) {
    ++r.a_counts[eps + 1];
    const auto o = miermont_forward(m, 0, p, label);
    std::set<std::vector<int>> forms;
    for (int h = 0; h < o.q.map.num_half_edges(); ++h)
      forms.insert(map_key(canonical_relabel(o.q.map.sigma, o.q.map.alpha, h).map));
    if (seen.insert(*forms.begin()).second) {
      qs.push_back(o.q);
      rootings.push_back(static_cast<int>(forms.size()));
    }
  });
  r.quadrangulations = qs.size();
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    const auto& q = qs[qi];
    const auto adj = adjacency(q);
    std::vector<std::vector<int>> dist(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) dist[v] = bfs_distances(adj, v);
    std::vector<int> edges;
    for (int h = 0; h < q.map.num_half_edges(); ++h)
      if (h < q.map.alpha[h]) edges.push_back(h);
    // |Aut Q| = (half-edges) / (distinct rootings)
    const Rational weight(static_cast<long>(rootings[qi]), static_cast<long>(q.map.num_half_edges()));
    std::array<std::uint64_t, 3> m3_here{};
    for (int s1 = 0; s1 < q.num_vertices(); ++s1)
      for (int s2 = 0; s2 < q.num_vertices(); ++s2) {
        if (s1 == s2) continue;
        for (int e1 : edges)
          for (int e2 : edges)
            for (int eps = -1; eps <= 1; ++eps) {
              const auto t = evaluate_tuple(q, dist[s1], dist[s2], s1, s2, e1, e2, eps, true);
              audit_accumulate(r, t, eps);
              if (t.m2 && t.m3) ++m3_here[eps + 1];
            }
      }
    for (int e = 0; e < 3; ++e) r.m3_weighted[e] += weight * Rational(static_cast<long>(m3_here[e]));
  }
  return r;
}

}  // namespace tgmaps
