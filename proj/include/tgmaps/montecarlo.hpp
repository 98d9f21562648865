#pragma once

// Random quadrangulations through labelled trees and the pointed closure,
// nearest-neighbour cell masses of k random vertices, and Monte-Carlo
// moment estimates against the uniform-spacings reference law.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tgmaps/bijections.hpp"
#include "tgmaps/rng.hpp"

namespace tgmaps {

// ------------------------------------------------------------------ trees

struct PlaneTree {
  int n = 0;
  std::vector<std::uint8_t> up;  // contour word, 1 = away from the root

  /// Matching of the contour steps; step i and its partner are the two
  /// sides of one edge.
  std::vector<int> pairing() const {
    std::vector<int> alpha(2 * n), stack;
    for (int i = 0; i < 2 * n; ++i) {
      if (up[i]) {
        stack.push_back(i);
      } else {
        alpha[i] = stack.back();
        alpha[stack.back()] = i;
        stack.pop_back();
      }
    }
    return alpha;
  }
  CombMap to_map() const { return one_face_from_pairing(pairing()); }
};

template <class Rng>
void shuffle_with(std::vector<std::uint8_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

/// Uniform rooted plane tree with n edges: a uniform word with n up and n+1
/// down steps, rotated to start after its first minimum (cycle lemma).
inline PlaneTree sample_plane_tree(int n, PhiloxStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_plane_tree: n must be >= 1");
  const int len = 2 * n + 1;
  std::vector<std::uint8_t> w(len, 0);
  std::fill(w.begin(), w.begin() + n, 1);
  shuffle_with(w, rng);
  int s = 0, lo = 1, at = 0;
  for (int i = 0; i < len; ++i) {
    s += w[i] ? 1 : -1;
    if (s < lo) {
      lo = s;
      at = i + 1;
    }
  }
  PlaneTree t;
  t.n = n;
  t.up.resize(2 * n);
  for (int i = 0; i < 2 * n; ++i) t.up[i] = w[(at + i) % len];
  return t;
}

/// Tree with uniform increments in {-1, 0, 1}; vertex 0 is the root.
struct LabelledTree {
  PlaneTree tree;
  std::vector<int> corner_vertex;  // vertex at the start of each contour step
  std::vector<int> label;          // per vertex, root 0
};

inline LabelledTree sample_labelled_tree(int n, PhiloxStream& rng) {
  LabelledTree t;
  t.tree = sample_plane_tree(n, rng);
  t.corner_vertex.resize(2 * n);
  t.label.assign(n + 1, 0);
  std::vector<int> parent(n + 1, -1);
  int cur = 0, next = 1;
  for (int i = 0; i < 2 * n; ++i) {
    t.corner_vertex[i] = cur;
    if (t.tree.up[i]) {
      parent[next] = cur;
      t.label[next] = t.label[cur] + static_cast<int>(rng.below(3)) - 1;
      cur = next++;
    } else {
      cur = parent[cur];
    }
  }
  return t;
}

// ------------------------------------------------------------------ graphs

/// Compressed adjacency lists; parallel edges are kept.
struct Graph {
  int num_vertices = 0;
  std::vector<std::int64_t> offset;  // size num_vertices + 1
  std::vector<int> nbr;

  std::int64_t degree(int v) const { return offset[v + 1] - offset[v]; }

  static Graph from_edges(int nv, const std::vector<std::pair<int, int>>& edges) {
    Graph g;
    g.num_vertices = nv;
    g.offset.assign(nv + 1, 0);
    for (const auto& [a, b] : edges) {
      ++g.offset[a + 1];
      ++g.offset[b + 1];
    }
    for (int v = 0; v < nv; ++v) g.offset[v + 1] += g.offset[v];
    g.nbr.resize(g.offset[nv]);
    std::vector<std::int64_t> fill(g.offset.begin(), g.offset.end() - 1);
    for (const auto& [a, b] : edges) {
      g.nbr[fill[a]++] = b;
      g.nbr[fill[b]++] = a;
    }
    return g;
  }
};

inline Graph to_graph(const Quadrangulation& q) {
  std::vector<std::pair<int, int>> edges;
  for (int h = 0; h < q.map.num_half_edges(); ++h)
    if (h < q.map.alpha[h]) edges.emplace_back(q.vertices.id[h], q.vertices.id[q.map.alpha[h]]);
  return Graph::from_edges(q.num_vertices(), edges);
}

/// Writes BFS distances from `from` into dist (resized, -1 for unreachable).
inline void bfs_into(const Graph& g, int from, std::vector<int>& dist, std::vector<int>& queue) {
  dist.assign(g.num_vertices, -1);
  queue.resize(g.num_vertices);
  std::size_t head = 0, tail = 0;
  queue[tail++] = from;
  dist[from] = 0;
  while (head < tail) {
    const int v = queue[head++];
    const int dv = dist[v] + 1;
    for (std::int64_t i = g.offset[v]; i < g.offset[v + 1]; ++i) {
      const int w = g.nbr[i];
      if (dist[w] < 0) {
        dist[w] = dv;
        queue[tail++] = w;
      }
    }
  }
}

/// Edge list of the pointed closure of a labelled tree, built directly from
/// the contour: corner i is joined to the next corner (cyclically) whose
/// label is one less, or to the extra vertex n + 1.
inline Graph closure_graph(const LabelledTree& t) {
  const int n2 = static_cast<int>(t.corner_vertex.size());
  const int nv = n2 / 2 + 2;
  const int pointed = nv - 1;
  if (n2 == 0) return Graph::from_edges(nv, {});
  int lo = t.label[0], hi = lo;
  for (int x : t.label) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<int> next_at(hi - lo + 1, -1);
  auto lab = [&](int i) { return t.label[t.corner_vertex[i]] - lo; };
  for (int i = n2 - 1; i >= 0; --i) next_at[lab(i)] = i;
  std::vector<std::pair<int, int>> edges(n2);
  for (int i = n2 - 1; i >= 0; --i) {
    const int l = lab(i);
    const int target = l == 0 ? pointed : t.corner_vertex[next_at[l - 1]];
    edges[i] = {t.corner_vertex[i], target};
    next_at[l] = i;
  }
  return Graph::from_edges(nv, edges);
}

struct SampledGraph {
  Graph graph;
  int pointed = -1;
};

/// Uniform pointed genus-0 quadrangulation with n faces as a graph.
inline SampledGraph sample_quadrangulation_g0_graph(int n, PhiloxStream& rng) {
  const LabelledTree t = sample_labelled_tree(n, rng);
  SampledGraph s;
  s.graph = closure_graph(t);
  s.pointed = s.graph.num_vertices - 1;
  return s;
}

/// Uniform pointed rooted genus-0 quadrangulation with n faces.
inline PointedQuadrangulation sample_quadrangulation_g0(int n, PhiloxStream& rng) {
  const LabelledTree t = sample_labelled_tree(n, rng);
  const CombMap m = t.tree.to_map();
  const Orbits verts = vertex_orbits(m);
  std::vector<int> label(verts.count);
  for (int i = 0; i < 2 * n; ++i) label[verts.id[i]] = t.label[t.corner_vertex[i]];
  const Sign sign = rng.below(2) ? Sign::down : Sign::up;
  return marcus_schaeffer_forward(m, label, sign);
}

inline constexpr int kUnicellularSampleMaxEdges = 12;

/// Uniform rooted one-face map of genus g in {1, 2}, by rejection over
/// uniform pairings of the 2n-gon.
inline CombMap sample_unicellular_small(int n, int g, PhiloxStream& rng) {
  if (n < 1 || n > kUnicellularSampleMaxEdges || (g != 1 && g != 2))
    throw BoundError("sample_unicellular_small: need 1 <= n <= 12 and g in {1, 2}");
  if (2 * g > n) throw BoundError("sample_unicellular_small: no one-face map of genus " + std::to_string(g) +
                                  " with " + std::to_string(n) + " edges");
  std::vector<int> perm(2 * n), alpha(2 * n);
  for (;;) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (int i = 0; i < n; ++i) {
      alpha[perm[2 * i]] = perm[2 * i + 1];
      alpha[perm[2 * i + 1]] = perm[2 * i];
    }
    if (one_face_genus(alpha) == g) return one_face_from_pairing(alpha);
  }
}

/// Uniform labelling of m: uniform increments per edge, rejected until they
/// close up around every cycle. Labels per vertex id, root vertex 0.
inline std::vector<int> sample_labelling(const CombMap& m, const Orbits& verts, PhiloxStream& rng) {
  const int n2 = m.num_half_edges();
  std::vector<int> inc(n2), label(verts.count), queue;
  std::vector<char> seen(verts.count);
  std::vector<std::vector<int>> at(verts.count);
  for (int h = 0; h < n2; ++h) at[verts.id[h]].push_back(h);
  for (;;) {
    for (int h = 0; h < n2; ++h)
      if (h < m.alpha[h]) {
        inc[h] = static_cast<int>(rng.below(3)) - 1;
        inc[m.alpha[h]] = -inc[h];
      }
    std::fill(seen.begin(), seen.end(), 0);
    const int r = verts.id[m.root];
    queue.assign(1, r);
    seen[r] = 1;
    label[r] = 0;
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i) {
      const int v = queue[i];
      for (int h : at[v]) {
        const int w = verts.id[m.alpha[h]];
        const int lw = label[v] + inc[h];
        if (!seen[w]) {
          seen[w] = 1;
          label[w] = lw;
          queue.push_back(w);
        } else if (label[w] != lw) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return label;
  }
}

/// Uniform pointed genus-g quadrangulation with n faces, g in {1, 2}, small n.
inline SampledGraph sample_quadrangulation_small_graph(int n, int g, PhiloxStream& rng) {
  const CombMap m = sample_unicellular_small(n, g, rng);
  const Orbits verts = vertex_orbits(m);
  const auto label = sample_labelling(m, verts, rng);
  const Sign sign = rng.below(2) ? Sign::down : Sign::up;
  const auto pq = marcus_schaeffer_forward(m, label, sign);
  return {to_graph(pq.q), pq.pointed};
}

// ------------------------------------------------------------------ cells

inline constexpr int kMaxPoints = 16;

struct CellReport {
  int k = 0;
  std::int64_t num_vertices = 0;
  std::vector<int> marked;
  std::vector<std::int64_t> strict_counts;  // vertices strictly closest to point i
  std::int64_t tie_count = 0;
  std::vector<std::int64_t> split_counts;   // ties shared equally, scaled by split_scale
  std::int64_t split_scale = 1;
  std::vector<int> pair_distances;          // i < j, row-major

  double mass(int i) const { return static_cast<double>(strict_counts[i]) / static_cast<double>(num_vertices); }
  double tie_mass() const { return static_cast<double>(tie_count) / static_cast<double>(num_vertices); }
  double split_mass(int i) const {
    return static_cast<double>(split_counts[i]) / (static_cast<double>(num_vertices) * static_cast<double>(split_scale));
  }
  int distance(int i, int j) const {
    if (i > j) std::swap(i, j);
    return pair_distances[i * k - i * (i + 1) / 2 + (j - i - 1)];
  }
};

struct CellWorkspace {
  std::vector<std::vector<int>> dist;
  std::vector<int> queue;
};

inline CellReport cell_masses(const Graph& g, const std::vector<int>& marked, CellWorkspace& ws) {
  const int k = static_cast<int>(marked.size());
  if (k < 2 || k > kMaxPoints) throw BoundError("cell_masses: need 2 <= k <= 16");
  CellReport r;
  r.k = k;
  r.num_vertices = g.num_vertices;
  r.marked = marked;
  ws.dist.resize(k);
  for (int i = 0; i < k; ++i) bfs_into(g, marked[i], ws.dist[i], ws.queue);
  std::int64_t scale = 1;
  for (int m = 2; m <= k; ++m) scale = std::lcm(scale, static_cast<std::int64_t>(m));
  r.split_scale = scale;
  r.strict_counts.assign(k, 0);
  r.split_counts.assign(k, 0);
  for (int v = 0; v < g.num_vertices; ++v) {
    int best = ws.dist[0][v], who = 0, mult = 1;
    for (int i = 1; i < k; ++i) {
      const int d = ws.dist[i][v];
      if (d < best) {
        best = d;
        who = i;
        mult = 1;
      } else if (d == best) {
        ++mult;
      }
    }
    if (best < 0) throw StructureError("cell_masses: graph is disconnected");
    if (mult == 1) {
      ++r.strict_counts[who];
      r.split_counts[who] += scale;
    } else {
      ++r.tie_count;
      for (int i = 0; i < k; ++i)
        if (ws.dist[i][v] == best) r.split_counts[i] += scale / mult;
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) r.pair_distances.push_back(ws.dist[i][marked[j]]);
  return r;
}

inline CellReport cell_masses(const Graph& g, const std::vector<int>& marked) {
  CellWorkspace ws;
  return cell_masses(g, marked, ws);
}

/// k distinct uniform vertices (with replacement, coincident draws redrawn).
inline std::vector<int> draw_points(int num_vertices, int k, PhiloxStream& rng) {
  if (k > num_vertices) throw BoundError("draw_points: more points than vertices");
  std::vector<int> marked;
  while (static_cast<int>(marked.size()) < k) {
    const int v = static_cast<int>(rng.below(num_vertices));
    if (std::find(marked.begin(), marked.end(), v) == marked.end()) marked.push_back(v);
  }
  return marked;
}

inline CellReport voronoi_masses(const Graph& g, int k, PhiloxStream& rng, CellWorkspace& ws) {
  return cell_masses(g, draw_points(g.num_vertices, k, rng), ws);
}

inline CellReport voronoi_masses(const Graph& g, int k, PhiloxStream& rng) {
  CellWorkspace ws;
  return voronoi_masses(g, k, rng, ws);
}

// ------------------------------------------------------------ references

/// E[prod Y_i^a_i] for the spacings of k-1 uniform points on [0, 1]:
/// (k-1)! prod a_i! / (k-1+sum a)!.
inline Rational dirichlet_moment(int k, const std::vector<int>& a) {
  if (k < 2) throw std::invalid_argument("dirichlet_moment: k must be >= 2");
  if (static_cast<int>(a.size()) != k) throw std::invalid_argument("dirichlet_moment: need k exponents");
  BigInt num = factorial(k - 1);
  unsigned long total = 0;
  for (int x : a) {
    if (x < 0) throw std::invalid_argument("dirichlet_moment: negative exponent");
    num *= factorial(x);
    total += x;
  }
  return Rational(num, factorial(k - 1 + total));
}

/// Spacings of k-1 sorted uniforms; the reference law itself.
inline std::vector<double> sample_spacings(int k, PhiloxStream& rng) {
  std::vector<double> u(k - 1);
  for (auto& x : u) x = rng.uniform01();
  std::sort(u.begin(), u.end());
  std::vector<double> y(k);
  double prev = 0;
  for (int i = 0; i < k - 1; ++i) {
    y[i] = u[i] - prev;
    prev = u[i];
  }
  y[k - 1] = 1 - prev;
  return y;
}

// --------------------------------------------------------------- moments

struct MomentEstimate {
  std::string name;
  double estimate = 0;
  double stderr_ = 0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;
  Rational reference;
  bool within(double tol) const { return std::abs(estimate - reference.to_double()) <= tol; }
  double z() const { return stderr_ > 0 ? (estimate - reference.to_double()) / stderr_ : 0; }
};

struct TrialRecord {
  std::vector<double> masses;
  double tie = 0;
  std::vector<int> pair_distances;
};

struct Quantiles {
  double mean = 0;
  std::array<double, 5> q{};  // min, 25%, median, 75%, max
};

struct MomentReport {
  int genus = 0;
  long n = 0;
  int k = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  double runtime_seconds = 0;
  std::vector<MomentEstimate> moments;
  Quantiles tie_rate;
  double first_pair_even_fraction = 0;  // parity class of d(v1, v2)
  std::vector<TrialRecord> per_trial;

  const MomentEstimate& get(const std::string& name) const {
    for (const auto& m : moments)
      if (m.name == name) return m;
    throw std::out_of_range("MomentReport: no moment named " + name);
  }
};

namespace detail {

inline MomentEstimate summarize(std::string name, const std::vector<double>& xs, Rational ref) {
  MomentEstimate e;
  e.name = std::move(name);
  e.trials = xs.size();
  e.reference = std::move(ref);
  double sum = 0;
  for (double x : xs) sum += x;
  e.estimate = xs.empty() ? 0 : sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - e.estimate) * (x - e.estimate);
    e.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  }
  return e;
}

inline Quantiles quantiles(std::vector<double> xs) {
  Quantiles q;
  if (xs.empty()) return q;
  double sum = 0;
  for (double x : xs) sum += x;
  q.mean = sum / static_cast<double>(xs.size());
  std::sort(xs.begin(), xs.end());
  for (int i = 0; i < 5; ++i) q.q[i] = xs[static_cast<std::size_t>(std::lround(i * (xs.size() - 1) / 4.0))];
  return q;
}

inline std::vector<int> unit(int k, int i, int power) {
  std::vector<int> a(k, 0);
  a[i] = power;
  return a;
}

}  // namespace detail

/// One trial: the graph drawn from stream (seed, trial), then k points.
inline CellReport run_trial(int genus, long n, int k, std::uint64_t seed, std::uint64_t trial, CellWorkspace& ws) {
  PhiloxStream rng(seed, trial);
  const SampledGraph s = genus == 0 ? sample_quadrangulation_g0_graph(static_cast<int>(n), rng)
                                    : sample_quadrangulation_small_graph(static_cast<int>(n), genus, rng);
  return voronoi_masses(s.graph, k, rng, ws);
}

/// Strict-cell moments (ties excluded from every cell), with tie-split
/// variants alongside. Symmetrized statistics average over the k points.
inline MomentReport estimate_moments(int genus, long n, int k, std::uint64_t trials, std::uint64_t seed, int threads) {
  if (genus < 0 || genus > 2) throw BoundError("estimate_moments: genus must be 0, 1 or 2");
  if (genus > 0 && (n > kUnicellularSampleMaxEdges || n < 2 * genus))
    throw BoundError("estimate_moments: genus >= 1 needs 2g <= n <= 12");
  if (n < 1 || n > 100'000'000) throw BoundError("estimate_moments: n outside [1, 1e8]");
  if (k < 2 || k > kMaxPoints) throw BoundError("estimate_moments: need 2 <= k <= 16");
  if (trials < 2) throw BoundError("estimate_moments: need at least 2 trials");
  if (threads < 1) threads = 1;
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialRecord> rec(trials);
  std::vector<std::vector<double>> split(trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    CellWorkspace ws;
    try {
      for (std::uint64_t t; (t = next.fetch_add(1)) < trials;) {
        const CellReport c = run_trial(genus, n, k, seed, t, ws);
        rec[t].tie = c.tie_mass();
        rec[t].pair_distances = c.pair_distances;
        for (int i = 0; i < k; ++i) {
          rec[t].masses.push_back(c.mass(i));
          split[t].push_back(c.split_mass(i));
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = trials;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  MomentReport r;
  r.genus = genus;
  r.n = n;
  r.k = k;
  r.trials = trials;
  r.seed = seed;
  r.threads = threads;

  const std::size_t T = trials;
  auto collect = [&](auto f) {
    std::vector<double> xs(T);
    for (std::size_t t = 0; t < T; ++t) xs[t] = f(t);
    return xs;
  };
  auto sym = [&](const std::vector<double>& y, auto g) {
    double s = 0;
    for (int i = 0; i < k; ++i) s += g(y[i]);
    return s / k;
  };
  auto prod = [&](const std::vector<double>& y) {
    double p = 1;
    for (double x : y) p *= x;
    return p;
  };
  auto& M = r.moments;
  const std::vector<int> ones(k, 1);
  if (k == 2) {
    M.push_back(detail::summarize("E[X]", collect([&](std::size_t t) { return sym(rec[t].masses, [](double x) { return x; }); }),
                                  dirichlet_moment(2, {1, 0})));
    M.push_back(detail::summarize("E[X^2]", collect([&](std::size_t t) { return sym(rec[t].masses, [](double x) { return x * x; }); }),
                                  dirichlet_moment(2, {2, 0})));
    M.push_back(detail::summarize("E[X(1-X)]",
                                  collect([&](std::size_t t) { return sym(rec[t].masses, [](double x) { return x * (1 - x); }); }),
                                  dirichlet_moment(2, {1, 1})));
    M.push_back(detail::summarize("E[X1*X2]", collect([&](std::size_t t) { return prod(rec[t].masses); }),
                                  dirichlet_moment(2, {1, 1})));
    M.push_back(detail::summarize("E[X^2] ties split",
                                  collect([&](std::size_t t) { return sym(split[t], [](double x) { return x * x; }); }),
                                  dirichlet_moment(2, {2, 0})));
    M.push_back(detail::summarize("E[X(1-X)] ties split",
                                  collect([&](std::size_t t) { return sym(split[t], [](double x) { return x * (1 - x); }); }),
                                  dirichlet_moment(2, {1, 1})));
  } else {
    M.push_back(detail::summarize("E[prod Y]", collect([&](std::size_t t) { return prod(rec[t].masses); }),
                                  dirichlet_moment(k, ones)));
    M.push_back(detail::summarize("E[Y]", collect([&](std::size_t t) { return sym(rec[t].masses, [](double x) { return x; }); }),
                                  dirichlet_moment(k, detail::unit(k, 0, 1))));
    M.push_back(detail::summarize("E[Y^2]", collect([&](std::size_t t) { return sym(rec[t].masses, [](double x) { return x * x; }); }),
                                  dirichlet_moment(k, detail::unit(k, 0, 2))));
    M.push_back(detail::summarize("E[prod Y] ties split", collect([&](std::size_t t) { return prod(split[t]); }),
                                  dirichlet_moment(k, ones)));
  }
  for (int i = 0; i < k; ++i) {
    const std::string idx = std::to_string(i + 1);
    M.push_back(detail::summarize("E[Y_" + idx + "]", collect([&](std::size_t t) { return rec[t].masses[i]; }),
                                  dirichlet_moment(k, detail::unit(k, i, 1))));
    M.push_back(detail::summarize("E[Y_" + idx + "^2]",
                                  collect([&](std::size_t t) { return rec[t].masses[i] * rec[t].masses[i]; }),
                                  dirichlet_moment(k, detail::unit(k, i, 2))));
  }
  r.tie_rate = detail::quantiles(collect([&](std::size_t t) { return rec[t].tie; }));
  std::uint64_t even = 0;
  for (const auto& x : rec) even += x.pair_distances[0] % 2 == 0;
  r.first_pair_even_fraction = static_cast<double>(even) / static_cast<double>(T);
  r.per_trial = std::move(rec);
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace tgmaps
