#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aec/plane_graph.hpp"

namespace aec {

inline PlaneGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n >= 3 required");
  std::vector<std::vector<int>> rot(n);
  for (int i = 0; i < n; ++i) rot[i] = {(i + 1) % n, (i + n - 1) % n};
  return PlaneGraph::build_from_rotation(std::move(rot));
}

inline PlaneGraph star_graph(int leaves) {
  std::vector<std::vector<int>> rot(leaves + 1);
  for (int i = 1; i <= leaves; ++i) {
    rot[0].push_back(i);
    rot[i] = {0};
  }
  return PlaneGraph::build_from_rotation(std::move(rot));
}

inline PlaneGraph path_graph(int n) {
  std::vector<std::vector<int>> rot(n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) rot[i].push_back(i - 1);
    if (i + 1 < n) rot[i].push_back(i + 1);
  }
  return PlaneGraph::build_from_rotation(std::move(rot));
}

/// Insert a hub vertex into face `f`, adjacent to every boundary vertex.  The
/// face boundary must be a simple cycle.
inline PlaneGraph stellate_face(const PlaneGraph& g, int f) {
  const auto& cyc = g.faces()[f];
  {
    std::vector<int> s(cyc);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("stellate_face: boundary is not a simple cycle");
  }
  int hub = g.vertex_count();
  std::vector<std::vector<int>> rot = g.rotation();
  rot.emplace_back(cyc.rbegin(), cyc.rend());
  int L = static_cast<int>(cyc.size());
  for (int i = 0; i < L; ++i) {
    int v = cyc[i];
    int before = cyc[(i - 1 + L) % L];  // face predecessor of v
    auto& r = rot[v];
    auto it = std::find(r.begin(), r.end(), before);
    r.insert(it + 1, hub);
  }
  return PlaneGraph::build_from_rotation(std::move(rot));
}

inline PlaneGraph complete_graph_k4() {
  PlaneGraph c3 = cycle_graph(3);
  return stellate_face(c3, 0);
}

/// Hub joined to every vertex of an n-cycle.
inline PlaneGraph wheel_graph(int rim) {
  PlaneGraph c = cycle_graph(rim);
  return stellate_face(c, 0);
}

inline PlaneGraph cube_graph() {
  // inner face 0123, outer 4567, verticals i-(i+4)
  std::vector<std::vector<int>> rot = {
      {4, 1, 3}, {0, 5, 2}, {6, 3, 1}, {7, 0, 2},
      {5, 0, 7}, {6, 1, 4}, {7, 2, 5}, {4, 3, 6},
  };
  return PlaneGraph::build_from_rotation(std::move(rot));
}

inline PlaneGraph icosahedron() {
  // pole 0, upper ring 1..5, lower ring 6..10, pole 11
  std::vector<std::vector<int>> rot = {
      {1, 2, 3, 4, 5},
      {0, 5, 6, 7, 2},
      {0, 1, 7, 8, 3},
      {0, 2, 8, 9, 4},
      {0, 3, 9, 10, 5},
      {0, 4, 10, 6, 1},
      {1, 5, 10, 11, 7},
      {2, 1, 6, 11, 8},
      {3, 2, 7, 11, 9},
      {4, 3, 8, 11, 10},
      {5, 4, 9, 11, 6},
      {6, 10, 9, 8, 7},
  };
  return PlaneGraph::build_from_rotation(std::move(rot));
}

/// Planar dual: one vertex per face, adjacent across each edge, rotations
/// inherited from the face boundaries.
inline PlaneGraph dual_graph(const PlaneGraph& g) {
  int m = g.face_count();
  std::vector<std::vector<int>> rot(m);
  for (int f = 0; f < m; ++f) {
    const auto& cyc = g.faces()[f];
    int L = static_cast<int>(cyc.size());
    for (int i = 0; i < L; ++i) {
      int u = cyc[i], v = cyc[(i + 1) % L];
      rot[f].push_back(g.face_of_dart(v, u));
    }
  }
  return PlaneGraph::build_from_rotation(std::move(rot));
}

inline PlaneGraph dodecahedron() { return dual_graph(icosahedron()); }

/// Vertex truncation: each vertex becomes a polygon of corner vertices, one
/// per incident edge.
inline PlaneGraph truncate_graph(const PlaneGraph& g) {
  std::vector<int> offset(g.vertex_count() + 1, 0);
  for (int v = 0; v < g.vertex_count(); ++v) offset[v + 1] = offset[v] + g.degree(v);
  auto corner = [&](int v, int u) {
    const auto& rot = g.neighbors(v);
    int p = static_cast<int>(std::find(rot.begin(), rot.end(), u) - rot.begin());
    return offset[v] + p;
  };
  std::vector<std::vector<int>> rot(offset.back());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int a : g.neighbors(v))
      rot[corner(v, a)] = {corner(a, v), corner(v, g.succ(v, a)), corner(v, g.pred(v, a))};
  return PlaneGraph::build_from_rotation(std::move(rot));
}

inline PlaneGraph truncated_dodecahedron() { return truncate_graph(dodecahedron()); }

/// Replace each listed edge by a path through `t` fresh degree-2 vertices.
inline PlaneGraph subdivide_edges(const PlaneGraph& g, const std::vector<Edge>& which, int t) {
  if (t < 0) throw std::invalid_argument("subdivide_edges: t >= 0");
  std::vector<std::vector<int>> rot = g.rotation();
  int next = g.vertex_count();
  for (const Edge& e : which) {
    if (t == 0) continue;
    std::vector<int> chain(t);
    std::iota(chain.begin(), chain.end(), next);
    next += t;
    for (int i = 0; i < t; ++i) {
      int left = (i == 0) ? e.u : chain[i - 1];
      int right = (i + 1 == t) ? e.v : chain[i + 1];
      rot.push_back({left, right});
    }
    *std::find(rot[e.u].begin(), rot[e.u].end(), e.v) = chain.front();
    *std::find(rot[e.v].begin(), rot[e.v].end(), e.u) = chain.back();
  }
  return PlaneGraph::build_from_rotation(std::move(rot));
}

/// Subdivide every edge shared by two big faces `t` times, then add a hub into
/// every face of length >= 4.  With the truncated dodecahedron as base this
/// yields a triangulation whose small vertices all have two hubs of maximum
/// degree as neighbors.
inline PlaneGraph borodin_construction_from(const PlaneGraph& base, int t) {
  if (t < 1) throw std::invalid_argument("borodin_construction: t >= 1 required");
  std::vector<Edge> doomed;
  for (const Edge& e : base.edges()) {
    int f1 = base.face_of_dart(e.u, e.v);
    int f2 = base.face_of_dart(e.v, e.u);
    if (base.face_length(f1) >= 10 && base.face_length(f2) >= 10) doomed.push_back(e);
  }
  PlaneGraph sub = subdivide_edges(base, doomed, t);
  // stellate all big faces; face ids shift as hubs are added, so re-scan
  for (;;) {
    int target = -1;
    for (int f = 0; f < sub.face_count(); ++f)
      if (sub.face_length(f) >= 4) {
        target = f;
        break;
      }
    if (target == -1) break;
    sub = stellate_face(sub, target);
  }
  return sub;
}

inline PlaneGraph borodin_construction(int t) {
  return borodin_construction_from(truncated_dodecahedron(), t);
}

/// Recipe for a standalone bunch: per-position degrees decide which gaps are
/// quadrilateral faces and which split into triangle pairs.
struct GadgetSpec {
  int t = 11;
  std::vector<int> degrees;     // size t, values in {2,3,4}
  bool left_end_edge = false;   // force edge x0-x1 (also implied by degrees)
  bool right_end_edge = false;  // force edge xt-x_{t+1}
  int parent_pad = 0;           // extra leaves on each parent
  std::uint64_t seed = 0;
};

struct GadgetResult {
  PlaneGraph graph;
  Bunch bunch;
  int parent_v = 0;  // top parent (rotation lists x0..x_{t+1} clockwise)
  int parent_w = 1;
};

/// Build a plane graph consisting of one maximal bunch plus optional parent
/// padding.  Vertex ids: 0 = v, 1 = w, 2..t+3 = x0..x_{t+1}, then pads.
inline GadgetResult bunch_gadget(const GadgetSpec& spec) {
  int t = spec.t;
  if (t < 1) throw std::invalid_argument("bunch_gadget: t >= 1");
  std::vector<int> deg = spec.degrees;
  if (deg.empty()) deg.assign(t, 2);
  if (static_cast<int>(deg.size()) != t) throw std::invalid_argument("bunch_gadget: degrees size != t");
  for (int d : deg)
    if (d < 2 || d > 4) throw std::invalid_argument("bunch_gadget: position degrees must be 2, 3 or 4");

  // gap edges e[1..t+1]; e[i] joins x_{i-1} and x_i; deg(x_i) = 2 + e[i] + e[i+1]
  auto solve_chain = [&](int e1) -> std::optional<std::vector<int>> {
    std::vector<int> e(t + 2, 0);
    e[1] = e1;
    for (int i = 1; i <= t; ++i) {
      int want = deg[i - 1] - 2 - e[i];
      if (want < 0 || want > 1) return std::nullopt;
      e[i + 1] = want;
    }
    if (spec.left_end_edge && !e[1]) return std::nullopt;
    if (spec.right_end_edge && !e[t + 1]) return std::nullopt;
    return e;
  };
  std::optional<std::vector<int>> chain = solve_chain(spec.left_end_edge ? 1 : 0);
  if (!chain && !spec.left_end_edge) chain = solve_chain(1);
  if (!chain)
    throw std::invalid_argument("bunch_gadget: inconsistent degree pattern (no horizontal support)");
  const std::vector<int>& e = *chain;

  int xs = t + 2;       // x0..x_{t+1}
  auto x = [&](int i) { return 2 + i; };
  int next_id = 2 + xs;
  std::vector<std::vector<int>> rot(next_id);

  // parents: v = 0 reads the sequence clockwise, w = 1 reads it reversed
  for (int i = 0; i < xs; ++i) rot[0].push_back(x(i));
  for (int i = xs - 1; i >= 0; --i) rot[1].push_back(x(i));

  for (int i = 0; i < xs; ++i) {
    auto& r = rot[x(i)];
    r.push_back(0);
    if (i > 0 && e[i]) r.push_back(x(i - 1));
    r.push_back(1);
    if (i + 1 < xs && e[i + 1]) r.push_back(x(i + 1));
  }

  for (int p = 0; p < spec.parent_pad; ++p) {
    rot.push_back({0});
    rot[0].push_back(next_id++);
  }
  for (int p = 0; p < spec.parent_pad; ++p) {
    rot.push_back({1});
    rot[1].push_back(next_id++);
  }

  GadgetResult out{PlaneGraph::build_from_rotation(std::move(rot)), Bunch{}, 0, 1};
  Bunch& b = out.bunch;
  b.parent_a = 0;
  b.parent_b = 1;
  b.anchor_left = x(0);
  b.anchor_right = x(t + 1);
  for (int i = 1; i <= t; ++i) b.bunch_vertices.push_back(x(i));
  for (int i = 1; i <= t + 1; ++i) b.gaps.push_back(e[i] ? GapKind::tri_pair : GapKind::quad);
  return out;
}

// Small deterministic RNG wrapper: splitmix64, identical on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  int in_range(int lo, int hi) { return lo + below(hi - lo + 1); }

private:
  std::uint64_t state_;
};

struct RandomPlanarOptions {
  double thin_fraction = 0.0;     // fraction of edges offered for deletion
  bool keep_two_connected = true; // refuse deletions that break 2-connectivity
};

/// Seed-deterministic random plane graph: an incremental random triangulation
/// (each new vertex stellates a random face), optionally thinned by random
/// edge deletions.
inline PlaneGraph random_planar(int n, std::uint64_t seed, const RandomPlanarOptions& opt = {}) {
  if (n < 4) throw std::invalid_argument("random_planar: n >= 4 required");
  Rng rng(seed);
  PlaneGraph g = complete_graph_k4();
  while (g.vertex_count() < n) g = stellate_face(g, rng.below(g.face_count()));
  if (opt.thin_fraction <= 0.0) return g;

  int attempts = static_cast<int>(opt.thin_fraction * g.edge_count());
  for (int k = 0; k < attempts; ++k) {
    if (g.edge_count() <= g.vertex_count()) break;
    const Edge e = g.edges()[rng.below(g.edge_count())];
    if (g.degree(e.u) <= 2 || g.degree(e.v) <= 2) continue;
    PlaneGraph trial = delete_edges(g, {e});
    ValidationReport rep = validate(trial);
    if (opt.keep_two_connected ? rep.two_connected : rep.connected) g = std::move(trial);
  }
  return g;
}

}  // namespace aec
