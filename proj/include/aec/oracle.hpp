#pragma once

#include <optional>
#include <vector>

#include "aec/coloring.hpp"
#include "aec/plane_graph.hpp"

namespace aec {

struct OracleResult {
  bool found = false;     // false: index exceeds k_max
  int index = 0;          // smallest palette size admitting an acyclic coloring
  EdgeColoring witness;   // one acyclic coloring with `index` colors
};

namespace detail {

// Does assigning `color` to edge (u,v) close a cycle alternating with some
// color `other`?  Such a cycle is an alternating path from v to u that starts
// and ends on an `other` edge.  The caller guarantees neither endpoint sees
// `color`, so the walk below is deterministic and cannot return to v.
inline bool closes_bicolored_cycle(const PlaneGraph& g, const EdgeColoring& c, int u, int v, int color) {
  for (int other : seen_colors(g, c, v)) {
    if (other == color || !sees_color(g, c, u, other)) continue;
    int cur = v;
    int want = other;
    int guard = g.edge_count() + 1;
    while (guard-- > 0) {
      int nxt = -1;
      for (int w : g.neighbors(cur))
        if (c.by_edge[g.edge_index(cur, w)] == want) {
          nxt = w;
          break;
        }
      if (nxt == -1) break;
      if (nxt == u) {
        if (want == other) return true;
        break;
      }
      cur = nxt;
      want = (want == other) ? color : other;
    }
  }
  return false;
}

inline bool oracle_search(const PlaneGraph& g, const std::vector<int>& order, std::size_t at, int k,
                          EdgeColoring& c, int max_used) {
  if (at == order.size()) return true;
  int e = order[at];
  int u = g.edges()[e].u, v = g.edges()[e].v;
  int cap = std::min(k, max_used + 1);  // color classes are interchangeable
  for (int col = 1; col <= cap; ++col) {
    if (sees_color(g, c, u, col) || sees_color(g, c, v, col)) continue;
    if (closes_bicolored_cycle(g, c, u, v, col)) continue;
    c.by_edge[e] = col;
    if (oracle_search(g, order, at + 1, k, c, std::max(max_used, col))) return true;
    c.by_edge[e] = 0;
  }
  return false;
}

// Edge order: vertices in degeneracy order (repeatedly peel minimum degree),
// each edge keyed by the later endpoint.
inline std::vector<int> oracle_edge_order(const PlaneGraph& g) {
  int n = g.vertex_count();
  std::vector<int> deg(n);
  std::vector<char> gone(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<int> peel_pos(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && (best == -1 || deg[v] < deg[best])) best = v;
    gone[best] = 1;
    peel_pos[best] = step;
    for (int u : g.neighbors(best))
      if (!gone[u]) --deg[u];
  }
  std::vector<int> order(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) order[e] = e;
  auto key = [&](int e) {
    const Edge& ed = g.edges()[e];
    return std::pair(std::max(peel_pos[ed.u], peel_pos[ed.v]), std::min(peel_pos[ed.u], peel_pos[ed.v]));
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) > key(b); });
  return order;
}

}  // namespace detail

/// Exact acyclic chromatic index by backtracking, for small graphs (intended
/// for at most ~20 edges).  Returns the smallest k <= k_max that admits an
/// acyclic k-edge-coloring together with one witness.
inline OracleResult brute_force_index(const PlaneGraph& g, int k_max) {
  OracleResult res;
  if (g.edge_count() == 0) {
    res.found = true;
    res.index = 0;
    res.witness = EdgeColoring(g, 0);
    return res;
  }
  std::vector<int> order = detail::oracle_edge_order(g);
  for (int k = std::max(1, g.max_degree()); k <= k_max; ++k) {
    EdgeColoring c(g, k);
    if (detail::oracle_search(g, order, 0, k, c, 0)) {
      res.found = true;
      res.index = k;
      res.witness = std::move(c);
      return res;
    }
  }
  return res;
}

}  // namespace aec
