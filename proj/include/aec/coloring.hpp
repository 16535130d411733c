#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/plane_graph.hpp"

namespace aec {

/// Partial or total edge coloring over a fixed graph's edge list.  Color 0
/// means unassigned; assigned colors live in 1..palette.
struct EdgeColoring {
  int palette = 0;
  std::vector<int> by_edge;  // indexed by PlaneGraph edge id

  EdgeColoring() = default;
  EdgeColoring(const PlaneGraph& g, int k) : palette(k), by_edge(g.edge_count(), 0) {}

  int get(const PlaneGraph& g, int u, int v) const { return by_edge[g.edge_index(u, v)]; }

  void set(const PlaneGraph& g, int u, int v, int c) {
    if (c < 0 || c > palette) throw std::invalid_argument("color out of palette: " + std::to_string(c));
    by_edge[g.edge_index(u, v)] = c;
  }

  bool total() const {
    return std::find(by_edge.begin(), by_edge.end(), 0) == by_edge.end();
  }

  int assigned_count() const {
    return static_cast<int>(by_edge.size() - std::count(by_edge.begin(), by_edge.end(), 0));
  }
};

/// Colors currently on edges at v (excluding unassigned).
inline std::vector<int> seen_colors(const PlaneGraph& g, const EdgeColoring& c, int v) {
  std::vector<int> out;
  for (int u : g.neighbors(v)) {
    int col = c.by_edge[g.edge_index(v, u)];
    if (col != 0) out.push_back(col);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool sees_color(const PlaneGraph& g, const EdgeColoring& c, int v, int color) {
  for (int u : g.neighbors(v))
    if (c.by_edge[g.edge_index(v, u)] == color) return true;
  return false;
}

inline bool is_proper(const PlaneGraph& g, const EdgeColoring& c) {
  if (static_cast<int>(c.by_edge.size()) != g.edge_count())
    throw std::invalid_argument("coloring does not match the graph's edge list");
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> cols;
    for (int u : g.neighbors(v)) {
      int col = c.by_edge[g.edge_index(v, u)];
      if (col != 0) cols.push_back(col);
    }
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) return false;
  }
  return true;
}

/// Search the subgraph of colors {alpha, beta} for a cycle.  In a proper
/// partial coloring that subgraph has maximum degree 2, so cycles are exactly
/// its non-path components and alternate colors automatically.
inline std::optional<std::vector<int>> find_bicolored_cycle(const PlaneGraph& g, const EdgeColoring& c,
                                                            int alpha, int beta) {
  if (alpha == beta) throw std::invalid_argument("find_bicolored_cycle: colors must differ");
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    if (c.by_edge[e] != alpha && c.by_edge[e] != beta) continue;
    adj[g.edges()[e].u].push_back(g.edges()[e].v);
    adj[g.edges()[e].v].push_back(g.edges()[e].u);
  }
  std::vector<char> used(g.vertex_count(), 0);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (used[s] || adj[s].size() != 2) continue;
    // walk the component from s; a return to s closes a cycle
    std::vector<int> cyc{s};
    used[s] = 1;
    int prev = s, cur = adj[s][0];
    while (cur != s) {
      if (adj[cur].size() != 2) break;  // path end: no cycle through here
      used[cur] = 1;
      cyc.push_back(cur);
      int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    }
    if (cur == s && cyc.size() >= 3) return cyc;
  }
  return std::nullopt;
}

/// Re-check a reported cycle: distinct vertices, every edge present, colors
/// drawn from {alpha, beta} with no two consecutive edges equal.
inline bool is_alternating_cycle(const PlaneGraph& g, const EdgeColoring& c, const std::vector<int>& cycle,
                                 int alpha, int beta) {
  int n = static_cast<int>(cycle.size());
  if (n < 4 || n % 2 != 0) return false;
  {
    std::vector<int> sorted(cycle);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  for (int i = 0; i < n; ++i) {
    int u = cycle[i], v = cycle[(i + 1) % n];
    if (!g.has_edge(u, v)) return false;
    int col = c.by_edge[g.edge_index(u, v)];
    if (col != alpha && col != beta) return false;
    if (i >= 1 && col == c.by_edge[g.edge_index(cycle[i - 1], u)]) return false;
  }
  return true;
}

struct AcyclicityViolation {
  enum class Kind { none, uncolored_edge, improper, bicolored_cycle };
  Kind kind = Kind::none;
  Edge edge{};              // uncolored_edge / improper
  int vertex = -1;          // improper: shared endpoint
  int alpha = 0, beta = 0;  // bicolored_cycle
  std::vector<int> cycle;

  std::string describe() const {
    switch (kind) {
      case Kind::none: return "ok";
      case Kind::uncolored_edge:
        return "edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v) + " is uncolored";
      case Kind::improper:
        return "two edges of one color meet at vertex " + std::to_string(vertex);
      case Kind::bicolored_cycle:
        return "cycle in colors " + std::to_string(alpha) + "," + std::to_string(beta);
    }
    return "";
  }
};

struct AcyclicityReport {
  bool ok = false;
  AcyclicityViolation violation;
};

namespace detail {

inline std::optional<AcyclicityViolation> properness_violation(const PlaneGraph& g, const EdgeColoring& c) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::pair<int, int>> cols;  // (color, neighbor)
    for (int u : g.neighbors(v)) {
      int col = c.by_edge[g.edge_index(v, u)];
      if (col != 0) cols.emplace_back(col, u);
    }
    std::sort(cols.begin(), cols.end());
    for (std::size_t i = 1; i < cols.size(); ++i)
      if (cols[i].first == cols[i - 1].first) {
        AcyclicityViolation bad;
        bad.kind = AcyclicityViolation::Kind::improper;
        bad.vertex = v;
        bad.edge = Edge(v, cols[i].second);
        return bad;
      }
  }
  return std::nullopt;
}

inline std::optional<AcyclicityViolation> bicolored_violation(const PlaneGraph& g, const EdgeColoring& c) {
  // only pairs that co-occur at some vertex can carry a cycle
  std::set<std::pair<int, int>> pairs;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> cols = seen_colors(g, c, v);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i + 1; j < cols.size(); ++j) pairs.emplace(cols[i], cols[j]);
  }
  for (auto [a, b] : pairs) {
    if (auto cyc = find_bicolored_cycle(g, c, a, b)) {
      AcyclicityViolation bad;
      bad.kind = AcyclicityViolation::Kind::bicolored_cycle;
      bad.alpha = a;
      bad.beta = b;
      bad.cycle = *cyc;
      return bad;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Full check: total, proper, and no two color classes contain a cycle.
inline AcyclicityReport verify_acyclic(const PlaneGraph& g, const EdgeColoring& c) {
  AcyclicityReport rep;
  if (static_cast<int>(c.by_edge.size()) != g.edge_count())
    throw std::invalid_argument("coloring does not match the graph's edge list");
  for (int e = 0; e < g.edge_count(); ++e)
    if (c.by_edge[e] == 0) {
      rep.violation.kind = AcyclicityViolation::Kind::uncolored_edge;
      rep.violation.edge = g.edges()[e];
      return rep;
    }
  if (auto bad = detail::properness_violation(g, c)) {
    rep.violation = *bad;
    return rep;
  }
  if (auto bad = detail::bicolored_violation(g, c)) {
    rep.violation = *bad;
    return rep;
  }
  rep.ok = true;
  return rep;
}

/// Partial variant: ignores unassigned edges, still demands properness and
/// cycle-freeness on what is colored.
inline AcyclicityReport verify_acyclic_partial(const PlaneGraph& g, const EdgeColoring& c) {
  AcyclicityReport rep;
  if (auto bad = detail::properness_violation(g, c)) {
    rep.violation = *bad;
    return rep;
  }
  if (auto bad = detail::bicolored_violation(g, c)) {
    rep.violation = *bad;
    return rep;
  }
  rep.ok = true;
  return rep;
}

/// Color every edge at v with a fresh color absent from the whole closed
/// neighborhood.  Feasible whenever the degree sum over N(v) stays within the
/// palette; the result then stays acyclic because each new color is seen by
/// exactly one neighbor of v.
inline EdgeColoring greedy_extend_vertex(const PlaneGraph& g, const EdgeColoring& c, int v, int k) {
  long long demand = 0;
  for (int u : g.neighbors(v)) demand += g.degree(u);
  if (demand > k)
    throw std::invalid_argument("greedy_extend_vertex: neighborhood degree sum " + std::to_string(demand) +
                                " exceeds palette " + std::to_string(k));
  for (int u : g.neighbors(v))
    if (c.by_edge[g.edge_index(v, u)] != 0)
      throw std::invalid_argument("greedy_extend_vertex: an edge at v is already colored");

  EdgeColoring out = c;
  out.palette = std::max(out.palette, k);
  std::vector<char> forbidden(k + 1, 0);
  for (int u : g.neighbors(v))
    for (int x : g.neighbors(u)) {
      int col = out.by_edge[g.edge_index(u, x)];
      if (col != 0 && col <= k) forbidden[col] = 1;
    }
  for (int u : g.neighbors(v)) {
    int pick = 0;
    for (int col = 1; col <= k; ++col)
      if (!forbidden[col]) {
        pick = col;
        break;
      }
    if (pick == 0) throw std::logic_error("greedy_extend_vertex: no admissible color despite degree-sum bound");
    out.by_edge[g.edge_index(v, u)] = pick;
    forbidden[pick] = 1;
  }
  return out;
}

/// Merge block colorings that share only the cut vertex v.  Colors seen by v
/// are made pairwise disjoint across blocks by swapping colors inside a block;
/// cycles cannot cross a cut vertex, so nothing else needs renaming.
inline EdgeColoring merge_at_cut_vertex(const PlaneGraph& g, int v,
                                        const std::vector<EdgeColoring>& blocks, int k) {
  EdgeColoring out(g, k);
  std::vector<char> taken(k + 1, 0);  // colors already seen by v in merged blocks
  for (const EdgeColoring& blk : blocks) {
    if (static_cast<int>(blk.by_edge.size()) != g.edge_count())
      throw std::invalid_argument("merge_at_cut_vertex: block coloring over a different graph");
    for (int col : blk.by_edge)
      if (col > k) throw std::invalid_argument("merge_at_cut_vertex: block color outside palette");

    std::vector<int> seen_v;
    for (int u : g.neighbors(v)) {
      int col = blk.by_edge[g.edge_index(v, u)];
      if (col != 0) seen_v.push_back(col);
    }
    std::sort(seen_v.begin(), seen_v.end());
    seen_v.erase(std::unique(seen_v.begin(), seen_v.end()), seen_v.end());

    // permute the block's palette so its colors at v land outside `taken`;
    // a permutation keeps the block proper and acyclic
    std::vector<int> perm(k + 1);
    for (int i = 0; i <= k; ++i) perm[i] = i;
    std::vector<char> reserved(k + 1, 0);
    for (int col : seen_v) {
      int dest = perm[col];
      if (!taken[dest] && !reserved[dest]) {
        reserved[dest] = 1;
        continue;
      }
      int cand = 0;
      for (int c2 = 1; c2 <= k; ++c2)
        if (!taken[c2] && !reserved[c2]) {
          cand = c2;
          break;
        }
      if (cand == 0) throw std::invalid_argument("merge_at_cut_vertex: combined palette demand exceeds k");
      int donor = 0;
      for (int c2 = 1; c2 <= k; ++c2)
        if (perm[c2] == cand) {
          donor = c2;
          break;
        }
      std::swap(perm[col], perm[donor]);
      reserved[cand] = 1;
    }

    for (int e = 0; e < g.edge_count(); ++e) {
      int col = blk.by_edge[e];
      if (col == 0) continue;
      if (out.by_edge[e] != 0) throw std::invalid_argument("merge_at_cut_vertex: blocks share an edge");
      out.by_edge[e] = perm[col];
    }
    for (int u : g.neighbors(v)) {
      int col = out.by_edge[g.edge_index(v, u)];
      if (col != 0) taken[col] = 1;
    }
  }
  return out;
}

/// Copy colors between colorings of different graphs by matching endpoints.
inline EdgeColoring transfer_coloring(const PlaneGraph& from, const EdgeColoring& c, const PlaneGraph& to) {
  EdgeColoring out(to, c.palette);
  for (int e = 0; e < from.edge_count(); ++e) {
    const Edge& edge = from.edges()[e];
    if (auto id = to.try_edge_index(edge.u, edge.v)) out.by_edge[*id] = c.by_edge[e];
  }
  return out;
}

}  // namespace aec
