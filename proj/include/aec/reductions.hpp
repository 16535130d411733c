#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/coloring.hpp"
#include "aec/discharging.hpp"
#include "aec/oracle.hpp"
#include "aec/plane_graph.hpp"
#include "aec/rethreading.hpp"

namespace aec {

// ---------------------------------------------------------------------------
// Crowded-pivot extension: a pivot v with a set W of small private neighbors
// (v is their only big contact and their outer neighborhoods are light).
// Extends a coloring of g - w1 over w1's edges, either directly or through a
// single color exchange at a sibling; when no exchange exists, the counting
// certificate below is returned instead.

struct PrivateNeighborCertificate {
  int w_size = 0;
  long long q = 0;
  int s1_size = 0;
  int min_si = 0;
  // (|W|-q)^2 <= 4|W| whenever |W| > q; vacuous below that
  bool counting_bound_ok = false;
};

struct ExtendResult {
  bool extended = false;
  EdgeColoring coloring;
  PrivateNeighborCertificate certificate;
};

namespace detail {

inline std::vector<int> sorted_colors_at_set(const PlaneGraph& g, const EdgeColoring& c,
                                             const std::vector<int>& verts) {
  std::vector<int> out;
  for (int x : verts)
    for (int col : seen_colors(g, c, x)) out.push_back(col);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Extension at w1 = W.front().  Preconditions: q >= 100, every w in W is a
/// 5--neighbor of v whose neighborhood away from v has degree sum at most q,
/// and `c` colors everything except the edges at w1.
inline ExtendResult extend_private_neighbor(const PlaneGraph& g, int v, const std::vector<int>& W,
                                            long long q, const EdgeColoring& c, int k) {
  if (q < 100) throw std::invalid_argument("extend_private_neighbor: q >= 100 required");
  if (W.empty()) throw std::invalid_argument("extend_private_neighbor: W must be nonempty");
  for (int w : W) {
    if (!g.has_edge(v, w)) throw std::invalid_argument("extend_private_neighbor: W member not adjacent to pivot");
    if (g.degree(w) > 5) throw std::invalid_argument("extend_private_neighbor: W member of degree > 5");
    long long sum = 0;
    for (int x : g.neighbors(w))
      if (x != v) sum += g.degree(x);
    if (sum > q) throw std::invalid_argument("extend_private_neighbor: outer degree sum exceeds q");
  }
  int w1 = W.front();
  for (int u : g.neighbors(w1))
    if (c.by_edge[g.edge_index(w1, u)] != 0)
      throw std::invalid_argument("extend_private_neighbor: edges at w1 must be uncolored");

  ExtendResult res;
  res.coloring = c;
  res.coloring.palette = std::max(res.coloring.palette, k);
  EdgeColoring& col = res.coloring;

  // greedy start: vw1 takes the smallest color missing at v (w1 sees nothing
  // yet, so no cycle can close)
  {
    std::vector<char> used(k + 1, 0);
    for (int cc : seen_colors(g, col, v)) used[cc] = 1;
    int pick = 0;
    for (int i = 1; i <= k; ++i)
      if (!used[i]) {
        pick = i;
        break;
      }
    if (pick == 0) throw std::invalid_argument("extend_private_neighbor: no free color at the pivot");
    col.set(g, v, w1, pick);
  }

  std::vector<int> targets;
  for (int u : g.neighbors(w1))
    if (u != v) targets.push_back(u);

  for (int x1 : targets) {
    int c1 = col.get(g, v, w1);

    // S: colors free at v or used on v->W edges; who owns each W color
    std::vector<char> in_s(k + 1, 0);
    std::vector<int> owner(k + 1, -1);  // color -> W member via its v-edge
    {
      std::vector<char> at_v(k + 1, 0);
      for (int cc : seen_colors(g, col, v)) at_v[cc] = 1;
      for (int i = 1; i <= k; ++i)
        if (!at_v[i]) in_s[i] = 1;
      for (int w : W) {
        int cc = col.get(g, v, w);
        if (cc != 0) {
          in_s[cc] = 1;
          owner[cc] = w;
        }
      }
    }
    auto safe_set = [&](int w) {
      // S minus every color seen around N(w) \ v
      std::vector<int> nbrs;
      for (int x : g.neighbors(w))
        if (x != v) nbrs.push_back(x);
      std::vector<char> blocked(k + 1, 0);
      for (int cc : detail::sorted_colors_at_set(g, col, nbrs)) blocked[cc] = 1;
      std::vector<int> out;
      for (int i = 1; i <= k; ++i)
        if (in_s[i] && !blocked[i]) out.push_back(i);
      return out;
    };

    std::vector<int> s1 = safe_set(w1);
    bool placed = false;

    // direct: i safe at w1 and either free at v or its owner does not see c1
    for (int i : s1) {
      if (sees_color(g, col, w1, i)) continue;
      int wi = owner[i];
      if (wi == w1) continue;
      if (wi == -1 || !sees_color(g, col, wi, c1)) {
        col.set(g, w1, x1, i);
        placed = true;
        break;
      }
    }

    // exchange: color w1x1 with i after moving the c1 edge at w_i to some j
    if (!placed) {
      for (int i : s1) {
        if (placed) break;
        if (sees_color(g, col, w1, i)) continue;
        int wi = owner[i];
        if (wi == -1 || wi == w1) continue;
        int xi = -1;
        for (int x : g.neighbors(wi))
          if (x != v && col.get(g, wi, x) == c1) xi = x;
        if (xi == -1) continue;
        for (int j : safe_set(wi)) {
          if (j == i || j == c1) continue;
          if (sees_color(g, col, wi, j) || sees_color(g, col, xi, j)) continue;
          int wj = owner[j];
          if (wj != -1 && wj != wi && sees_color(g, col, wj, i)) continue;
          col.set(g, wi, xi, j);
          col.set(g, w1, x1, i);
          placed = true;
          break;
        }
      }
    }

    if (!placed) {
      PrivateNeighborCertificate cert;
      cert.w_size = static_cast<int>(W.size());
      cert.q = q;
      cert.s1_size = static_cast<int>(s1.size());
      cert.min_si = k + 1;
      for (int w : W) cert.min_si = std::min(cert.min_si, static_cast<int>(safe_set(w).size()));
      long long wsz = static_cast<long long>(W.size());
      cert.counting_bound_ok = wsz <= q || (wsz - q) * (wsz - q) <= 4 * wsz;
      res.certificate = cert;
      res.extended = false;
      return res;
    }

    AcyclicityReport rep = verify_acyclic_partial(g, col);
    if (!rep.ok)
      throw std::logic_error("extend_private_neighbor: extension broke acyclicity: " + rep.violation.describe());
  }

  res.extended = true;
  return res;
}

// ---------------------------------------------------------------------------
// Good-color collection around a big pivot and the recoloring that restores
// its bunch edges.

struct ReductionState {
  int pivot = -1;
  int k = 0;
  std::vector<char> good;        // 1-indexed membership
  std::vector<int> good_colors;  // ascending
  int nf = 0;
  int ns = 0;
  int short_count = 0;
  int removed = 0;
  std::vector<Bunch> long_bunches;   // pivot is a parent
  std::vector<Bunch> short_bunches;  // pivot is a parent

  bool is_good(int c) const { return c >= 1 && c <= k && good[c]; }
  int good_count() const { return static_cast<int>(good_colors.size()); }
  long long removal_budget() const {
    return 5LL * nf + static_cast<long long>(ns) * (nf + ns + 1 - short_count) + 10LL * short_count;
  }
};

/// Build the set of colors safe to reassign around `v`: the palette minus the
/// colors tied to non-bunch neighbors (each with the cheaper of its two
/// removal options) and minus the short-bunch edge colors.  The removal count
/// is checked against its budget exactly.
inline ReductionState collect_good_colors(const PlaneGraph& g, int v, const EdgeColoring& c,
                                          const std::vector<Bunch>& bunches, const Thresholds& th, int k) {
  if (g.degree(v) < th.big) throw std::invalid_argument("collect_good_colors: pivot is not big");
  ReductionState st;
  st.pivot = v;
  st.k = k;
  st.good.assign(k + 1, 1);
  st.good[0] = 0;

  std::set<int> bunch_nbrs;
  for (const Bunch& b : bunches) {
    if (b.parent_a != v && b.parent_b != v) continue;
    for (int x : b.bunch_vertices) bunch_nbrs.insert(x);
    if (b.length() >= th.long_bunch_min)
      st.long_bunches.push_back(b);
    else
      st.short_bunches.push_back(b);
  }
  st.short_count = static_cast<int>(st.short_bunches.size());
  auto counts = count_nf_ns(g, v, bunches);
  st.nf = counts.first;
  st.ns = counts.second;

  auto remove_color = [&](int col) {
    if (col >= 1 && col <= k && st.good[col]) {
      st.good[col] = 0;
      ++st.removed;
    }
  };

  std::vector<std::pair<int, int>> non_bunch_edges;  // (neighbor, color)
  for (int p : g.neighbors(v)) {
    if (bunch_nbrs.count(p)) continue;
    int col = c.get(g, v, p);
    non_bunch_edges.emplace_back(p, col);
  }

  // first pass: the direct colors, plus everything in short bunches
  for (auto [p, col] : non_bunch_edges) remove_color(col);
  for (const Bunch& b : st.short_bunches)
    for (int x : b.bunch_vertices) remove_color(c.get(g, v, x));

  // second pass: per non-bunch edge, the cheaper of (i) the other colors at
  // its far end and (ii) the pivot-edge colors of 2-vertices touching its
  // color elsewhere
  for (auto [p, alpha] : non_bunch_edges) {
    if (alpha == 0) continue;
    std::vector<int> opt_i;
    for (int col : seen_colors(g, c, p))
      if (col != alpha && st.is_good(col)) opt_i.push_back(col);
    std::vector<int> opt_ii;
    for (int u : g.neighbors(v)) {
      if (g.degree(u) != 2) continue;
      bool touches = false;
      for (int x : g.neighbors(u))
        if (c.get(g, u, x) == alpha) touches = true;
      if (!touches) continue;
      int col = c.get(g, v, u);
      if (st.is_good(col)) opt_ii.push_back(col);
    }
    std::sort(opt_ii.begin(), opt_ii.end());
    opt_ii.erase(std::unique(opt_ii.begin(), opt_ii.end()), opt_ii.end());
    const std::vector<int>& chosen = (opt_ii.size() < opt_i.size()) ? opt_ii : opt_i;
    for (int col : chosen) remove_color(col);
  }

  for (int col = 1; col <= k; ++col)
    if (st.good[col]) st.good_colors.push_back(col);

  if (st.removed > st.removal_budget())
    throw std::logic_error("collect_good_colors: removals exceed the 5nf + ns(nf+ns+1-s) + 10s budget");
  return st;
}

struct ReduceResult {
  enum class Status { ok, regime };
  Status status = Status::regime;
  std::string message;
  EdgeColoring coloring;      // over the working graph below
  PlaneGraph working_graph;   // pivot's long-bunch horizontals removed
  bool used_shortcut = false; // the co-parent color was already on a pivot bunch edge

  ReduceResult() : working_graph(PlaneGraph::build_from_rotation({})) {}
};

/// Remove every 2-colored cycle through the pivot by pairwise swaps of good
/// colors at its edges, then a final relocation guarded by the availability
/// count d(v) - T^2 - (k - |good|) > 0 with T the pivot's bunch count.
inline ReduceResult swap_repair(const PlaneGraph& g, const ReductionState& st, const EdgeColoring& c) {
  ReduceResult out;
  out.working_graph = g;
  out.coloring = c;
  EdgeColoring& col = out.coloring;
  int v = st.pivot;

  long long T = static_cast<long long>(st.long_bunches.size() + st.short_bunches.size());
  long long slack = g.degree(v) - T * T - (st.k - st.good_count());
  if (slack <= 0) {
    out.message = "availability check failed: d(v) - T^2 - (k - |good|) = " + std::to_string(slack);
    return out;
  }

  auto bad_cycles = [&]() {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> at_v = seen_colors(g, col, v);
    for (std::size_t i = 0; i < at_v.size(); ++i)
      for (std::size_t j = i + 1; j < at_v.size(); ++j) {
        auto cyc = find_bicolored_cycle(g, col, at_v[i], at_v[j]);
        if (cyc && std::find(cyc->begin(), cyc->end(), v) != cyc->end())
          pairs.emplace_back(at_v[i], at_v[j]);
      }
    return pairs;
  };

  auto swap_at_v = [&](int a, int b) {
    for (int u : g.neighbors(v)) {
      int e = g.edge_index(v, u);
      if (col.by_edge[e] == a)
        col.by_edge[e] = b;
      else if (col.by_edge[e] == b)
        col.by_edge[e] = a;
    }
  };

  std::vector<std::pair<int, int>> bad = bad_cycles();
  while (bad.size() >= 2) {
    auto pick_good = [&](std::pair<int, int> pr) {
      if (st.is_good(pr.first)) return pr.first;
      if (st.is_good(pr.second)) return pr.second;
      return 0;
    };
    int b1 = pick_good(bad[0]);
    int g1 = pick_good(bad[1]);
    if (b1 == 0 || g1 == 0) {
      out.message = "a 2-colored cycle through the pivot avoids the good colors";
      return out;
    }
    std::size_t before = bad.size();
    swap_at_v(b1, g1);
    bad = bad_cycles();
    if (bad.size() >= before) {
      out.message = "pairwise swap failed to reduce the cycle count";
      return out;
    }
  }

  if (bad.size() == 1) {
    int beta1 = st.is_good(bad[0].first) ? bad[0].first : bad[0].second;
    if (!st.is_good(beta1)) {
      out.message = "remaining 2-colored cycle avoids the good colors";
      return out;
    }
    // candidate threads: pivot edges to 2-vertices, stated (pivot color, far color)
    std::vector<std::pair<int, int>> threads;
    for (int u : g.neighbors(v)) {
      if (g.degree(u) != 2) continue;
      int near = col.get(g, v, u);
      int far = 0;
      for (int x : g.neighbors(u))
        if (x != v) far = col.get(g, u, x);
      if (near != 0 && far != 0) threads.emplace_back(near, far);
    }
    auto thread_exists = [&](int near, int far) {
      for (auto [a, b] : threads)
        if (a == near && b == far) return true;
      return false;
    };
    bool fixed = false;
    for (auto [g1, g2] : threads) {
      if (!st.is_good(g1) || g1 == beta1) continue;
      if (thread_exists(g2, beta1)) continue;
      EdgeColoring backup = col;
      swap_at_v(beta1, g1);
      if (bad_cycles().empty()) {
        fixed = true;
        break;
      }
      col = backup;
    }
    if (!fixed) {
      out.message = "no relocation thread clears the final 2-colored cycle";
      return out;
    }
  }

  out.status = ReduceResult::Status::ok;
  return out;
}

struct ColorPlanarResult {
  bool success = false;
  EdgeColoring coloring;
  int stuck_vertex = -1;
  std::string message;
};

/// Recursive driver: brute force on tiny graphs, split at cut vertices, and
/// otherwise peel a vertex whose neighborhood degree sum fits the palette.
inline ColorPlanarResult color_planar(const PlaneGraph& g, int k) {
  ColorPlanarResult res;
  if (g.edge_count() == 0) {
    res.success = true;
    res.coloring = EdgeColoring(g, k);
    return res;
  }
  if (g.edge_count() <= 12) {
    OracleResult oracle = brute_force_index(g, k);
    if (!oracle.found) {
      res.message = "exact search needs more than " + std::to_string(k) + " colors";
      return res;
    }
    res.success = true;
    res.coloring = oracle.witness;
    res.coloring.palette = k;
    return res;
  }

  if (!g.is_connected()) {
    std::vector<int> labels = g.component_labels();
    int comps = *std::max_element(labels.begin(), labels.end()) + 1;
    EdgeColoring merged(g, k);
    for (int comp = 0; comp < comps; ++comp) {
      std::vector<int> keep;
      for (int u = 0; u < g.vertex_count(); ++u)
        if (labels[u] == comp) keep.push_back(u);
      SubgraphResult sub = induced_subgraph(g, keep);
      ColorPlanarResult inner = color_planar(sub.graph, k);
      if (!inner.success) {
        inner.stuck_vertex = inner.stuck_vertex >= 0 ? sub.to_old[inner.stuck_vertex] : -1;
        return inner;
      }
      for (int e = 0; e < sub.graph.edge_count(); ++e) {
        const Edge& ed = sub.graph.edges()[e];
        merged.by_edge[g.edge_index(sub.to_old[ed.u], sub.to_old[ed.v])] = inner.coloring.by_edge[e];
      }
    }
    res.success = true;
    res.coloring = merged;
    return res;
  }

  std::vector<int> cuts = g.cut_vertices();
  if (!cuts.empty()) {
    int v = cuts.front();
    SubgraphResult rest = delete_vertex(g, v);
    std::vector<int> labels = rest.graph.component_labels();
    int comps = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<EdgeColoring> blocks;
    for (int comp = 0; comp < comps; ++comp) {
      std::vector<int> keep{v};
      for (int u = 0; u < rest.graph.vertex_count(); ++u)
        if (labels[u] == comp) keep.push_back(rest.to_old[u]);
      std::sort(keep.begin(), keep.end());
      SubgraphResult block = induced_subgraph(g, keep);
      ColorPlanarResult inner = color_planar(block.graph, k);
      if (!inner.success) {
        inner.stuck_vertex = inner.stuck_vertex >= 0 ? block.to_old[inner.stuck_vertex] : -1;
        return inner;
      }
      EdgeColoring lifted(g, k);
      for (int e = 0; e < block.graph.edge_count(); ++e) {
        const Edge& ed = block.graph.edges()[e];
        lifted.by_edge[g.edge_index(block.to_old[ed.u], block.to_old[ed.v])] = inner.coloring.by_edge[e];
      }
      blocks.push_back(std::move(lifted));
    }
    res.success = true;
    res.coloring = merge_at_cut_vertex(g, v, blocks, k);
    return res;
  }

  std::optional<ConfigurationWitness> w = detect_rc1(g, k);
  if (!w) {
    long long best = -1;
    int stuck = -1;
    for (int u = 0; u < g.vertex_count(); ++u) {
      long long sum = 0;
      for (int x : g.neighbors(u)) sum += g.degree(x);
      if (best == -1 || sum < best) {
        best = sum;
        stuck = u;
      }
    }
    res.stuck_vertex = stuck;
    res.message = "no reducible vertex: smallest neighborhood degree sum is " + std::to_string(best) +
                  " against palette " + std::to_string(k);
    return res;
  }

  int v = w->vertex;
  SubgraphResult rest = delete_vertex(g, v);
  ColorPlanarResult inner = color_planar(rest.graph, k);
  if (!inner.success) {
    inner.stuck_vertex = inner.stuck_vertex >= 0 ? rest.to_old[inner.stuck_vertex] : -1;
    return inner;
  }
  EdgeColoring lifted(g, k);
  for (int e = 0; e < rest.graph.edge_count(); ++e) {
    const Edge& ed = rest.graph.edges()[e];
    lifted.by_edge[g.edge_index(rest.to_old[ed.u], rest.to_old[ed.v])] = inner.coloring.by_edge[e];
  }
  res.success = true;
  res.coloring = greedy_extend_vertex(g, lifted, v, k);
  return res;
}

/// The big-vertex reduction: strip the pivot's long-bunch horizontals, color
/// the rest (recursively or from `base`), then recolor the pivot's stripped
/// edges through the good-color pigeonhole and repair with swaps.
inline ReduceResult reduce_big_vertex(const PlaneGraph& g, int v, const Thresholds& th, int k,
                                      const std::optional<EdgeColoring>& base = std::nullopt) {
  th.check();
  if (g.degree(v) < th.big) throw std::invalid_argument("reduce_big_vertex: pivot is not big");
  if (k < g.max_degree()) throw std::invalid_argument("reduce_big_vertex: palette below the maximum degree");

  ReduceResult out;
  std::vector<Bunch> bunches_g = find_bunches(g, th);
  std::vector<Edge> doomed;
  for (const Bunch& b : bunches_g) {
    if (b.parent_a != v && b.parent_b != v) continue;
    if (b.length() < th.long_bunch_min) continue;
    for (int i = 1; i + 1 <= b.length(); ++i)
      if (g.has_edge(b.bunch_vertices[i - 1], b.bunch_vertices[i]))
        doomed.emplace_back(b.bunch_vertices[i - 1], b.bunch_vertices[i]);
  }
  PlaneGraph work = delete_edges(g, doomed);
  out.working_graph = work;

  std::vector<Bunch> bunches = find_bunches(work, th);
  {
    bool has_long = false;
    for (const Bunch& b : bunches)
      if ((b.parent_a == v || b.parent_b == v) && b.length() >= th.long_bunch_min) has_long = true;
    if (!has_long) {
      out.message = "pivot has no long bunch";
      return out;
    }
  }

  // longest bunch with v as a parent; x = its first bunch vertex
  const Bunch* best = nullptr;
  for (const Bunch& b : bunches)
    if ((b.parent_a == v || b.parent_b == v) && (!best || b.length() > best->length())) best = &b;
  const Bunch& B = *best;
  int w = (B.parent_a == v) ? B.parent_b : B.parent_a;
  int x = B.bunch_vertices.front();

  // coloring of work - x, then its wx edge greedily
  EdgeColoring col(work, k);
  if (base) {
    if (static_cast<int>(base->by_edge.size()) != work.edge_count())
      throw std::invalid_argument("reduce_big_vertex: base coloring does not fit the working graph");
    col = *base;
    col.palette = std::max(col.palette, k);
    for (int u : work.neighbors(x))
      if (col.get(work, x, u) != 0) throw std::invalid_argument("reduce_big_vertex: edges at x must be uncolored");
  } else {
    SubgraphResult sub = delete_vertex(work, x);
    ColorPlanarResult inner = color_planar(sub.graph, k);
    if (!inner.success) {
      out.message = "recursive coloring failed: " + inner.message;
      return out;
    }
    for (int e = 0; e < sub.graph.edge_count(); ++e) {
      const Edge& ed = sub.graph.edges()[e];
      col.by_edge[work.edge_index(sub.to_old[ed.u], sub.to_old[ed.v])] = inner.coloring.by_edge[e];
    }
  }
  {
    std::vector<char> used(k + 1, 0);
    for (int cc : seen_colors(work, col, w)) used[cc] = 1;
    int pick = 0;
    for (int i = 1; i <= k; ++i)
      if (!used[i]) {
        pick = i;
        break;
      }
    if (pick == 0) {
      out.message = "no free color for the wx edge";
      return out;
    }
    col.set(work, w, x, pick);
  }

  ReductionState st = collect_good_colors(work, v, col, bunches, th, k);
  if (B.length() + st.good_count() < k + 2) {
    out.message = "pigeonhole precondition failed: length(B) + |good| = " +
                  std::to_string(B.length() + st.good_count()) + " < k + 2";
    return out;
  }

  // strip the good colors off the pivot's edges
  for (int u : work.neighbors(v)) {
    int e = work.edge_index(v, u);
    if (st.is_good(col.by_edge[e])) col.by_edge[e] = 0;
  }

  int cwx = col.get(work, w, x);
  auto good_except = [&](std::initializer_list<int> banned) {
    for (int cc : st.good_colors) {
      bool ok = true;
      for (int b : banned)
        if (cc == b) ok = false;
      if (ok && !sees_color(work, col, v, cc)) return cc;
    }
    return 0;
  };

  bool shortcut = false;
  for (int y : B.bunch_vertices) {
    if (y == x) continue;
    if (col.get(work, v, y) == cwx) {
      int cwy = col.get(work, w, y);
      int pick = good_except({cwx, cwy});
      if (pick == 0) {
        out.message = "no good color for the vx edge in the shortcut case";
        return out;
      }
      col.set(work, v, x, pick);
      shortcut = true;
      break;
    }
  }
  if (!shortcut) {
    int alpha = 0, y_used = -1;
    for (int y : B.bunch_vertices) {
      if (y == x) continue;
      int cwy = col.get(work, w, y);
      if (cwy != cwx && st.is_good(cwy) && !sees_color(work, col, v, cwy)) {
        alpha = cwy;
        y_used = y;
        break;
      }
    }
    if (alpha == 0) {
      out.message = "pigeonhole produced no good color on the co-parent side";
      return out;
    }
    col.set(work, v, x, alpha);
    int pick = good_except({cwx, alpha});
    if (pick == 0) {
      out.message = "no good color left for the vy edge";
      return out;
    }
    col.set(work, v, y_used, pick);
  }

  // greedy completion over the remaining pivot edges; a bunch with two or
  // more open edges supplies the final two
  std::vector<int> open;
  for (int u : work.neighbors(v))
    if (col.get(work, v, u) == 0) open.push_back(u);
  std::sort(open.begin(), open.end());
  {
    std::vector<int> last_two;
    for (const Bunch& b : st.long_bunches) {
      std::vector<int> here;
      for (int u : b.bunch_vertices)
        if (col.get(work, v, u) == 0) here.push_back(u);
      if (here.size() >= 2) {
        last_two = {here[here.size() - 2], here[here.size() - 1]};
        break;
      }
    }
    if (!last_two.empty()) {
      auto drop = [&](int u) { open.erase(std::remove(open.begin(), open.end(), u), open.end()); };
      drop(last_two[0]);
      drop(last_two[1]);
      open.push_back(last_two[0]);
      open.push_back(last_two[1]);
    }
  }
  auto admissible = [&](int z, int skip_nth) {
    std::vector<int> picks;
    for (int cc : st.good_colors) {
      if (sees_color(work, col, v, cc) || sees_color(work, col, z, cc)) continue;
      picks.push_back(cc);
      if (static_cast<int>(picks.size()) > skip_nth) break;
    }
    return picks;
  };
  for (std::size_t idx = 0; idx < open.size(); ++idx) {
    int z = open[idx];
    std::vector<int> picks = admissible(z, 0);
    if (!picks.empty()) {
      col.set(work, v, z, picks[0]);
      continue;
    }
    // stuck: back up one edge and take its second choice
    if (idx == 0) {
      out.message = "greedy completion stuck on the first edge";
      return out;
    }
    int zprev = open[idx - 1];
    col.set(work, v, zprev, 0);
    std::vector<int> retry = admissible(zprev, 1);
    if (retry.size() < 2) {
      out.message = "greedy completion stuck; single-step backtrack has no second choice";
      return out;
    }
    col.set(work, v, zprev, retry[1]);
    picks = admissible(z, 0);
    if (picks.empty()) {
      out.message = "greedy completion stuck even after backtracking";
      return out;
    }
    col.set(work, v, z, picks[0]);
  }

  ReduceResult repaired = swap_repair(work, st, col);
  if (repaired.status != ReduceResult::Status::ok) return repaired;

  AcyclicityReport rep = verify_acyclic(work, repaired.coloring);
  if (!rep.ok) {
    out.message = "final verification failed: " + rep.violation.describe();
    return out;
  }
  out.status = ReduceResult::Status::ok;
  out.coloring = repaired.coloring;
  out.used_shortcut = shortcut;
  return out;
}

}  // namespace aec
