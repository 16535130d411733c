#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/coloring.hpp"
#include "aec/plane_graph.hpp"

namespace aec {

// A bunch's color state: the pair of colors on each thread v-x_i-w plus the
// colors of the kept end edges x0x1 and xt x_{t+1}, when those edges exist.
struct BunchThreads {
  int t = 0;
  std::vector<std::pair<int, int>> pair;  // 1-indexed: (color at v, color at w)
  std::optional<int> left_end_color;
  std::optional<int> right_end_color;

  bool conflict(int i, int j) const {
    auto [a1, b1] = pair[i];
    auto [a2, b2] = pair[j];
    return a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2;
  }
  bool uses_color(int i, int c) const { return pair[i].first == c || pair[i].second == c; }
};

inline std::vector<int> horizontal_positions(const PlaneGraph& g, const Bunch& b) {
  std::vector<int> out;
  for (int i = 1; i + 1 <= b.length(); ++i)
    if (g.has_edge(b.bunch_vertices[i - 1], b.bunch_vertices[i])) out.push_back(i);
  return out;
}

/// Delete the horizontal edges x_i x_{i+1}, 1 <= i <= t-1.  The end edges
/// x0x1 and xt x_{t+1} stay.
inline PlaneGraph strip_horizontals(const PlaneGraph& g, const Bunch& b) {
  std::string why;
  Thresholds loose;
  loose.big = 1;  // structural re-check only; parent size is not at issue here
  if (!reverify_bunch(g, loose, b, &why)) throw std::invalid_argument("strip_horizontals: not a bunch: " + why);
  std::vector<Edge> doomed;
  for (int i : horizontal_positions(g, b)) doomed.emplace_back(b.bunch_vertices[i - 1], b.bunch_vertices[i]);
  return delete_edges(g, doomed);
}

/// Read the thread colors out of a coloring whose horizontal edges are
/// uncolored (a coloring of the stripped graph, carried on g's edge list).
inline BunchThreads extract_threads(const PlaneGraph& g, const Bunch& b, const EdgeColoring& c) {
  BunchThreads th;
  th.t = b.length();
  th.pair.assign(th.t + 1, {0, 0});
  for (int i = 1; i <= th.t; ++i) {
    int x = b.bunch_vertices[i - 1];
    th.pair[i] = {c.get(g, b.parent_a, x), c.get(g, x, b.parent_b)};
    if (th.pair[i].first == 0 || th.pair[i].second == 0)
      throw std::invalid_argument("extract_threads: thread edge uncolored at position " + std::to_string(i));
  }
  auto seq = b.sequence();
  if (g.has_edge(seq[0], seq[1])) th.left_end_color = c.get(g, seq[0], seq[1]);
  if (g.has_edge(seq[th.t], seq[th.t + 1])) th.right_end_color = c.get(g, seq[th.t], seq[th.t + 1]);
  return th;
}

/// Threads as vertices, adjacent when they share a color.  Properness at the
/// two parents caps the degree at 2, so components are paths and cycles.
struct ThreadConflictGraph {
  int t = 0;
  std::vector<std::vector<int>> adj;  // 1-indexed

  int degree(int i) const { return static_cast<int>(adj[i].size()); }
};

inline ThreadConflictGraph build_conflict_graph(const BunchThreads& th) {
  ThreadConflictGraph conf;
  conf.t = th.t;
  conf.adj.assign(th.t + 1, {});
  for (int i = 1; i <= th.t; ++i)
    for (int j = i + 1; j <= th.t; ++j)
      if (th.conflict(i, j)) {
        conf.adj[i].push_back(j);
        conf.adj[j].push_back(i);
      }
  for (int i = 1; i <= th.t; ++i)
    if (conf.degree(i) > 2)
      throw std::invalid_argument("conflict graph degree exceeds 2: improper input coloring");
  return conf;
}

struct OddPlacement {
  std::vector<int> members;    // O, ascending
  std::vector<int> thread_at;  // 1-indexed slots; 0 = left for the matching
  std::optional<std::pair<int, int>> virtual_edge;  // added when 1..t path was too long
};

namespace detail {

struct ConflictComponents {
  std::vector<int> comp_of;                // 1-indexed
  std::vector<std::vector<int>> members;   // per component, ascending
};

inline ConflictComponents conflict_components(const ThreadConflictGraph& conf) {
  ConflictComponents cc;
  cc.comp_of.assign(conf.t + 1, -1);
  for (int s = 1; s <= conf.t; ++s) {
    if (cc.comp_of[s] != -1) continue;
    int id = static_cast<int>(cc.members.size());
    cc.members.emplace_back();
    std::vector<int> stack{s};
    cc.comp_of[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      cc.members[id].push_back(v);
      for (int u : conf.adj[v])
        if (cc.comp_of[u] == -1) {
          cc.comp_of[u] = id;
          stack.push_back(u);
        }
    }
    std::sort(cc.members[id].begin(), cc.members[id].end());
  }
  return cc;
}

// Grow a path inside one component starting from `seed`, adding the lowest
// available neighbor of either endpoint, until `budget` vertices are added or
// the component is exhausted.  Returns the added vertices.
inline std::vector<int> grow_path(const std::vector<std::vector<int>>& adj, const std::vector<char>& taken,
                                  int seed, int budget) {
  std::vector<int> added;
  if (budget <= 0) return added;
  std::vector<char> in_path(adj.size(), 0);
  added.push_back(seed);
  in_path[seed] = 1;
  int e1 = seed, e2 = seed;
  while (static_cast<int>(added.size()) < budget) {
    int pick = -1;
    int end_used = 0;
    for (int endpoint : {e1, e2}) {
      for (int u : adj[endpoint])
        if (!in_path[u] && !taken[u] && (pick == -1 || u < pick)) {
          pick = u;
          end_used = endpoint;
        }
    }
    if (pick == -1) break;
    in_path[pick] = 1;
    added.push_back(pick);
    if (end_used == e1 && e1 != e2)
      e1 = pick;
    else if (end_used == e2)
      e2 = pick;
    else
      e1 = pick;  // first growth step away from the seed
  }
  return added;
}

inline std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj, int from, int to) {
  std::vector<int> prev(adj.size(), -1);
  std::vector<int> queue{from};
  prev[from] = from;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    if (v == to) break;
    for (int u : adj[v])
      if (prev[u] == -1) {
        prev[u] = v;
        queue.push_back(u);
      }
  }
  std::vector<int> path;
  if (prev[to] == -1) return path;
  for (int v = to; v != from; v = prev[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Choose the thread set O (size ceil((t+1)/2)) destined for the odd slots
/// and slot t, and place it.  Components of the conflict graph intersecting O
/// are fully contained except at most one, whose included part is a path;
/// boundary threads then get the special slots their exposure calls for.
inline OddPlacement select_odd_set(const ThreadConflictGraph& conf, const BunchThreads& threads) {
  int t = conf.t;
  if (t < 11) throw std::invalid_argument("select_odd_set: bunch length below 11");
  int target = (t + 2) / 2;  // ceil((t+1)/2)

  std::vector<std::vector<int>> adj = conf.adj;  // may gain one virtual edge
  OddPlacement placement;
  detail::ConflictComponents cc = detail::conflict_components(conf);
  std::vector<char> taken(t + 1, 0);
  std::vector<int> order;  // O in insertion order

  auto take = [&](int v) {
    taken[v] = 1;
    order.push_back(v);
  };

  int c1 = cc.comp_of[1], ct = cc.comp_of[t];
  if (c1 != ct) {
    // all of the smaller special component, then a path grown from the other
    // special thread (ties keep the component of t whole)
    bool keep_ct = cc.members[ct].size() <= cc.members[c1].size();
    const auto& whole = cc.members[keep_ct ? ct : c1];
    int seed = keep_ct ? 1 : t;
    for (int v : whole) take(v);
    for (int v : detail::grow_path(adj, taken, seed, target - static_cast<int>(order.size()))) take(v);
  } else {
    std::vector<int> path = detail::bfs_path(adj, 1, t);
    if (static_cast<int>(path.size()) > target) {
      // can only happen in a path component: join its endpoints and reroute
      std::vector<int> ends;
      for (int v : cc.members[c1])
        if (adj[v].size() <= 1) ends.push_back(v);
      if (ends.size() != 2) throw std::logic_error("select_odd_set: long route inside a cycle component");
      adj[ends[0]].push_back(ends[1]);
      adj[ends[1]].push_back(ends[0]);
      placement.virtual_edge = {ends[0], ends[1]};
      path = detail::bfs_path(adj, 1, t);
    }
    if (static_cast<int>(path.size()) > target)
      throw std::logic_error("select_odd_set: no route from 1 to t fits in O");
    for (int v : path) take(v);
    // extend the included path inside this component while room remains;
    // only path endpoints (at most one included neighbor) may extend
    while (static_cast<int>(order.size()) < target) {
      int pick = -1;
      for (int v : order) {
        if (cc.comp_of[v] != c1) continue;
        int included_nbrs = 0;
        for (int w : adj[v])
          if (taken[w]) ++included_nbrs;
        if (included_nbrs > 1) continue;
        for (int u : adj[v])
          if (!taken[u] && (pick == -1 || u < pick)) pick = u;
      }
      if (pick == -1) break;
      take(pick);
    }
  }

  // remaining components, smallest first; favor components whose lowest
  // thread already sits on an O slot, then lowest thread index
  {
    std::vector<int> rest;
    for (int id = 0; id < static_cast<int>(cc.members.size()); ++id)
      if (!taken[cc.members[id].front()]) rest.push_back(id);
    auto slot_friendly = [&](int id) {
      int v = cc.members[id].front();
      return (v % 2 == 1 || v == t) ? 0 : 1;
    };
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
      auto ka = std::tuple(cc.members[a].size(), slot_friendly(a), cc.members[a].front());
      auto kb = std::tuple(cc.members[b].size(), slot_friendly(b), cc.members[b].front());
      return ka < kb;
    });
    for (int id : rest) {
      int room = target - static_cast<int>(order.size());
      if (room == 0) break;
      const auto& mem = cc.members[id];
      if (static_cast<int>(mem.size()) <= room) {
        for (int v : mem) take(v);
      } else {
        for (int v : detail::grow_path(adj, taken, mem.front(), room)) take(v);
        break;
      }
    }
  }
  if (static_cast<int>(order.size()) != target) throw std::logic_error("select_odd_set: O has the wrong size");

  placement.members = order;
  std::sort(placement.members.begin(), placement.members.end());

  // exposure audit: threads of O with conflict-neighbors outside O
  std::vector<std::pair<int, int>> boundary;  // (thread, outside count)
  for (int v : placement.members) {
    int outside = 0;
    for (int u : adj[v])
      if (!taken[u]) ++outside;
    if (outside > 0) boundary.emplace_back(v, outside);
  }
  if (boundary.size() > 2 || (boundary.size() == 2 && (boundary[0].second > 1 || boundary[1].second > 1)))
    throw std::logic_error("select_odd_set: O exposes more conflict boundary than a path allows");

  // slots: odd positions plus t; in the pre-placed case below, t-2 swaps in
  // for t-1
  placement.thread_at.assign(t + 1, 0);
  placement.thread_at[1] = 1;
  placement.thread_at[t] = t;

  std::vector<int> internal;  // boundary threads other than 1 and t
  bool special_end = false;   // is 1 or t exposed?
  for (auto [v, cnt] : boundary) {
    if (v == 1 || v == t)
      special_end = true;
    else
      internal.push_back(v);
  }

  std::vector<int> slots;
  for (int j = 3; j <= t - 1; j += 2) slots.push_back(j);
  bool preplaced_even = false;

  if (internal.size() == 1 && special_end) {
    int i = internal[0];
    placement.thread_at[t - 2] = i;
    if (t % 2 == 0) preplaced_even = true;  // slot t-2 is even: matching skips it
    slots.erase(std::remove(slots.begin(), slots.end(), t - 2), slots.end());
    if (preplaced_even) slots.erase(std::remove(slots.begin(), slots.end(), t - 1), slots.end());
  } else if (internal.size() == 1) {
    placement.thread_at[3] = internal[0];
    slots.erase(slots.begin());  // slot 3
  } else if (internal.size() == 2) {
    placement.thread_at[3] = std::min(internal[0], internal[1]);
    placement.thread_at[5] = std::max(internal[0], internal[1]);
    slots.erase(std::remove_if(slots.begin(), slots.end(), [](int j) { return j == 3 || j == 5; }), slots.end());
  }

  std::vector<int> pool;
  for (int v : placement.members)
    if (std::find(placement.thread_at.begin(), placement.thread_at.end(), v) == placement.thread_at.end())
      pool.push_back(v);
  std::sort(pool.begin(), pool.end());

  auto fill_constrained = [&](int slot, auto admissible) {
    if (std::find(slots.begin(), slots.end(), slot) == slots.end()) return;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (admissible(pool[i])) {
        placement.thread_at[slot] = pool[i];
        pool.erase(pool.begin() + i);
        slots.erase(std::remove(slots.begin(), slots.end(), slot), slots.end());
        return;
      }
    throw std::logic_error("select_odd_set: no admissible thread for constrained slot " + std::to_string(slot));
  };

  if (t % 2 == 0 && !preplaced_even) {
    // slot t-1 sits next to slot t and the right end edge
    fill_constrained(t - 1, [&](int cand) {
      if (threads.conflict(cand, t)) return false;
      if (threads.right_end_color && threads.uses_color(cand, *threads.right_end_color)) return false;
      return true;
    });
  }
  if (preplaced_even) {
    // slot t-3 sits next to the pre-placed thread at t-2
    int at_t2 = placement.thread_at[t - 2];
    fill_constrained(t - 3, [&](int cand) { return !threads.conflict(cand, at_t2); });
  }
  for (std::size_t i = 0; i < slots.size(); ++i) placement.thread_at[slots[i]] = pool[i];

  return placement;
}

/// Bipartite compatibility of the still-unplaced threads against the open
/// slots: a thread fits a slot when it avoids the colors of both placed
/// neighbors and, on the outermost open slots, the end-edge colors.
struct PositionGraph {
  std::vector<int> slots;    // open positions, ascending
  std::vector<int> threads;  // unplaced threads, ascending
  std::vector<std::vector<char>> edge;  // [slot index][thread index]

  int degree_of_slot(int si) const {
    int d = 0;
    for (char e : edge[si]) d += e;
    return d;
  }
};

inline PositionGraph build_position_graph(const BunchThreads& threads, const OddPlacement& placement) {
  int t = threads.t;
  PositionGraph h;
  for (int j = 2; j <= t - 1; ++j)
    if (placement.thread_at[j] == 0) h.slots.push_back(j);
  for (int i = 1; i <= t; ++i)
    if (std::find(placement.thread_at.begin(), placement.thread_at.end(), i) == placement.thread_at.end())
      h.threads.push_back(i);
  if (h.slots.size() != h.threads.size())
    throw std::logic_error("build_position_graph: slot and thread counts differ");

  h.edge.assign(h.slots.size(), std::vector<char>(h.threads.size(), 0));
  for (std::size_t si = 0; si < h.slots.size(); ++si) {
    int j = h.slots[si];
    for (std::size_t ti = 0; ti < h.threads.size(); ++ti) {
      int cand = h.threads[ti];
      bool ok = true;
      for (int nb : {j - 1, j + 1}) {
        if (nb < 1 || nb > t) continue;
        int occupant = placement.thread_at[nb];
        if (occupant != 0 && threads.conflict(cand, occupant)) ok = false;
      }
      if (j == 2 && threads.left_end_color && threads.uses_color(cand, *threads.left_end_color)) ok = false;
      if (j == t - 1 && threads.right_end_color && threads.uses_color(cand, *threads.right_end_color)) ok = false;
      h.edge[si][ti] = ok;
    }
  }
  return h;
}

/// Augmenting-path maximum matching; empty result when no perfect matching
/// exists (a Hall violation).
inline std::optional<std::vector<std::pair<int, int>>> perfect_matching(const PositionGraph& h) {
  int ns = static_cast<int>(h.slots.size());
  int nt = static_cast<int>(h.threads.size());
  std::vector<int> match_thread(nt, -1);  // thread index -> slot index
  std::vector<int> match_slot(ns, -1);

  std::vector<char> visited(nt, 0);
  std::function<bool(int)> augment = [&](int si) -> bool {
    for (int ti = 0; ti < nt; ++ti) {
      if (!h.edge[si][ti] || visited[ti]) continue;
      visited[ti] = 1;
      if (match_thread[ti] == -1 || augment(match_thread[ti])) {
        match_thread[ti] = si;
        match_slot[si] = ti;
        return true;
      }
    }
    return false;
  };

  for (int si = 0; si < ns; ++si) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(si)) return std::nullopt;
  }
  std::vector<std::pair<int, int>> out;
  for (int si = 0; si < ns; ++si) out.emplace_back(h.slots[si], h.threads[match_slot[si]]);
  return out;
}

/// Rewrite the thread edges of g according to a full slot -> thread map,
/// keeping each pair's parent sides.
inline EdgeColoring apply_thread_order(const PlaneGraph& g, const Bunch& b, const BunchThreads& threads,
                                       const EdgeColoring& c, const std::vector<int>& thread_at) {
  EdgeColoring out = c;
  for (int j = 1; j <= threads.t; ++j) {
    int thr = thread_at[j];
    int x = b.bunch_vertices[j - 1];
    out.set(g, b.parent_a, x, threads.pair[thr].first);
    out.set(g, x, b.parent_b, threads.pair[thr].second);
  }
  return out;
}

/// Greedy completion of the horizontal edges, left to right: each one avoids
/// every color on the thread and path edges of the four surrounding bunch
/// positions, at most 12 colors, so 13 suffice.
inline EdgeColoring color_horizontals(const PlaneGraph& g, const Bunch& b, const EdgeColoring& c, int k) {
  if (k < 13) throw std::invalid_argument("color_horizontals: palette must hold at least 13 colors");
  EdgeColoring out = c;
  out.palette = std::max(out.palette, k);
  auto seq = b.sequence();
  int t = b.length();
  auto color_of = [&](int a, int bb) -> int {
    auto id = g.try_edge_index(a, bb);
    return id ? out.by_edge[*id] : 0;
  };
  for (int i = 1; i <= t - 1; ++i) {
    auto id = g.try_edge_index(seq[i], seq[i + 1]);
    if (!id) continue;
    std::vector<char> forbidden(k + 1, 0);
    for (int w = i - 1; w <= i + 2; ++w) {
      if (w < 0 || w > t + 1) continue;
      int fc1 = color_of(b.parent_a, seq[w]);
      int fc2 = color_of(b.parent_b, seq[w]);
      if (fc1 > 0 && fc1 <= k) forbidden[fc1] = 1;
      if (fc2 > 0 && fc2 <= k) forbidden[fc2] = 1;
    }
    for (int w = i - 2; w <= i + 2; ++w) {
      if (w < 0 || w + 1 > t + 1) continue;
      int fc = color_of(seq[w], seq[w + 1]);
      if (fc > 0 && fc <= k) forbidden[fc] = 1;
    }
    int pick = 0;
    for (int col = 1; col <= k; ++col)
      if (!forbidden[col]) {
        pick = col;
        break;
      }
    if (pick == 0) throw std::logic_error("color_horizontals: more than k-1 colors forbidden");
    out.by_edge[*id] = pick;
  }
  return out;
}

struct RethreadTrace {
  OddPlacement placement;
  std::vector<int> final_order;  // slot -> thread
  int conflict_edges = 0;
};

/// Seeded acyclic coloring of a bunch gadget with its horizontal edges left
/// uncolored, by rejection sampling over random proper assignments.
template <typename RngT>
inline std::optional<EdgeColoring> random_bunch_coloring(const PlaneGraph& g, const Bunch& b, int k,
                                                         RngT& rng, int attempts = 500) {
  auto seq = b.sequence();
  std::vector<char> is_horizontal(g.edge_count(), 0);
  for (int i : horizontal_positions(g, b))
    is_horizontal[g.edge_index(b.bunch_vertices[i - 1], b.bunch_vertices[i])] = 1;

  for (int round = 0; round < attempts; ++round) {
    EdgeColoring c(g, k);
    auto shuffled = [&]() {
      std::vector<int> cols(k);
      for (int i = 0; i < k; ++i) cols[i] = i + 1;
      for (int i = k - 1; i > 0; --i) std::swap(cols[i], cols[rng.below(i + 1)]);
      return cols;
    };
    std::vector<int> top = shuffled(), bottom = shuffled();
    bool ok = g.degree(b.parent_a) <= k && g.degree(b.parent_b) <= k;
    if (!ok) return std::nullopt;
    {
      int i = 0;
      for (int u : g.neighbors(b.parent_a)) c.set(g, b.parent_a, u, top[i++]);
      i = 0;
      for (int u : g.neighbors(b.parent_b)) {
        int e = g.edge_index(b.parent_b, u);
        if (c.by_edge[e] == 0) c.by_edge[e] = bottom[i];
        ++i;
      }
    }
    // remaining edges of the gadget: end edges and any edges not at a parent
    for (int e = 0; e < g.edge_count(); ++e) {
      if (is_horizontal[e] || c.by_edge[e] != 0) continue;
      const Edge& ed = g.edges()[e];
      std::vector<char> used(k + 1, 0);
      for (int col : seen_colors(g, c, ed.u)) used[col] = 1;
      for (int col : seen_colors(g, c, ed.v)) used[col] = 1;
      std::vector<int> open;
      for (int col = 1; col <= k; ++col)
        if (!used[col]) open.push_back(col);
      if (open.empty()) {
        ok = false;
        break;
      }
      c.by_edge[e] = open[rng.below(static_cast<int>(open.size()))];
    }
    if (!ok) continue;
    if (verify_acyclic_partial(g, c).ok) return c;
  }
  return std::nullopt;
}

/// Full pipeline: reorder the threads of a long bunch so neighbors share no
/// color and the outermost threads avoid the end-edge colors, then color the
/// horizontal edges greedily.  Input: an acyclic coloring of g with exactly
/// the bunch's horizontal edges uncolored.
inline EdgeColoring rethread_bunch(const PlaneGraph& g, const Bunch& b, const EdgeColoring& c, int k,
                                   RethreadTrace* trace = nullptr) {
  int t = b.length();
  if (t < 11) throw std::invalid_argument("rethread_bunch: bunch length below 11");
  if (k < 13) throw std::invalid_argument("rethread_bunch: palette must hold at least 13 colors");
  {
    std::vector<char> is_horizontal(g.edge_count(), 0);
    for (int i : horizontal_positions(g, b))
      is_horizontal[g.edge_index(b.bunch_vertices[i - 1], b.bunch_vertices[i])] = 1;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (is_horizontal[e] && c.by_edge[e] != 0)
        throw std::invalid_argument("rethread_bunch: horizontal edges must be uncolored on input");
      if (!is_horizontal[e] && c.by_edge[e] == 0)
        throw std::invalid_argument("rethread_bunch: input must color every non-horizontal edge");
    }
  }
  {
    AcyclicityReport rep = verify_acyclic_partial(g, c);
    if (!rep.ok)
      throw std::invalid_argument("rethread_bunch: input coloring not acyclic: " + rep.violation.describe());
  }

  BunchThreads threads = extract_threads(g, b, c);
  ThreadConflictGraph conf = build_conflict_graph(threads);
  OddPlacement placement = select_odd_set(conf, threads);
  PositionGraph h = build_position_graph(threads, placement);
  auto matching = perfect_matching(h);
  if (!matching) throw std::logic_error("rethread_bunch: no perfect matching in the position graph");

  std::vector<int> final_order = placement.thread_at;
  for (auto [slot, thr] : matching.value()) final_order[slot] = thr;

  // reorder invariants: adjacent slots share no color; outermost threads
  // avoid the end-edge colors
  for (int j = 1; j + 1 <= t; ++j)
    if (threads.conflict(final_order[j], final_order[j + 1]))
      throw std::logic_error("rethread_bunch: adjacent slots still share a color");
  if (threads.left_end_color && threads.uses_color(final_order[2], *threads.left_end_color))
    throw std::logic_error("rethread_bunch: slot 2 clashes with the left end edge");
  if (threads.right_end_color && threads.uses_color(final_order[t - 1], *threads.right_end_color))
    throw std::logic_error("rethread_bunch: slot t-1 clashes with the right end edge");

  EdgeColoring reordered = apply_thread_order(g, b, threads, c, final_order);
  EdgeColoring full = color_horizontals(g, b, reordered, k);

  if (trace) {
    trace->placement = placement;
    trace->final_order = final_order;
    for (int i = 1; i <= conf.t; ++i) trace->conflict_edges += conf.degree(i);
    trace->conflict_edges /= 2;
  }
  AcyclicityReport rep = verify_acyclic(g, full);
  if (!rep.ok) throw std::logic_error("rethread_bunch: output not acyclic: " + rep.violation.describe());
  return full;
}

}  // namespace aec
