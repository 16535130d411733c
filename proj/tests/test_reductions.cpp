#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aec/generators.hpp"
#include "aec/reductions.hpp"

using namespace aec;

namespace {

// Star-of-stars host for the private-neighbor extension: pivot 0, members of
// W first among its neighbors, then filler neighbors; every W member owns a
// chain of outer targets.
struct ExtensionFixture {
  PlaneGraph graph;
  EdgeColoring coloring;
  std::vector<int> w_set;
};

// pivot with W = {w1, w2}; w2's far edge carries `w2_far`, the two blockers
// at x1 carry 5 and 6
ExtensionFixture exchange_fixture(int w2_far, int k = 6) {
  // 0 = v, 1 = w1, 2 = w2, 3..4 fillers, 5 = x1, 6 = x2, 7..8 blockers, 9 = z
  std::vector<std::vector<int>> rot = {
      {1, 2, 3, 4}, {0, 5}, {0, 6}, {0}, {0}, {1, 7, 8}, {2, 9}, {5}, {5}, {6},
  };
  ExtensionFixture fx{PlaneGraph::build_from_rotation(std::move(rot)), EdgeColoring(), {1, 2}};
  fx.coloring = EdgeColoring(fx.graph, k);
  auto& c = fx.coloring;
  const PlaneGraph& g = fx.graph;
  c.set(g, 0, 2, 2);
  c.set(g, 0, 3, 3);
  c.set(g, 0, 4, 4);
  c.set(g, 2, 6, w2_far);
  c.set(g, 5, 7, 5);
  c.set(g, 5, 8, 6);
  c.set(g, 6, 9, 3);
  return fx;
}

// K_{2,m} ring: pivot 0, co-parent 1, spokes 2..m+1; bottoms[i] is the color
// of the co-parent edge of the i-th spoke (tops are 1..m in order).
PlaneGraph ring_graph(int m) {
  std::vector<std::vector<int>> rot(2);
  for (int i = 0; i < m; ++i) {
    rot[0].push_back(2 + i);
    rot[1].push_back(2 + (m - 1 - i));
    rot.push_back({0, 1});
  }
  return PlaneGraph::build_from_rotation(std::move(rot));
}

EdgeColoring ring_coloring(const PlaneGraph& g, int m, const std::vector<int>& bottoms, int k) {
  EdgeColoring c(g, k);
  for (int i = 0; i < m; ++i) {
    c.set(g, 0, 2 + i, i + 1);
    c.set(g, 1, 2 + i, bottoms[i]);
  }
  return c;
}

// pivot 0 with long all-2 bunches toward co-parents 1 and 2 plus `extras`
// private 2-paths; everything sized so the reduction regime holds
struct ReduceFixture {
  PlaneGraph graph;
  int pivot = 0;
  int k = 0;
};

ReduceFixture reduce_fixture(int t1, int t2, int extras) {
  int v = 0, w1 = 1, w2 = 2;
  std::vector<std::vector<int>> rot(3);
  int next = 3;
  auto add_fan = [&](int co, int len) {
    std::vector<int> ids;
    for (int i = 0; i < len; ++i) ids.push_back(next++);
    for (int id : ids) {
      rot[v].push_back(id);
      rot.push_back({v, co});
    }
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) rot[co].push_back(*it);
  };
  add_fan(w1, t1 + 2);
  add_fan(w2, t2 + 2);
  for (int i = 0; i < extras; ++i) {
    int p = next++;
    rot[v].push_back(p);
    rot.push_back({v});
    int z = next++;
    rot[p].push_back(z);
    rot.push_back({p});
  }
  ReduceFixture fx{PlaneGraph::build_from_rotation(std::move(rot)), v, 0};
  fx.k = std::max(fx.graph.degree(v), 2 * (t1 + 2) + 2);
  return fx;
}

Thresholds desk_thresholds(int big) {
  Thresholds th;
  th.big = big;
  return th;
}

}  // namespace

TEST_CASE("private-neighbor extension: direct path recolors one edge") {
  ExtensionFixture fx = exchange_fixture(/*w2_far=*/5);
  REQUIRE(verify_acyclic_partial(fx.graph, fx.coloring).ok);
  ExtendResult res = extend_private_neighbor(fx.graph, 0, fx.w_set, 100, fx.coloring, 6);
  REQUIRE(res.extended);
  CHECK(res.coloring.get(fx.graph, 0, 1) == 1);  // greedy start
  CHECK(res.coloring.get(fx.graph, 1, 5) == 2);  // direct: its owner never sees color 1
  CHECK(res.coloring.get(fx.graph, 2, 6) == 5);  // untouched
  CHECK(verify_acyclic(fx.graph, res.coloring).ok);
}

TEST_CASE("private-neighbor extension: blocked start forces the color exchange") {
  ExtensionFixture fx = exchange_fixture(/*w2_far=*/1);  // w2 sees the start color
  REQUIRE(verify_acyclic_partial(fx.graph, fx.coloring).ok);
  ExtendResult res = extend_private_neighbor(fx.graph, 0, fx.w_set, 100, fx.coloring, 6);
  REQUIRE(res.extended);
  CHECK(res.coloring.get(fx.graph, 0, 1) == 1);
  CHECK(res.coloring.get(fx.graph, 1, 5) == 2);  // placed after the exchange
  CHECK(res.coloring.get(fx.graph, 2, 6) == 5);  // the moved edge: two changes total
  CHECK(verify_acyclic(fx.graph, res.coloring).ok);
}

TEST_CASE("private-neighbor extension: starved safe set yields the counting certificate") {
  // pivot of full degree k: no free colors, and the lone safe candidate is
  // blocked at the target
  std::vector<std::vector<int>> rot = {
      {1, 2, 3, 4, 5, 6}, {0, 7}, {0}, {0}, {0}, {0}, {0}, {1, 8}, {7},
  };
  PlaneGraph g = PlaneGraph::build_from_rotation(std::move(rot));
  int k = 6;
  EdgeColoring c(g, k);
  for (int i = 2; i <= 6; ++i) c.set(g, 0, i, i);
  c.set(g, 7, 8, 1);  // x1 sees the only candidate color
  REQUIRE(verify_acyclic_partial(g, c).ok);
  ExtendResult res = extend_private_neighbor(g, 0, {1}, 100, c, k);
  CHECK_FALSE(res.extended);
  CHECK(res.certificate.w_size == 1);
  CHECK(res.certificate.s1_size == 0);
  CHECK(res.certificate.counting_bound_ok);  // |W| <= q regime
}

TEST_CASE("private-neighbor extension: 25 seeded random hosts stay acyclic") {
  Rng rng(555);
  int extended = 0, certified = 0;
  for (int trial = 0; trial < 25; ++trial) {
    int wsize = 2 + rng.below(4);
    int fillers = 1 + rng.below(3);
    int targets_per_w = 1 + rng.below(3);  // degree <= 4
    std::vector<std::vector<int>> rot(1);
    std::vector<int> w_set;
    int next = 1;
    for (int i = 0; i < wsize; ++i) {
      int w = next++;
      rot[0].push_back(w);
      rot.push_back({0});
      w_set.push_back(w);
      for (int j = 0; j < targets_per_w; ++j) {
        int x = next++;
        rot[w].push_back(x);
        rot.push_back({w});
        int z = next++;  // one outer leaf per target
        rot[x].push_back(z);
        rot.push_back({x});
      }
    }
    for (int i = 0; i < fillers; ++i) {
      int f = next++;
      rot[0].push_back(f);
      rot.push_back({0});
    }
    PlaneGraph g = PlaneGraph::build_from_rotation(std::move(rot));
    int k = g.vertex_count() + 2;
    EdgeColoring c(g, k);
    // color everything except w1's edges; the host is a tree, so any proper
    // assignment is acyclic
    int w1 = w_set.front();
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges()[e];
      if (ed.u == w1 || ed.v == w1) continue;
      std::vector<char> used(k + 1, 0);
      for (int col : seen_colors(g, c, ed.u)) used[col] = 1;
      for (int col : seen_colors(g, c, ed.v)) used[col] = 1;
      std::vector<int> open;
      for (int col = 1; col <= k; ++col)
        if (!used[col]) open.push_back(col);
      c.by_edge[e] = open[rng.below(static_cast<int>(open.size()))];
    }
    REQUIRE(verify_acyclic_partial(g, c).ok);
    ExtendResult res = extend_private_neighbor(g, 0, w_set, 120, c, k);
    if (res.extended) {
      CHECK(verify_acyclic(g, res.coloring).ok);
      ++extended;
    } else {
      CHECK(res.certificate.counting_bound_ok);
      ++certified;
    }
  }
  CHECK(extended + certified == 25);
  CHECK(extended >= 20);  // rich palettes: extension should dominate
}

TEST_CASE("good-color collection: ring pivot loses only the anchor colors") {
  int m = 13;
  PlaneGraph g = ring_graph(m);
  // bottoms shifted by one: no crossed pairs
  std::vector<int> bottoms;
  for (int i = 1; i <= m; ++i) bottoms.push_back(i % m + 1);
  EdgeColoring c = ring_coloring(g, m, bottoms, m);
  REQUIRE(verify_acyclic(g, c).ok);

  Thresholds th = desk_thresholds(10);
  auto bunches = find_bunches(g, th);
  REQUIRE(bunches.size() == 1);
  CHECK(bunches[0].length() == m - 2);

  ReductionState st = collect_good_colors(g, 0, c, bunches, th, m);
  CHECK(st.nf == 2);  // the two ring anchors
  CHECK(st.ns == 0);
  CHECK(st.short_count == 0);
  CHECK(st.removed <= st.removal_budget());
  CHECK(st.removed <= 4);  // two anchors, at most alpha + one option each
  CHECK(st.good_count() >= m - 4);
}

TEST_CASE("good-color collection: per-neighbor removals stay within 5 each") {
  // pivot with one long bunch plus three private 2-vertex paths
  ReduceFixture fx = reduce_fixture(14, 11, 3);
  Thresholds th = desk_thresholds(10);
  int k = 20 + fx.graph.degree(0);
  ColorPlanarResult base = color_planar(fx.graph, k);
  REQUIRE(base.success);
  auto bunches = find_bunches(fx.graph, th);
  ReductionState st = collect_good_colors(fx.graph, 0, base.coloring, bunches, th, k);
  // 4 anchors + 3 private neighbors, each compact: alpha + at most one more
  CHECK(st.nf == 7);
  CHECK(st.removed <= 5 * st.nf);
  CHECK(st.good_count() >= k - 5 * st.nf);
  CHECK(st.removed <= st.removal_budget());
}

TEST_CASE("good-color collection: short bunch strips at most its length") {
  ReduceFixture fx = reduce_fixture(14, 3, 0);  // second bunch is short
  Thresholds th = desk_thresholds(5);           // its co-parent has degree 5
  int k = 2 * 16 + 4;
  ColorPlanarResult base = color_planar(fx.graph, k);
  REQUIRE(base.success);
  auto bunches = find_bunches(fx.graph, th);
  ReductionState st = collect_good_colors(fx.graph, 0, base.coloring, bunches, th, k);
  CHECK(st.short_count == 1);
  CHECK(st.short_bunches[0].length() == 3);
  // 4 anchors (<= 2 each) + one short bunch (<= 3)
  CHECK(st.removed <= 4 * 2 + 3);
  CHECK(st.removed <= st.removal_budget());
}

TEST_CASE("swap repair: two crossed thread pairs vanish after one swap") {
  int m = 13, k = 13;
  PlaneGraph g = ring_graph(m);
  // bottoms: transpositions (6 8) and (9 11), everything else one long cycle
  std::vector<int> bottoms = {2, 3, 4, 5, 7, 8, 10, 6, 11, 12, 9, 13, 1};
  EdgeColoring c = ring_coloring(g, m, bottoms, k);

  Thresholds th = desk_thresholds(10);
  auto bunches = find_bunches(g, th);
  ReductionState st = collect_good_colors(g, 0, c, bunches, th, k);
  REQUIRE(st.is_good(6));
  REQUIRE(st.is_good(9));

  // exactly two bicolored 4-cycles through the pivot before repair
  int bad_before = 0;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (find_bicolored_cycle(g, c, a, b)) ++bad_before;
  REQUIRE(bad_before == 2);

  ReduceResult rep = swap_repair(g, st, c);
  REQUIRE(rep.status == ReduceResult::Status::ok);
  CHECK(rep.message.empty());
  CHECK(verify_acyclic(g, rep.coloring).ok);
  // one swap: exactly two pivot edges changed
  int changed = 0;
  for (int e = 0; e < g.edge_count(); ++e)
    if (rep.coloring.by_edge[e] != c.by_edge[e]) ++changed;
  CHECK(changed == 2);
}

TEST_CASE("swap repair: clean input is returned untouched") {
  int m = 13, k = 13;
  PlaneGraph g = ring_graph(m);
  std::vector<int> bottoms;
  for (int i = 1; i <= m; ++i) bottoms.push_back(i % m + 1);
  EdgeColoring c = ring_coloring(g, m, bottoms, k);
  Thresholds th = desk_thresholds(10);
  ReductionState st = collect_good_colors(g, 0, c, find_bunches(g, th), th, k);
  ReduceResult rep = swap_repair(g, st, c);
  REQUIRE(rep.status == ReduceResult::Status::ok);
  CHECK(rep.coloring.by_edge == c.by_edge);
}

TEST_CASE("swap repair: one crossed pair fixed by relocation") {
  int m = 13, k = 13;
  PlaneGraph g = ring_graph(m);
  // single transposition (6 8); the rest one long cycle
  std::vector<int> bottoms = {2, 3, 4, 5, 7, 8, 9, 6, 10, 11, 12, 13, 1};
  EdgeColoring c = ring_coloring(g, m, bottoms, k);
  REQUIRE(is_proper(g, c));
  Thresholds th = desk_thresholds(10);
  ReductionState st = collect_good_colors(g, 0, c, find_bunches(g, th), th, k);

  int bad_before = 0;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (find_bicolored_cycle(g, c, a, b)) ++bad_before;
  REQUIRE(bad_before == 1);

  ReduceResult rep = swap_repair(g, st, c);
  REQUIRE(rep.status == ReduceResult::Status::ok);
  CHECK(verify_acyclic(g, rep.coloring).ok);
}

TEST_CASE("swap repair: 20 seeded random ring instances") {
  Rng rng(808);
  int done = 0;
  while (done < 20) {
    int m = 13 + rng.below(6);
    int k = m;
    PlaneGraph g = ring_graph(m);
    // random derangement bottoms
    std::vector<int> bottoms(m);
    for (;;) {
      for (int i = 0; i < m; ++i) bottoms[i] = i + 1;
      for (int i = m - 1; i > 0; --i) std::swap(bottoms[i], bottoms[rng.below(i + 1)]);
      bool ok = true;
      for (int i = 0; i < m; ++i) ok = ok && bottoms[i] != i + 1;
      if (ok) break;
    }
    EdgeColoring c = ring_coloring(g, m, bottoms, k);
    Thresholds th = desk_thresholds(10);
    ReductionState st = collect_good_colors(g, 0, c, find_bunches(g, th), th, k);
    long long T = static_cast<long long>(st.long_bunches.size() + st.short_bunches.size());
    REQUIRE(g.degree(0) - T * T - (st.k - st.good_count()) > 0);  // availability, exactly

    ReduceResult rep = swap_repair(g, st, c);
    if (rep.status != ReduceResult::Status::ok) continue;  // crossed pair on a removed color
    CHECK(verify_acyclic(g, rep.coloring).ok);
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("big-vertex reduction: full pipeline on two-bunch pivots") {
  Rng rng(99);
  int done = 0;
  for (int trial = 0; trial < 24; ++trial) {
    int t1 = 12 + rng.below(7);
    int t2 = 11 + rng.below(t1 - 10);
    int extras = rng.below(3);
    ReduceFixture fx = reduce_fixture(t1, t2, extras);
    Thresholds th = desk_thresholds(10);
    REQUIRE(fx.graph.degree(fx.pivot) >= th.big);
    ReduceResult res = reduce_big_vertex(fx.graph, fx.pivot, th, fx.k);
    CAPTURE(t1);
    CAPTURE(t2);
    CAPTURE(extras);
    CAPTURE(res.message);
    REQUIRE(res.status == ReduceResult::Status::ok);
    CHECK(verify_acyclic(res.working_graph, res.coloring).ok);
    ++done;
  }
  CHECK(done == 24);
}

TEST_CASE("big-vertex reduction: shortcut fires when the co-parent color sits on a kept pivot edge") {
  // base coloring crafted so the greedy wx color (2) is already on the pivot
  // edge to the second bunch vertex and gets excluded from the good colors by
  // the far fan's anchor options
  ReduceFixture fx = reduce_fixture(12, 11, 0);
  const PlaneGraph& g = fx.graph;
  int k = fx.k;  // 30
  REQUIRE(k == 30);
  EdgeColoring base(g, k);

  // fan toward co-parent 1: vertices 3..16, tops 1..13, bottoms shifted so no
  // pair is crossed and color 2 never reaches the co-parent
  std::vector<int> fan1 = {3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  std::vector<int> tops1 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  std::vector<int> bots1 = {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 1, 3, 4};
  for (std::size_t i = 0; i < fan1.size(); ++i) {
    base.set(g, 0, fan1[i], tops1[i]);
    base.set(g, 1, fan1[i], bots1[i]);
  }
  // vertex 4 is the deleted bunch vertex: both its edges stay open

  // fan toward co-parent 2: vertices 17..29, tops 14..26
  std::vector<int> bots2 = {2, 14, 6, 7, 8, 9, 10, 11, 12, 13, 16, 17, 5};
  for (int i = 0; i < 13; ++i) {
    base.set(g, 0, 17 + i, 14 + i);
    base.set(g, 2, 17 + i, bots2[i]);
  }
  REQUIRE(verify_acyclic_partial(g, base).ok);

  Thresholds th = desk_thresholds(10);
  ReduceResult res = reduce_big_vertex(g, 0, th, k, base);
  CAPTURE(res.message);
  REQUIRE(res.status == ReduceResult::Status::ok);
  CHECK(res.used_shortcut);
  CHECK(verify_acyclic(res.working_graph, res.coloring).ok);
}

TEST_CASE("big-vertex reduction: the pigeonhole path dominates seeded runs") {
  Rng rng(99);
  ReduceFixture fx = reduce_fixture(14, 12, 1);
  Thresholds th = desk_thresholds(10);
  ReduceResult res = reduce_big_vertex(fx.graph, fx.pivot, th, fx.k);
  REQUIRE(res.status == ReduceResult::Status::ok);
  CHECK_FALSE(res.used_shortcut);
}

TEST_CASE("big-vertex reduction: regime failures are reported, not thrown") {
  // no long bunch at all: a short two-bunch pivot
  ReduceFixture fx = reduce_fixture(11, 11, 0);
  Thresholds th = desk_thresholds(10);
  th.long_bunch_min = 30;  // declare everything short
  th.check();
  ReduceResult res = reduce_big_vertex(fx.graph, fx.pivot, th, fx.k);
  CHECK(res.status == ReduceResult::Status::regime);
  CHECK(res.message == "pivot has no long bunch");

  CHECK_THROWS_AS(reduce_big_vertex(fx.graph, 5, desk_thresholds(10), fx.k), std::invalid_argument);
}

TEST_CASE("driver: icosahedron at k=25 and dodecahedron at k=15") {
  PlaneGraph ico = icosahedron();
  ColorPlanarResult r1 = color_planar(ico, 25);
  REQUIRE(r1.success);
  CHECK(verify_acyclic(ico, r1.coloring).ok);

  PlaneGraph dod = dodecahedron();
  ColorPlanarResult r2 = color_planar(dod, 15);
  REQUIRE(r2.success);
  CHECK(verify_acyclic(dod, r2.coloring).ok);
}

TEST_CASE("driver: small star goes through the exact-search floor") {
  PlaneGraph star = star_graph(6);
  ColorPlanarResult r = color_planar(star, 6);
  REQUIRE(r.success);
  CHECK(verify_acyclic(star, r.coloring).ok);
}

TEST_CASE("driver: cut vertices split and merge") {
  // two K4 blocks sharing vertex 0 forces the block path
  PlaneGraph k4 = complete_graph_k4();
  std::vector<std::vector<int>> rot(7);
  for (int v = 0; v < 4; ++v)
    for (int u : k4.neighbors(v)) rot[v].push_back(u);
  // second block on {0, 4, 5, 6}
  rot[0].push_back(4);
  rot[0].push_back(5);
  rot[0].push_back(6);
  rot[4] = {0, 5, 6};
  rot[5] = {0, 6, 4};
  rot[6] = {0, 4, 5};
  PlaneGraph g = PlaneGraph::build_from_rotation(std::move(rot));
  REQUIRE(g.cut_vertices() == std::vector<int>{0});
  ColorPlanarResult r = color_planar(g, 30);
  REQUIRE(r.success);
  CHECK(verify_acyclic(g, r.coloring).ok);
}

TEST_CASE("driver: 40 random planar graphs succeed at 5 * max degree") {
  Rng rng(1234);
  for (int i = 0; i < 40; ++i) {
    PlaneGraph g = random_planar(6 + rng.below(40), rng.next(),
                                 {.thin_fraction = 0.3, .keep_two_connected = (i % 2 == 0)});
    ColorPlanarResult r = color_planar(g, 5 * g.max_degree());
    CAPTURE(g.vertex_count());
    REQUIRE(r.success);
    CHECK(verify_acyclic(g, r.coloring).ok);
  }
}

TEST_CASE("driver: failure names the stuck vertex") {
  PlaneGraph ico = icosahedron();
  ColorPlanarResult r = color_planar(ico, 10);  // below every degree sum of 25
  CHECK_FALSE(r.success);
  CHECK(r.stuck_vertex >= 0);
  CHECK(!r.message.empty());
}
