#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aec/generators.hpp"
#include "aec/rethreading.hpp"

using namespace aec;

namespace {

// The worked length-12 instance: thread color pairs, end edges colored 4 and
// 9, conflict graph two hexagons {1..6} and {7..12}.
BunchThreads worked_threads() {
  BunchThreads th;
  th.t = 12;
  th.pair = {{0, 0}, {1, 2}, {2, 3}, {3, 4}, {4, 5},  {5, 6},   {6, 1},
             {7, 8}, {8, 9}, {9, 10}, {10, 11}, {11, 12}, {12, 7}};
  th.left_end_color = 4;
  th.right_end_color = 9;
  return th;
}

GadgetResult worked_gadget() {
  GadgetSpec spec;
  spec.t = 12;
  spec.degrees = {4, 3, 2, 2, 2, 3, 3, 2, 2, 2, 3, 4};
  spec.left_end_edge = true;
  spec.right_end_edge = true;
  return bunch_gadget(spec);
}

// Color the worked gadget with the published thread pairs plus fresh colors
// on the anchor threads; horizontal edges stay open.
EdgeColoring worked_coloring(const PlaneGraph& g, const Bunch& b, int k) {
  EdgeColoring c(g, k);
  BunchThreads th = worked_threads();
  auto seq = b.sequence();
  for (int i = 1; i <= 12; ++i) {
    c.set(g, b.parent_a, seq[i], th.pair[i].first);
    c.set(g, seq[i], b.parent_b, th.pair[i].second);
  }
  c.set(g, seq[0], seq[1], *th.left_end_color);
  c.set(g, seq[12], seq[13], *th.right_end_color);
  c.set(g, b.parent_a, seq[0], 13);
  c.set(g, b.parent_b, seq[0], 14);
  c.set(g, b.parent_a, seq[13], 14);
  c.set(g, b.parent_b, seq[13], 15);
  return c;
}

GadgetResult random_gadget(int t, Rng& rng) {
  GadgetSpec spec;
  spec.t = t;
  // any 0/1 chain of gap edges yields a consistent degree pattern
  std::vector<int> e(t + 2, 0);
  for (int i = 1; i <= t + 1; ++i) e[i] = rng.below(2);
  spec.degrees.resize(t);
  for (int i = 1; i <= t; ++i) spec.degrees[i - 1] = 2 + e[i] + e[i + 1];
  spec.left_end_edge = e[1] == 1;
  spec.right_end_edge = e[t + 1] == 1;
  return bunch_gadget(spec);
}

}  // namespace

TEST_CASE("strip_horizontals removes exactly the interior ladder edges") {
  GadgetResult gr = worked_gadget();
  auto seq = gr.bunch.sequence();
  PlaneGraph stripped = strip_horizontals(gr.graph, gr.bunch);
  CHECK(gr.graph.edge_count() - stripped.edge_count() == 3);  // x1x2, x6x7, x11x12
  CHECK(stripped.has_edge(seq[0], seq[1]));    // x0x1 kept
  CHECK(stripped.has_edge(seq[12], seq[13]));  // xt x_{t+1} kept
  CHECK_FALSE(stripped.has_edge(seq[1], seq[2]));
  CHECK_FALSE(stripped.has_edge(seq[6], seq[7]));
  CHECK_FALSE(stripped.has_edge(seq[11], seq[12]));

  GadgetSpec all2;
  all2.t = 11;
  GadgetResult flat = bunch_gadget(all2);
  PlaneGraph same = strip_horizontals(flat.graph, flat.bunch);
  CHECK(same.edge_count() == flat.graph.edge_count());  // nothing to strip

  GadgetSpec two;
  two.t = 2;
  two.degrees = {3, 3};  // one horizontal between the two bunch vertices
  GadgetResult pair = bunch_gadget(two);
  PlaneGraph cut = strip_horizontals(pair.graph, pair.bunch);
  CHECK(pair.graph.edge_count() - cut.edge_count() == 1);
}

TEST_CASE("conflict graph of the worked instance is two hexagons") {
  BunchThreads th = worked_threads();
  ThreadConflictGraph conf = build_conflict_graph(th);
  for (int i = 1; i <= 12; ++i) CHECK(conf.degree(i) == 2);
  // hexagon 1-2-3-4-5-6 and hexagon 7-8-9-10-11-12
  auto has = [&](int a, int b) {
    return std::find(conf.adj[a].begin(), conf.adj[a].end(), b) != conf.adj[a].end();
  };
  for (int i = 1; i <= 6; ++i) CHECK(has(i, i % 6 + 1));
  for (int i = 7; i <= 12; ++i) CHECK(has(i, (i - 6) % 6 + 7));
  CHECK_FALSE(has(1, 7));
  CHECK_FALSE(has(6, 12));
}

TEST_CASE("distinct colors everywhere: edgeless conflict graph") {
  BunchThreads th;
  th.t = 11;
  th.pair.assign(12, {0, 0});
  for (int i = 1; i <= 11; ++i) th.pair[i] = {i, i + 11};
  ThreadConflictGraph conf = build_conflict_graph(th);
  for (int i = 1; i <= 11; ++i) CHECK(conf.degree(i) == 0);

  OddPlacement placement = select_odd_set(conf, th);
  CHECK(placement.members == std::vector<int>{1, 3, 5, 7, 9, 11});
  for (int j = 1; j <= 11; j += 2) CHECK(placement.thread_at[j] == j);

  // no conflicts and no end edges: the position graph is complete bipartite
  PositionGraph h = build_position_graph(th, placement);
  for (std::size_t si = 0; si < h.slots.size(); ++si)
    CHECK(h.degree_of_slot(static_cast<int>(si)) == static_cast<int>(h.threads.size()));
}

TEST_CASE("improper input coloring is rejected by the conflict builder") {
  BunchThreads th;
  th.t = 11;
  th.pair.assign(12, {0, 0});
  for (int i = 1; i <= 11; ++i) th.pair[i] = {1, 2};  // wildly improper
  CHECK_THROWS_AS(build_conflict_graph(th), std::invalid_argument);
}

TEST_CASE("worked instance: O matches the published selection") {
  BunchThreads th = worked_threads();
  ThreadConflictGraph conf = build_conflict_graph(th);
  OddPlacement placement = select_odd_set(conf, th);
  CHECK(placement.members == std::vector<int>{1, 7, 8, 9, 10, 11, 12});
  CHECK(placement.thread_at[1] == 1);
  CHECK(placement.thread_at[12] == 12);
  CHECK_FALSE(placement.virtual_edge.has_value());
}

TEST_CASE("O size is ceil((t+1)/2) and the position graph sides match, all t in 11..30") {
  Rng rng(31337);
  for (int t = 11; t <= 30; ++t) {
    int k = std::max(13, t + 2) + 2;
    GadgetResult gr = random_gadget(t, rng);
    auto col = random_bunch_coloring(gr.graph, gr.bunch, k, rng);
    REQUIRE(col.has_value());
    BunchThreads th = extract_threads(gr.graph, gr.bunch, *col);
    ThreadConflictGraph conf = build_conflict_graph(th);
    OddPlacement placement = select_odd_set(conf, th);
    CAPTURE(t);
    CHECK(static_cast<int>(placement.members.size()) == (t + 2) / 2);
    PositionGraph h = build_position_graph(th, placement);
    CHECK(h.slots.size() == h.threads.size());
    CHECK(static_cast<int>(h.slots.size()) == (t - 1) / 2);
  }
}

TEST_CASE("single long path component: virtual edge reroutes the 1..t walk") {
  // conflicts i ~ i+1 via shared colors: one path component with 1 and t at
  // its two ends, whose direct route is longer than O can hold
  int t = 11;
  BunchThreads th;
  th.t = t;
  th.pair.assign(t + 1, {0, 0});
  for (int i = 1; i <= t; ++i) th.pair[i] = {i, i + 1};
  ThreadConflictGraph conf = build_conflict_graph(th);
  CHECK(conf.degree(1) == 1);
  CHECK(conf.degree(t) == 1);
  OddPlacement placement = select_odd_set(conf, th);
  CHECK(placement.virtual_edge.has_value());
  CHECK(static_cast<int>(placement.members.size()) == (t + 2) / 2);
  CHECK(placement.thread_at[1] == 1);
  CHECK(placement.thread_at[t] == t);
}

TEST_CASE("worked instance: published odd placement yields the published position graph") {
  BunchThreads th = worked_threads();
  OddPlacement fig;
  fig.members = {1, 7, 8, 9, 10, 11, 12};
  fig.thread_at.assign(13, 0);
  fig.thread_at[1] = 1;
  fig.thread_at[3] = 7;
  fig.thread_at[5] = 8;
  fig.thread_at[7] = 11;
  fig.thread_at[9] = 9;
  fig.thread_at[11] = 10;
  fig.thread_at[12] = 12;

  PositionGraph h = build_position_graph(th, fig);
  REQUIRE(h.slots == std::vector<int>{2, 4, 6, 8, 10});
  REQUIRE(h.threads == std::vector<int>{2, 3, 4, 5, 6});

  // slot 2 admits only thread 5; every other slot admits all five threads
  auto edge = [&](int slot, int thr) {
    int si = static_cast<int>(std::find(h.slots.begin(), h.slots.end(), slot) - h.slots.begin());
    int ti = static_cast<int>(std::find(h.threads.begin(), h.threads.end(), thr) - h.threads.begin());
    return h.edge[si][ti] != 0;
  };
  CHECK(edge(2, 5));
  for (int thr : {2, 3, 4, 6}) CHECK_FALSE(edge(2, thr));
  int total = 0;
  for (const auto& row : h.edge)
    for (char e : row) total += e;
  CHECK(total == 21);
  CHECK(h.degree_of_slot(0) == 1);

  auto matching = perfect_matching(h);
  REQUIRE(matching.has_value());
  for (auto [slot, thr] : *matching)
    if (slot == 2) CHECK(thr == 5);
}

TEST_CASE("perfect matching: complete bipartite succeeds, Hall violation fails") {
  PositionGraph full;
  full.slots = {2, 4, 6, 8, 10};
  full.threads = {1, 2, 3, 4, 5};
  full.edge.assign(5, std::vector<char>(5, 1));
  auto m = perfect_matching(full);
  REQUIRE(m.has_value());
  CHECK(m->size() == 5);

  PositionGraph starved;
  starved.slots = {2, 4};
  starved.threads = {1, 2};
  starved.edge = {{1, 0}, {1, 0}};  // two slots share one admissible thread
  CHECK_FALSE(perfect_matching(starved).has_value());
}

TEST_CASE("worked instance: published final order extends greedily to a verified coloring") {
  GadgetResult gr = worked_gadget();
  int k = 15;
  EdgeColoring c = worked_coloring(gr.graph, gr.bunch, k);
  REQUIRE(verify_acyclic_partial(gr.graph, c).ok);

  BunchThreads th = extract_threads(gr.graph, gr.bunch, c);
  std::vector<int> published = {0, 1, 5, 7, 2, 8, 3, 11, 6, 9, 4, 10, 12};
  EdgeColoring reordered = apply_thread_order(gr.graph, gr.bunch, th, c, published);
  CHECK(verify_acyclic_partial(gr.graph, reordered).ok);
  for (int j = 1; j + 1 <= 12; ++j) CHECK_FALSE(th.conflict(published[j], published[j + 1]));

  EdgeColoring full = color_horizontals(gr.graph, gr.bunch, reordered, k);
  CHECK(verify_acyclic(gr.graph, full).ok);
}

TEST_CASE("full pipeline on the worked gadget") {
  GadgetResult gr = worked_gadget();
  int k = 15;
  EdgeColoring c = worked_coloring(gr.graph, gr.bunch, k);
  RethreadTrace trace;
  EdgeColoring full = rethread_bunch(gr.graph, gr.bunch, c, k, &trace);
  CHECK(verify_acyclic(gr.graph, full).ok);
  CHECK(trace.placement.members == std::vector<int>{1, 7, 8, 9, 10, 11, 12});
  CHECK(trace.conflict_edges == 12);  // two hexagons
  // thread multiset preserved, sides preserved
  BunchThreads before = extract_threads(gr.graph, gr.bunch, c);
  auto seq = gr.bunch.sequence();
  std::vector<std::pair<int, int>> after;
  for (int i = 1; i <= 12; ++i)
    after.emplace_back(full.get(gr.graph, gr.bunch.parent_a, seq[i]),
                       full.get(gr.graph, seq[i], gr.bunch.parent_b));
  std::vector<std::pair<int, int>> original(before.pair.begin() + 1, before.pair.end());
  std::sort(after.begin(), after.end());
  std::sort(original.begin(), original.end());
  CHECK(after == original);
}

TEST_CASE("bunch of length 10 is refused") {
  Rng rng(4);
  GadgetResult gr = random_gadget(10, rng);
  auto col = random_bunch_coloring(gr.graph, gr.bunch, 14, rng);
  REQUIRE(col.has_value());
  CHECK_THROWS_AS(rethread_bunch(gr.graph, gr.bunch, *col, 14), std::invalid_argument);
}

TEST_CASE("palette below 13 is refused") {
  GadgetResult gr = worked_gadget();
  EdgeColoring c = worked_coloring(gr.graph, gr.bunch, 15);
  CHECK_THROWS_AS(color_horizontals(gr.graph, gr.bunch, c, 12), std::invalid_argument);
}

TEST_CASE("no horizontal edges: greedy completion is the identity") {
  GadgetSpec all2;
  all2.t = 11;
  GadgetResult gr = bunch_gadget(all2);
  Rng rng(14);
  auto col = random_bunch_coloring(gr.graph, gr.bunch, 13, rng);
  REQUIRE(col.has_value());
  EdgeColoring done = color_horizontals(gr.graph, gr.bunch, *col, 13);
  CHECK(done.by_edge == col->by_edge);
}

TEST_CASE("pipeline survives 60 seeded random gadgets") {
  Rng rng(777);
  int done = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int t = 11 + rng.below(20);
    int k = std::max(13, t + 2) + rng.below(3);
    GadgetResult gr = random_gadget(t, rng);
    auto col = random_bunch_coloring(gr.graph, gr.bunch, k, rng);
    REQUIRE(col.has_value());
    EdgeColoring full = rethread_bunch(gr.graph, gr.bunch, *col, k);
    CHECK(verify_acyclic(gr.graph, full).ok);
    ++done;
  }
  CHECK(done == 60);
}
