#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "aec/generators.hpp"
#include "aec/plane_graph.hpp"

using namespace aec;

namespace {

std::map<int, int> face_length_census(const PlaneGraph& g) {
  std::map<int, int> census;
  for (int f = 0; f < g.face_count(); ++f) ++census[g.face_length(f)];
  return census;
}

std::map<int, int> degree_census(const PlaneGraph& g) {
  std::map<int, int> census;
  for (int v = 0; v < g.vertex_count(); ++v) ++census[g.degree(v)];
  return census;
}

}  // namespace

TEST_CASE("icosahedron and dodecahedron are the expected solids") {
  PlaneGraph ico = icosahedron();
  CHECK(ico.vertex_count() == 12);
  CHECK(ico.edge_count() == 30);
  CHECK(ico.face_count() == 20);
  CHECK(face_length_census(ico) == std::map<int, int>{{3, 20}});
  CHECK(degree_census(ico) == std::map<int, int>{{5, 12}});
  CHECK(validate(ico).two_connected);

  PlaneGraph dod = dodecahedron();
  CHECK(dod.vertex_count() == 20);
  CHECK(dod.edge_count() == 30);
  CHECK(dod.face_count() == 12);
  CHECK(face_length_census(dod) == std::map<int, int>{{5, 12}});
  CHECK(degree_census(dod) == std::map<int, int>{{3, 20}});
}

TEST_CASE("truncated dodecahedron: 60 vertices, 90 edges, 12 decagons + 20 triangles") {
  PlaneGraph g = truncated_dodecahedron();
  CHECK(g.vertex_count() == 60);
  CHECK(g.edge_count() == 90);
  CHECK(g.face_count() == 32);
  CHECK(face_length_census(g) == std::map<int, int>{{3, 20}, {10, 12}});
  CHECK(degree_census(g) == std::map<int, int>{{3, 60}});
  CHECK(g.vertex_count() - g.edge_count() + g.face_count() == 2);
  CHECK(validate(g).two_connected);
}

TEST_CASE("stacked construction: triangulation with the stated degree census") {
  for (int t = 1; t <= 3; ++t) {
    PlaneGraph g = borodin_construction(t);
    CAPTURE(t);
    ValidationReport rep = validate(g);
    CHECK(rep.two_connected);
    CHECK(rep.euler_ok);
    // plane triangulation
    for (int f = 0; f < g.face_count(); ++f) CHECK(g.face_length(f) == 3);
    CHECK(g.max_degree() == 5 * t + 10);

    // hub degree 5t+10 (12 hubs), subdivision vertices degree 4 (30t), original
    // corners degree 5 (60)
    auto census = degree_census(g);
    CHECK(census == std::map<int, int>{{4, 30 * t}, {5, 60}, {5 * t + 10, 12}});

    int min_deg = g.max_degree();
    for (int v = 0; v < g.vertex_count(); ++v) min_deg = std::min(min_deg, g.degree(v));
    CHECK(min_deg == 4);

    // every 5--vertex has exactly two max-degree neighbors
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) > 5) continue;
      int hubs = 0;
      for (int u : g.neighbors(v))
        if (g.degree(u) == g.max_degree()) ++hubs;
      CHECK(hubs == 2);
    }
  }
}

TEST_CASE("stacked construction with big threshold 25 at t=3: 30 bunches of length 3") {
  PlaneGraph g = borodin_construction(3);
  Thresholds th;
  th.big = 25;
  auto bunches = find_bunches(g, th);
  CHECK(bunches.size() == 30);
  for (const Bunch& b : bunches) {
    CHECK(b.length() == 3);
    CHECK(g.degree(b.parent_a) == 25);
    CHECK(g.degree(b.parent_b) == 25);
    std::string why;
    CHECK_MESSAGE(reverify_bunch(g, th, b, &why), why);
  }
}

TEST_CASE("construction rejects t = 0") {
  CHECK_THROWS_AS(borodin_construction(0), std::invalid_argument);
}

TEST_CASE("bunch gadget face pattern follows the degree sequence") {
  GadgetSpec spec;
  spec.t = 5;
  spec.degrees = {2, 2, 2, 2, 2};
  GadgetResult gr = bunch_gadget(spec);
  for (GapKind k : gr.bunch.gaps) CHECK(k == GapKind::quad);
  // all-2 bunch has no horizontal edges at all
  CHECK(gr.graph.edge_count() == 2 * (spec.t + 2));

  GadgetSpec four;
  four.t = 3;
  four.degrees = {4, 4, 4};
  GadgetResult g4 = bunch_gadget(four);
  for (GapKind k : g4.bunch.gaps) CHECK(k == GapKind::tri_pair);
  CHECK(validate(g4.graph).euler_ok);

  GadgetSpec bad;
  bad.t = 2;
  bad.degrees = {2, 4};  // a 4-vertex next to a bare 2-vertex has no horizontal support
  CHECK_THROWS_AS(bunch_gadget(bad), std::invalid_argument);
}

TEST_CASE("random planar generator is deterministic and always valid") {
  PlaneGraph a = random_planar(10, 1);
  PlaneGraph b = random_planar(10, 1);
  CHECK(a.rotation() == b.rotation());

  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    int n = 4 + rng.below(30);
    PlaneGraph g = random_planar(n, rng.next(), {.thin_fraction = 0.3, .keep_two_connected = true});
    CAPTURE(n);
    ValidationReport rep = validate(g);
    CHECK(rep.euler_ok);
    CHECK(rep.two_connected);
  }
}

TEST_CASE("generator outputs all pass validation") {
  for (auto g : {complete_graph_k4(), cube_graph(), icosahedron(), dodecahedron(), truncated_dodecahedron(),
                 borodin_construction(2), wheel_graph(20)}) {
    ValidationReport rep = validate(g);
    CHECK(rep.connected);
    CHECK(rep.euler_ok);
    CHECK(rep.simple);
  }
}
