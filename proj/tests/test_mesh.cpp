#include <doctest.h>

#include <map>
#include <set>

#include "test_helpers.hpp"

using namespace idpack;

namespace {

// Orientation- and presentation-independent hinge certificate: endpoints,
// the apex pair, the end pair, and the side edge ids grouped into the two
// diagonal-invariant pairs.
struct HingeSignature {
  std::multiset<Index> endpoints, apexes, ends;
  std::multiset<std::multiset<Index>> side_pairs;
  bool operator==(const HingeSignature&) const = default;
};

HingeSignature signature(const Triangulation& tri, Index e) {
  const Hinge h = tri.hinge_at(e);
  HingeSignature s;
  s.endpoints = {h.vi, h.vj};
  s.apexes = {h.vk, h.vl};
  s.ends = {h.vi, h.vj};
  s.side_pairs = {{h.edge_ki, h.edge_lj}, {h.edge_il, h.edge_jk}};
  return s;
}

void check_invariants(const Triangulation& tri) {
  for (Index h = 0; h < tri.num_half_edges(); ++h) {
    CHECK(tri.twin(tri.twin(h)) == h);
    CHECK(tri.twin(h) != h);
    CHECK(tri.edge_of(h) == tri.edge_of(tri.twin(h)));
    CHECK(tri.origin(h) == tri.head(tri.twin(h)));
  }
  CHECK(3 * tri.num_faces() == 2 * tri.num_edges());
  CHECK(tri.euler_characteristic() % 2 == 0);
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("one-vertex torus builds with the expected counts") {
  const Triangulation t = fixtures::one_vertex_torus();
  CHECK(t.num_vertices() == 1);
  CHECK(t.num_edges() == 3);
  CHECK(t.num_faces() == 2);
  CHECK(t.euler_characteristic() == 0);
  check_invariants(t);
}

TEST_CASE("three-vertex sphere builds") {
  const Triangulation t = fixtures::three_vertex_sphere();
  CHECK(t.num_edges() == 3);
  CHECK(t.euler_characteristic() == 2);
  check_invariants(t);
}

TEST_CASE("two-vertex torus and genus-2 fixtures") {
  const Triangulation t2 = fixtures::two_vertex_torus();
  CHECK(t2.num_vertices() == 2);
  CHECK(t2.num_edges() == 6);
  CHECK(t2.num_faces() == 4);
  CHECK(t2.euler_characteristic() == 0);
  check_invariants(t2);

  const Triangulation g2 = fixtures::one_vertex_genus2();
  CHECK(g2.num_vertices() == 1);
  CHECK(g2.num_edges() == 9);
  CHECK(g2.num_faces() == 6);
  CHECK(g2.euler_characteristic() == -2);
  check_invariants(g2);
}

TEST_CASE("build rejects bad input") {
  // twin fixed point
  CHECK_THROWS_AS(Triangulation::build(1, {{0, 0, 0}, {0, 0, 0}},
                                       {0, 5, 3, 2, 4, 1}),
                  BadMatchingError);
  // not an involution
  CHECK_THROWS_AS(Triangulation::build(1, {{0, 0, 0}, {0, 0, 0}},
                                       {4, 5, 3, 2, 1, 0}),
                  BadMatchingError);
  // a twin pair traversing its edge in the same direction
  CHECK_THROWS_AS(Triangulation::build(
                      2, {{0, 1, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}},
                      {10, 11, 3, 2, 6, 7, 4, 5, 9, 8, 0, 1}),
                  BadMatchingError);
  // sphere gluing with all three corners collapsed onto one label
  CHECK_THROWS_AS(Triangulation::build(1, {{0, 0, 0}, {0, 0, 0}},
                                       {5, 4, 3, 2, 1, 0}),
                  EulerMismatchError);
  // dangling vertex
  CHECK_THROWS_AS(Triangulation::build(2, {{0, 0, 0}, {0, 0, 0}},
                                       {4, 5, 3, 2, 0, 1}),
                  DanglingVertexError);
}

TEST_CASE("hinge roles on the one-vertex torus collapse to vertex 0") {
  const Triangulation t = fixtures::one_vertex_torus();
  for (Index e = 0; e < t.num_edges(); ++e) {
    const Hinge h = t.hinge_at(e);
    CHECK(h.vi == 0);
    CHECK(h.vj == 0);
    CHECK(h.vk == 0);
    CHECK(h.vl == 0);
    CHECK(h.left_face != h.right_face);
  }
}

TEST_CASE("building twice from the same arrays gives identical output") {
  const Triangulation a = fixtures::two_vertex_torus();
  const Triangulation b =
      Triangulation::build(a.num_vertices(), a.faces(), a.twins());
  CHECK(a == b);
  for (Index e = 0; e < a.num_edges(); ++e) {
    const Hinge ha = a.hinge_at(e), hb = b.hinge_at(e);
    CHECK(ha.diagonal_he == hb.diagonal_he);
    CHECK(ha.vk == hb.vk);
    CHECK(ha.vi == hb.vi);
    CHECK(ha.vl == hb.vl);
    CHECK(ha.vj == hb.vj);
    CHECK(ha.edge_ki == hb.edge_ki);
    CHECK(ha.edge_il == hb.edge_il);
    CHECK(ha.edge_lj == hb.edge_lj);
    CHECK(ha.edge_jk == hb.edge_jk);
  }
}

TEST_CASE("hinge_at is deterministic and uses the lower half-edge as left") {
  const Triangulation t = fixtures::two_vertex_torus();
  for (Index e = 0; e < t.num_edges(); ++e) {
    const Hinge h1 = t.hinge_at(e);
    const Hinge h2 = t.hinge_at(e);
    CHECK(h1.diagonal_he == h2.diagonal_he);
    CHECK(h1.vk == h2.vk);
    CHECK(h1.diagonal_he ==
          std::min(h1.diagonal_he, t.twin(h1.diagonal_he)));
    // roles drawn from the vertex set
    for (Index v : {h1.vi, h1.vj, h1.vk, h1.vl}) CHECK(v < 2);
  }
}

TEST_CASE("flip preserves counts, chi and the edge id multiset") {
  const Triangulation t = fixtures::two_vertex_torus();
  for (Index e = 0; e < t.num_edges(); ++e) {
    const Triangulation f = t.flip(e);
    CHECK(f.num_vertices() == t.num_vertices());
    CHECK(f.num_edges() == t.num_edges());
    CHECK(f.num_faces() == t.num_faces());
    CHECK(f.euler_characteristic() == t.euler_characteristic());
    check_invariants(f);
    std::multiset<Index> ids1(t.edge_ids().begin(), t.edge_ids().end());
    std::multiset<Index> ids2(f.edge_ids().begin(), f.edge_ids().end());
    CHECK(ids1 == ids2);
  }
}

TEST_CASE("flip twice returns a combinatorially identical triangulation") {
  for (const Triangulation& t :
       {fixtures::one_vertex_torus(), fixtures::two_vertex_torus(),
        fixtures::one_vertex_genus2()}) {
    for (Index e = 0; e < t.num_edges(); ++e) {
      const Triangulation ff = t.flip(e).flip(e);
      for (Index k = 0; k < t.num_edges(); ++k) {
        CHECK(signature(ff, k) == signature(t, k));
        const auto [a1, b1] = t.edge_endpoints(k);
        const auto [a2, b2] = ff.edge_endpoints(k);
        CHECK(std::minmax(a1, b1) == std::minmax(a2, b2));
      }
    }
  }
}

TEST_CASE("flip of a two-vertex torus diagonal connects the opposite corners") {
  const Triangulation t = fixtures::two_vertex_torus();
  for (Index e = 0; e < t.num_edges(); ++e) {
    const Hinge before = t.hinge_at(e);
    const Triangulation f = t.flip(e);
    const auto [u, v] = f.edge_endpoints(e);
    CHECK(std::minmax(u, v) == std::minmax(before.vk, before.vl));
  }
}

TEST_CASE("random flip walks keep the complex valid") {
  idtest::Rng rng(7);
  Triangulation t = fixtures::one_vertex_genus2();
  for (int step = 0; step < 50; ++step) {
    const Index e = static_cast<Index>(rng.uniform(0, t.num_edges() - 1e-9));
    if (!t.flippable(e)) continue;
    t = t.flip(e);
    check_invariants(t);
    // rebuild from raw arrays must agree
    const Triangulation r =
        Triangulation::build(t.num_vertices(), t.faces(), t.twins());
    CHECK(r.num_edges() == t.num_edges());
  }
}

TEST_CASE("flip_distance_path finds short paths by BFS") {
  const Triangulation t = fixtures::two_vertex_torus();
  CHECK(flip_distance_path(t, t).empty());

  const Triangulation f1 = t.flip(2);
  const auto p1 = flip_distance_path(t, f1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == 2);

  const Triangulation f2 = t.flip(2).flip(4);
  const auto p2 = flip_distance_path(t, f2);
  CHECK(p2.size() <= 2);
  Triangulation replay = t;
  for (Index e : p2) replay = replay.flip(e);
  CHECK(replay == f2);
}

TEST_CASE("flip_distance_path respects its cap") {
  const Triangulation a = fixtures::two_vertex_torus();
  Triangulation b = a;
  for (Index e : {Index{0}, Index{3}, Index{1}, Index{5}}) b = b.flip(e);
  CHECK_THROWS_AS(flip_distance_path(a, b, 2), SearchCapError);
}

}  // TEST_SUITE
