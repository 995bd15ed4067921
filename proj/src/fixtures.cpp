#include "idpack/fixtures.hpp"

namespace idpack {
namespace fixtures {

Triangulation one_vertex_torus() {
  // unit square, diagonal from the lower-left corner; opposite sides glued
  return Triangulation::build(1, {{0, 0, 0}, {0, 0, 0}},
                              {4, 5, 3, 2, 0, 1});
}

Triangulation two_vertex_torus() {
  // [0,2]x[0,1] grid torus, vertex 0 on the even columns, vertex 1 between
  return Triangulation::build(
      2, {{0, 1, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}},
      {4, 11, 3, 2, 0, 7, 10, 5, 9, 8, 6, 1});
}

Triangulation one_vertex_genus2() {
  // octagon a b a' b' c d c' d', fan triangulation from corner 0
  return Triangulation::build(
      1, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
      {4, 7, 3, 2, 0, 6, 5, 1, 9, 8, 16, 12, 11, 17, 15, 14, 10, 13});
}

Triangulation three_vertex_sphere() {
  return Triangulation::build(3, {{0, 1, 2}, {0, 2, 1}}, {5, 4, 3, 2, 1, 0});
}

Packing equilateral_packing(Triangulation tri, double inv_dist,
                            double radius) {
  Packing pk;
  pk.inv_dist.assign(tri.num_edges(), inv_dist);
  pk.radii.assign(tri.num_vertices(), radius);
  pk.tri = std::move(tri);
  return pk;
}

}  // namespace fixtures
}  // namespace idpack
