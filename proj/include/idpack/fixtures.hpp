#ifndef IDPACK_FIXTURES_HPP
#define IDPACK_FIXTURES_HPP

#include "idpack/geometry.hpp"

namespace idpack {
namespace fixtures {

// Square torus, both faces glued around one vertex: |E| = 3, chi = 0.
Triangulation one_vertex_torus();

// 2x1 grid torus with two vertices: |E| = 6, |F| = 4, chi = 0.
Triangulation two_vertex_torus();

// Octagon with the standard genus-2 gluing, fanned from one corner:
// n = 1, |E| = 9, |F| = 6, chi = -2.
Triangulation one_vertex_genus2();

// Two triangles glued along matching sides: n = 3, |E| = 3, chi = 2.
Triangulation three_vertex_sphere();

// All inversive distances and radii constant; every face is equilateral.
Packing equilateral_packing(Triangulation tri, double inv_dist = 2.0,
                            double radius = 1.0);

}  // namespace fixtures
}  // namespace idpack

#endif
