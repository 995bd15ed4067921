#ifndef IDPACK_GEOMETRY_HPP
#define IDPACK_GEOMETRY_HPP

#include <array>
#include <vector>

#include "idpack/mesh.hpp"

namespace idpack {

// Inversive distances stay strictly above 1; the tolerant mode admits the
// tangency boundary I >= 1 for limit probes.
enum class BoundaryMode { strict, tolerant };

// Inversive distance circle packing: one inversive distance per edge
// (> 1, disjoint circles) and one radius per vertex. Edge lengths are always
// recomputed from (I, r) on demand.
struct Packing {
  Triangulation tri;
  std::vector<double> inv_dist;  // per edge
  std::vector<double> radii;     // per vertex

  void validate(BoundaryMode mode = BoundaryMode::strict) const;
};

// The nine numbers of one hinge: inversive distances of the sides
// e_ki, e_il, e_lj, e_jk, the diagonal e_ij, and the radii at vk, vi, vl, vj.
struct HingeData {
  double a, b, c, d, e;
  double p, q, r, s;
};

HingeData hinge_data(const Packing& pk, Index edge);

// (l^2 - r1^2 - r2^2) / (2 r1 r2); no range restriction on the result.
double inversive_distance(double l, double r1, double r2);

// sqrt(r1^2 + r2^2 + 2 I r1 r2), the inverse of inversive_distance in l.
double edge_length(double I, double r1, double r2,
                   BoundaryMode mode = BoundaryMode::strict);

// a^2 + b^2 + c^2 + 2abc - 1; exceeds 4 whenever a,b,c > 1.
double discriminant(double a, double b, double c);

// Per-face derived quantities. Index convention: slot 0 belongs to vertex
// v_i (its opposite edge e_jk, its angle, the dual distance h_{jk,i}), slot 1
// to v_j, slot 2 to v_k. Dual distances are signed: positive when the power
// center lies on the same side of the edge as the opposite vertex.
struct TriangleGeometry {
  std::array<double, 3> lengths;    // l_jk, l_ki, l_ij
  std::array<double, 3> angles;     // at v_i, v_j, v_k
  double area;
  double ortho_radius;              // radius of the common orthogonal circle
  std::array<double, 3> dual_dist;  // h_{jk,i}, h_{ki,j}, h_{ij,k}
};

// a = I_jk, b = I_ki, c = I_ij. Throws TriangleInequalityError with the
// slack of the violated inequality.
TriangleGeometry triangle_geometry(double a, double b, double c, double r_i,
                                   double r_j, double r_k,
                                   BoundaryMode mode = BoundaryMode::strict);

// Planar development of a hinge: v_i at the origin, v_j on the positive
// x-axis, v_k below, v_l above. `diagonal` is |v_k v_l| and apex_inversive
// the inversive distance of the two apex circles in this embedding.
struct HingeDevelopment {
  std::array<double, 2> vk, vi, vl, vj;
  double diagonal;
  double apex_inversive;
};

HingeDevelopment develop_hinge(const HingeData& h,
                               BoundaryMode mode = BoundaryMode::strict);

}  // namespace idpack

#endif
