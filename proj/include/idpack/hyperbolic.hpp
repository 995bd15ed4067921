#ifndef IDPACK_HYPERBOLIC_HPP
#define IDPACK_HYPERBOLIC_HPP

#include "idpack/flow.hpp"

namespace idpack {

// Length coordinates of the associated hyperbolic surface with geodesic
// boundaries: x_e = arcosh(I_e) per edge, radii carried through unchanged.
struct HyperbolicCoords {
  Triangulation tri;
  std::vector<double> lengths;  // per edge, > 0
  std::vector<double> radii;    // per vertex, > 0
};

// Requires the packing to be weighted Delaunay (slack >= -rel_tol * scale on
// every edge); throws NotDelaunayError otherwise.
HyperbolicCoords to_hyperbolic(const Packing& pk, double rel_tol = 1e-12);
Packing from_hyperbolic(const HyperbolicCoords& hc, double rel_tol = 1e-12);

// The Delaunay predicate in length coordinates: identical numbers to the
// Euclidean slack evaluated on cosh-transformed lengths.
double hyperbolic_local_delaunay_slack(double x_a, double x_b, double x_c,
                                       double x_d, double x_e, double p,
                                       double q, double r, double s);

// Right-angled hexagon cosine law: the side opposite x when the alternating
// sides are x, y, z is arcosh((cosh y cosh z + cosh x) / (sinh y sinh z)).
double hexagon_side(double x, double y, double z);

// Canonical representative of the discrete conformal class: surgery to a
// weighted Delaunay triangulation, Newton flow to the uniform target
// 2 pi chi / n, then sum(log r) = 0 normalization. Idempotent up to the
// flow tolerance.
Packing canonical_form(const Packing& pk, const FlowConfig& cfg = {});

// Two packings on the same marked surface are discretely conformally
// equivalent iff their canonical forms agree componentwise (vertex labels
// fixed) within tol.
bool equivalent(const Packing& pk1, const Packing& pk2, double tol = 1e-8,
                const FlowConfig& cfg = {});

}  // namespace idpack

#endif
