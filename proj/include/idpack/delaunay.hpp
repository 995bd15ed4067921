#ifndef IDPACK_DELAUNAY_HPP
#define IDPACK_DELAUNAY_HPP

#include <array>
#include <utility>
#include <vector>

#include "idpack/geometry.hpp"

namespace idpack {

// Inversive distance of the switched diagonal:
//   f = (ab + cd + ace + bde + sqrt(D_ade) sqrt(D_bce)) / (e^2 - 1).
// Exceeds 1 whenever a..e > 1.
double ptolemy_f(double a, double b, double c, double d, double e);

// Left side of the generalized Ptolemy equation tying the six inversive
// distances of a flippable hinge; zero iff the sextuple is consistent.
double ptolemy_residual(double a, double b, double c, double d, double e,
                        double f);

// Closed forms for (sqrt(D_abf), sqrt(D_cdf)) with f = ptolemy_f(a..e),
// obtained without computing f.
std::pair<double, double> delta_propagation(double a, double b, double c,
                                            double d, double e);

// Signed slack of the local weighted Delaunay inequality,
//   sqrt(D_cdf)/q + sqrt(D_abf)/s - sqrt(D_bce)/p - sqrt(D_ade)/r,
// nonnegative iff the diagonal is local weighted Delaunay. Defined on raw
// hinge data; triangle inequalities are not required.
double local_delaunay_slack(const HingeData& h);

// Largest of the four slack terms, a natural scale for relative tolerances.
double local_delaunay_scale(const HingeData& h);

// The apex radius p at which the hinge sits exactly on the Delaunay
// equality wall, p0 = sqrt(D_bce) / (sqrt(D_cdf)/q + sqrt(D_abf)/s -
// sqrt(D_ade)/r). Throws NonpositiveDenominatorError when no such p exists.
double delaunay_equality_radius(double q, double r, double s, double a,
                                double b, double c, double d, double e);

// The apex radius at which the face with sides a (k-i), d (j-k), e (i-j)
// degenerates (PQ + PS = QS).
double degeneracy_radius(double q, double s, double a, double d, double e);

// The four equivalent Delaunay forms (left minus right); all share one sign
// and vanish together.
std::array<double, 4> ushijima_forms(double a, double b, double c, double d,
                                     double e);

struct FlipRecord {
  Index edge;
  double old_inv_dist;
  double new_inv_dist;
};

struct DelaunayResult {
  Packing packing;
  std::vector<FlipRecord> flips;
};

// Flips every edge whose slack is below -rel_tol * scale, assigning the new
// diagonal by ptolemy_f, until all edges are weighted Delaunay. Edges are
// scanned in ascending id order and the scan restarts after each flip.
// flip_budget < 0 selects the default of 100 * |E|.
DelaunayResult delaunayize(Packing pk, double rel_tol = 1e-12,
                           long flip_budget = -1);

// Max deviation between central finite-difference gradients of the developed
// apex inversive distance and of ptolemy_f, over all nine hinge variables,
// evaluated at the Delaunay equality wall p = delaunay_equality_radius(...).
// The two gradients coincide there.
double wall_gradient_deviation(double q, double r, double s, double a,
                               double b, double c, double d, double e,
                               double step);

}  // namespace idpack

#endif
