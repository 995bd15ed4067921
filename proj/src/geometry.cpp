#include "idpack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace idpack {

namespace {

constexpr double kBoundaryEps = 1e-12;

void check_inv_dist(double I, BoundaryMode mode, const char* where) {
  // strict mode rejects the whole interval (1, 1 + 1e-12]
  const bool ok = (mode == BoundaryMode::tolerant) ? I >= 1.0
                                                   : I > 1.0 + kBoundaryEps;
  if (!ok)
    throw DomainError(std::string(where) + ": inversive distance " +
                      std::to_string(I) + " is not > 1");
}

void check_radius(double r, const char* where) {
  if (!(r > 0.0))
    throw NonPositiveInputError(std::string(where) + ": radius " +
                                std::to_string(r) + " is not positive");
}

// Kahan's stable form of Heron's formula; a >= b >= c required.
double stable_area(double a, double b, double c) {
  return 0.25 * std::sqrt((a + (b + c)) * (c - (a - b)) * (c + (a - b)) *
                          (a + (b - c)));
}

}  // namespace

void Packing::validate(BoundaryMode mode) const {
  if (static_cast<Index>(inv_dist.size()) != tri.num_edges())
    throw DomainError("packing has " + std::to_string(inv_dist.size()) +
                      " inversive distances for " +
                      std::to_string(tri.num_edges()) + " edges");
  if (static_cast<Index>(radii.size()) != tri.num_vertices())
    throw DomainError("packing has " + std::to_string(radii.size()) +
                      " radii for " + std::to_string(tri.num_vertices()) +
                      " vertices");
  for (double I : inv_dist) {
    if (!std::isfinite(I))
      throw DomainError("packing: inversive distance is not finite");
    check_inv_dist(I, mode, "packing");
  }
  for (double r : radii) {
    if (!std::isfinite(r))
      throw NonPositiveInputError("packing: radius is not finite");
    check_radius(r, "packing");
  }
}

HingeData hinge_data(const Packing& pk, Index edge) {
  const Hinge hg = pk.tri.hinge_at(edge);
  HingeData h;
  h.a = pk.inv_dist[hg.edge_ki];
  h.b = pk.inv_dist[hg.edge_il];
  h.c = pk.inv_dist[hg.edge_lj];
  h.d = pk.inv_dist[hg.edge_jk];
  h.e = pk.inv_dist[hg.edge];
  h.p = pk.radii[hg.vk];
  h.q = pk.radii[hg.vi];
  h.r = pk.radii[hg.vl];
  h.s = pk.radii[hg.vj];
  return h;
}

double inversive_distance(double l, double r1, double r2) {
  if (!(l > 0.0)) throw NonPositiveInputError("inversive_distance: length must be positive");
  check_radius(r1, "inversive_distance");
  check_radius(r2, "inversive_distance");
  return (l * l - r1 * r1 - r2 * r2) / (2.0 * r1 * r2);
}

double edge_length(double I, double r1, double r2, BoundaryMode mode) {
  check_inv_dist(I, mode, "edge_length");
  check_radius(r1, "edge_length");
  check_radius(r2, "edge_length");
  return std::sqrt(r1 * r1 + r2 * r2 + 2.0 * I * r1 * r2);
}

double discriminant(double a, double b, double c) {
  return a * a + b * b + c * c + 2.0 * a * b * c - 1.0;
}

TriangleGeometry triangle_geometry(double a, double b, double c, double r_i,
                                   double r_j, double r_k, BoundaryMode mode) {
  TriangleGeometry g;
  g.lengths = {edge_length(a, r_j, r_k, mode), edge_length(b, r_k, r_i, mode),
               edge_length(c, r_i, r_j, mode)};

  for (int v = 0; v < 3; ++v) {
    const double opp = g.lengths[v];
    const double sum = g.lengths[(v + 1) % 3] + g.lengths[(v + 2) % 3];
    if (!(opp < sum))
      throw TriangleInequalityError(
          "triangle inequality violated at corner " + std::to_string(v) +
          ": slack " + std::to_string(sum - opp));
  }

  for (int v = 0; v < 3; ++v) {
    const double lo = g.lengths[v];
    const double l1 = g.lengths[(v + 1) % 3], l2 = g.lengths[(v + 2) % 3];
    const double cosv = (l1 * l1 + l2 * l2 - lo * lo) / (2.0 * l1 * l2);
    g.angles[v] = std::acos(std::clamp(cosv, -1.0, 1.0));
  }

  std::array<double, 3> sorted = g.lengths;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  g.area = stable_area(sorted[0], sorted[1], sorted[2]);

  const double sd = std::sqrt(discriminant(a, b, c));
  g.ortho_radius = r_i * r_j * r_k * sd / (2.0 * g.area);

  // Signed distances from the power center to each edge, in the closed form
  // that stays valid on non-Delaunay hinges.
  const double rho = g.ortho_radius;
  g.dual_dist[2] =  // h_{ij,k}
      rho * ((b * c + a) * r_i * r_k + (a * c + b) * r_j * r_k -
             (c * c - 1.0) * r_i * r_j) /
      (r_k * g.lengths[2] * sd);
  g.dual_dist[0] =  // h_{jk,i}
      rho * ((c * a + b) * r_j * r_i + (b * a + c) * r_k * r_i -
             (a * a - 1.0) * r_j * r_k) /
      (r_i * g.lengths[0] * sd);
  g.dual_dist[1] =  // h_{ki,j}
      rho * ((a * b + c) * r_k * r_j + (c * b + a) * r_i * r_j -
             (b * b - 1.0) * r_k * r_i) /
      (r_j * g.lengths[1] * sd);
  return g;
}

HingeDevelopment develop_hinge(const HingeData& h, BoundaryMode mode) {
  // face f_ijk has sides e (i-j), d (j-k), a (k-i); face f_ijl has
  // sides e (i-j), c (j-l), b (i-l)
  const double l_ij = edge_length(h.e, h.q, h.s, mode);
  const double l_ki = edge_length(h.a, h.p, h.q, mode);
  const double l_jk = edge_length(h.d, h.s, h.p, mode);
  const double l_il = edge_length(h.b, h.q, h.r, mode);
  const double l_lj = edge_length(h.c, h.r, h.s, mode);

  auto apex = [&](double from_i, double from_j, const char* which) {
    const double x = (from_i * from_i + l_ij * l_ij - from_j * from_j) /
                     (2.0 * l_ij);
    const double y2 = from_i * from_i - x * x;
    if (!(y2 > 0.0))
      throw TriangleInequalityError(std::string("hinge face ") + which +
                                    " violates the triangle inequality");
    return std::array<double, 2>{x, std::sqrt(y2)};
  };

  HingeDevelopment dev;
  dev.vi = {0.0, 0.0};
  dev.vj = {l_ij, 0.0};
  auto k = apex(l_ki, l_jk, "ijk");
  auto l = apex(l_il, l_lj, "ijl");
  dev.vk = {k[0], -k[1]};
  dev.vl = {l[0], l[1]};

  const double dx = dev.vl[0] - dev.vk[0];
  const double dy = dev.vl[1] - dev.vk[1];
  dev.diagonal = std::hypot(dx, dy);
  dev.apex_inversive =
      (dev.diagonal * dev.diagonal - h.p * h.p - h.r * h.r) / (2.0 * h.p * h.r);
  return dev;
}

}  // namespace idpack
