#include "idpack/hyperbolic.hpp"

#include <cmath>
#include <string>

namespace idpack {

namespace {

void require_delaunay(const Packing& pk, double rel_tol, const char* where) {
  for (Index e = 0; e < pk.tri.num_edges(); ++e) {
    const HingeData h = hinge_data(pk, e);
    const double slack = local_delaunay_slack(h);
    if (slack < -rel_tol * local_delaunay_scale(h))
      throw NotDelaunayError(std::string(where) + ": edge " +
                             std::to_string(e) + " has negative slack " +
                             std::to_string(slack) + "; delaunayize first");
  }
}

}  // namespace

HyperbolicCoords to_hyperbolic(const Packing& pk, double rel_tol) {
  pk.validate();
  require_delaunay(pk, rel_tol, "to_hyperbolic");
  HyperbolicCoords hc;
  hc.tri = pk.tri;
  hc.radii = pk.radii;
  hc.lengths.reserve(pk.inv_dist.size());
  for (double I : pk.inv_dist) hc.lengths.push_back(std::acosh(I));
  return hc;
}

Packing from_hyperbolic(const HyperbolicCoords& hc, double rel_tol) {
  Packing pk;
  pk.tri = hc.tri;
  pk.radii = hc.radii;
  pk.inv_dist.reserve(hc.lengths.size());
  for (double x : hc.lengths) {
    if (!(x > 0.0))
      throw DomainError("from_hyperbolic: length coordinate " +
                        std::to_string(x) + " is not positive");
    pk.inv_dist.push_back(std::cosh(x));
  }
  pk.validate();
  require_delaunay(pk, rel_tol, "from_hyperbolic");
  return pk;
}

double hyperbolic_local_delaunay_slack(double x_a, double x_b, double x_c,
                                       double x_d, double x_e, double p,
                                       double q, double r, double s) {
  for (double x : {x_a, x_b, x_c, x_d, x_e})
    if (!(x > 0.0))
      throw DomainError("hyperbolic slack: length coordinate must be positive");
  HingeData h{std::cosh(x_a), std::cosh(x_b), std::cosh(x_c), std::cosh(x_d),
              std::cosh(x_e), p, q, r, s};
  return local_delaunay_slack(h);
}

double hexagon_side(double x, double y, double z) {
  if (!(x > 0.0 && y > 0.0 && z > 0.0))
    throw DomainError("hexagon_side: side lengths must be positive");
  return std::acosh((std::cosh(y) * std::cosh(z) + std::cosh(x)) /
                    (std::sinh(y) * std::sinh(z)));
}

Packing canonical_form(const Packing& pk, const FlowConfig& cfg) {
  Packing start = delaunayize(pk, cfg.flip_tol, cfg.flip_budget).packing;
  FlowResult res = flow_newton(start, uniform_target(start.tri), cfg);
  Packing out = std::move(res.packing);

  double mean = 0.0;
  for (double r : out.radii) mean += std::log(r);
  mean /= static_cast<double>(out.radii.size());
  for (double& r : out.radii) r = std::exp(std::log(r) - mean);
  return out;
}

bool equivalent(const Packing& pk1, const Packing& pk2, double tol,
                const FlowConfig& cfg) {
  if (pk1.tri.num_vertices() != pk2.tri.num_vertices() ||
      pk1.tri.euler_characteristic() != pk2.tri.euler_characteristic())
    throw DomainError("equivalent: packings live on different marked surfaces");

  const Packing c1 = canonical_form(pk1, cfg);
  const Packing c2 = canonical_form(pk2, cfg);
  if (c1.tri.num_edges() != c2.tri.num_edges()) return false;
  for (Index e = 0; e < c1.tri.num_edges(); ++e) {
    if (c1.tri.edge_endpoints(e) != c2.tri.edge_endpoints(e)) return false;
    if (std::abs(c1.inv_dist[e] - c2.inv_dist[e]) > tol) return false;
  }
  for (Index v = 0; v < c1.tri.num_vertices(); ++v)
    if (std::abs(std::log(c1.radii[v]) - std::log(c2.radii[v])) > tol)
      return false;
  return true;
}

}  // namespace idpack
