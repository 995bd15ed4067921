#include "idpack/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace idpack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Inversive distances of face f keyed by opposite corner: slot v holds the
// value on the edge from corner v+1 to corner v+2.
std::array<double, 3> face_inv_dist(const Packing& pk, Index f) {
  return {pk.inv_dist[pk.tri.edge_of(3 * f + 1)],
          pk.inv_dist[pk.tri.edge_of(3 * f + 2)],
          pk.inv_dist[pk.tri.edge_of(3 * f + 0)]};
}

TriangleGeometry face_geometry(const Packing& pk, Index f) {
  const auto I = face_inv_dist(pk, f);
  const auto& vs = pk.tri.faces()[f];
  try {
    return triangle_geometry(I[0], I[1], I[2], pk.radii[vs[0]],
                             pk.radii[vs[1]], pk.radii[vs[2]]);
  } catch (const TriangleInequalityError& ex) {
    throw TriangleInequalityError("face " + std::to_string(f) + ": " +
                                  ex.what());
  }
}

Eigen::VectorXd log_radii(const Packing& pk) {
  Eigen::VectorXd u(pk.radii.size());
  for (size_t i = 0; i < pk.radii.size(); ++i) u[i] = std::log(pk.radii[i]);
  return u;
}

void set_log_radii(Packing& pk, const Eigen::VectorXd& u) {
  for (size_t i = 0; i < pk.radii.size(); ++i) pk.radii[i] = std::exp(u[i]);
}

void check_target(const Triangulation& tri, const Eigen::VectorXd& target) {
  if (target.size() != tri.num_vertices())
    throw TargetInvalidError("target has " + std::to_string(target.size()) +
                             " entries for " +
                             std::to_string(tri.num_vertices()) + " vertices");
  for (Index i = 0; i < target.size(); ++i)
    if (!(target[i] < kTwoPi))
      throw TargetInvalidError("target curvature at vertex " +
                               std::to_string(i) + " is not below 2*pi");
  const double gb = target.sum() - kTwoPi * tri.euler_characteristic();
  if (std::abs(gb) > 1e-9)
    throw TargetInvalidError("target violates Gauss-Bonnet by " +
                             std::to_string(gb));
}

struct FlowState {
  Packing pk;
  Eigen::VectorXd u;
  Eigen::VectorXd K;
  double merit;
  double max_err;
  double gb_residual;
  long flips;
};

FlowState evaluate(Packing pk, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& target, const FlowConfig& cfg) {
  set_log_radii(pk, u);
  auto del = delaunayize(std::move(pk), cfg.flip_tol, cfg.flip_budget);
  FlowState st;
  st.pk = std::move(del.packing);
  st.u = u;
  st.K = curvature(st.pk).curvature;
  const Eigen::VectorXd err = st.K - target;
  st.merit = 0.5 * err.squaredNorm();
  st.max_err = err.size() ? err.cwiseAbs().maxCoeff() : 0.0;
  st.gb_residual =
      std::abs(st.K.sum() - kTwoPi * st.pk.tri.euler_characteristic());
  st.flips = static_cast<long>(del.flips.size());
  return st;
}

void record(FlowTrace& trace, int iter, const FlowState& st, double step) {
  trace.steps.push_back({iter, st.max_err, st.merit,
                         static_cast<int>(st.flips), step,
                         st.pk.tri.num_edges(), st.gb_residual});
  trace.total_flips += st.flips;
}

// Newton direction through the rank-one corrected system; the right-hand
// side is orthogonal to (1,...,1) by Gauss-Bonnet, so the correction does
// not perturb the solution.
Eigen::VectorXd newton_direction(const Packing& pk, const Eigen::VectorXd& rhs) {
  const Index n = pk.tri.num_vertices();
  Eigen::MatrixXd J = Eigen::MatrixXd(curvature_jacobian(pk));
  Eigen::MatrixXd M =
      J + Eigen::MatrixXd::Ones(n, n) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const double lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(es.eigenvalues()[0] > 1e-12 * std::max(lam_max, 1.0)))
    throw SingularBeyondKernelError(
        "curvature Jacobian is rank deficient beyond its scaling kernel");

  Eigen::VectorXd delta = es.eigenvectors() *
                          (es.eigenvectors().transpose() * rhs).cwiseQuotient(
                              es.eigenvalues());
  delta.array() -= delta.mean();  // guard roundoff drift out of sum = 0
  return delta;
}

FlowResult run_flow(const Packing& pk, const Eigen::VectorXd& target,
                    FlowConfig cfg, FlowConfig::Method method) {
  check_target(pk.tri, target);
  cfg.method = method;

  FlowResult res;
  FlowState cur = evaluate(pk, log_radii(pk), target, cfg);
  record(res.trace, 0, cur, 0.0);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (cur.max_err < cfg.tol) {
      res.trace.converged = true;
      res.packing = std::move(cur.pk);
      return res;
    }

    Eigen::VectorXd dir;
    double step0, slope = 0.0;
    if (method == FlowConfig::Method::euler) {
      dir = -(cur.K - target);
      step0 = cfg.euler_step;
    } else {
      dir = newton_direction(cur.pk, -(cur.K - target));
      step0 = 1.0;
      slope = (Eigen::MatrixXd(curvature_jacobian(cur.pk)) * (cur.K - target))
                  .dot(dir);
    }

    const double mean0 = cur.u.mean();
    double t = step0;
    bool accepted = false;
    FlowState cand;
    while (t > 1e-14 * step0) {
      // both directions are mean-free; re-centering pins sum(u) against drift
      Eigen::VectorXd u_next = cur.u + t * dir;
      u_next.array() += mean0 - u_next.mean();
      bool ok;
      try {
        cand = evaluate(cur.pk, u_next, target, cfg);
        ok = (method == FlowConfig::Method::euler)
                 ? cand.merit <= cur.merit
                 : cand.merit <= cur.merit + cfg.armijo * t * slope;
      } catch (const Error&) {
        // trial point left the valid region (degenerate face, radius
        // under/overflow); treat as an overlong step
        ok = false;
      }
      if (ok) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted)
      throw MaxIterationsError(
          "line search stalled at iteration " + std::to_string(iter) +
          " with max error " + std::to_string(cur.max_err));

    cur = std::move(cand);
    record(res.trace, iter, cur, t);
  }

  if (cur.max_err < cfg.tol) {
    res.trace.converged = true;
    res.packing = std::move(cur.pk);
    return res;
  }
  throw MaxIterationsError("flow did not reach tolerance " +
                           std::to_string(cfg.tol) + " within " +
                           std::to_string(cfg.max_iters) + " iterations");
}

}  // namespace

CurvatureState curvature(const Packing& pk) {
  pk.validate();
  CurvatureState st;
  st.cone_angles = Eigen::VectorXd::Zero(pk.tri.num_vertices());
  for (Index f = 0; f < pk.tri.num_faces(); ++f) {
    const TriangleGeometry g = face_geometry(pk, f);
    const auto& vs = pk.tri.faces()[f];
    for (int v = 0; v < 3; ++v) st.cone_angles[vs[v]] += g.angles[v];
  }
  st.curvature = kTwoPi - st.cone_angles.array();
  return st;
}

Eigen::SparseMatrix<double> curvature_jacobian(const Packing& pk) {
  pk.validate();
  const Index n = pk.tri.num_vertices();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(12 * pk.tri.num_faces());

  for (Index f = 0; f < pk.tri.num_faces(); ++f) {
    const TriangleGeometry g = face_geometry(pk, f);
    const auto& vs = pk.tri.faces()[f];
    // for each corner pair, the face contributes -h/l off-diagonal and +h/l
    // on both diagonals, where h is the dual distance of the edge between
    // them (indexed by the third corner)
    for (int third = 0; third < 3; ++third) {
      const int u = (third + 1) % 3, v = (third + 2) % 3;
      const double w = g.dual_dist[third] / g.lengths[third];
      trip.emplace_back(vs[u], vs[v], -w);
      trip.emplace_back(vs[v], vs[u], -w);
      trip.emplace_back(vs[u], vs[u], w);
      trip.emplace_back(vs[v], vs[v], w);
    }
  }
  Eigen::SparseMatrix<double> J(n, n);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

Eigen::VectorXd uniform_target(const Triangulation& tri) {
  return Eigen::VectorXd::Constant(
      tri.num_vertices(),
      kTwoPi * tri.euler_characteristic() / tri.num_vertices());
}

double ricci_potential_delta(const Packing& pk, const Eigen::VectorXd& u_from,
                             const Eigen::VectorXd& u_to, int segments,
                             const std::optional<Eigen::VectorXd>& target) {
  pk.validate();
  if (segments < 1) throw DomainError("segments must be positive");
  const Eigen::VectorXd tgt = target.value_or(uniform_target(pk.tri));
  check_target(pk.tri, tgt);
  const Eigen::VectorXd du = u_to - u_from;

  // 4-point Gauss-Legendre on [0,1]
  static const double node[4] = {0.5 - 0.8611363115940526 / 2.0,
                                 0.5 - 0.3399810435848563 / 2.0,
                                 0.5 + 0.3399810435848563 / 2.0,
                                 0.5 + 0.8611363115940526 / 2.0};
  static const double weight[4] = {0.3478548451374538 / 2.0,
                                   0.6521451548625461 / 2.0,
                                   0.6521451548625461 / 2.0,
                                   0.3478548451374538 / 2.0};

  // warm-start the surgery from the previous node; every flip stays inside
  // the conformal class, so the integrand value is unaffected
  Packing state = pk;
  double total = 0.0;
  for (int s = 0; s < segments; ++s) {
    for (int g = 0; g < 4; ++g) {
      const double t = (s + node[g]) / segments;
      Eigen::VectorXd u = u_from + t * du;
      set_log_radii(state, u);
      state = delaunayize(std::move(state)).packing;
      const Eigen::VectorXd K = curvature(state).curvature;
      total += weight[g] / segments * (K - tgt).dot(du);
    }
  }
  return total;
}

FlowResult flow_euler(const Packing& pk, const Eigen::VectorXd& target,
                      const FlowConfig& cfg) {
  return run_flow(pk, target, cfg, FlowConfig::Method::euler);
}

FlowResult flow_newton(const Packing& pk, const Eigen::VectorXd& target,
                       const FlowConfig& cfg) {
  return run_flow(pk, target, cfg, FlowConfig::Method::newton);
}

bool verify_uniqueness(const Packing& pk, const Eigen::VectorXd& target,
                       int trials, double tol, std::uint64_t seed,
                       const FlowConfig& cfg) {
  if (trials < 1) return true;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);

  struct Outcome {
    Triangulation tri;
    std::vector<double> inv_dist;
    Eigen::VectorXd u;
  };
  std::vector<Outcome> outcomes;

  for (int trial = 0; trial < trials; ++trial) {
    Packing start = pk;
    if (trial > 0)  // first trial runs unperturbed
      for (double& r : start.radii) r *= std::exp(jitter(rng));
    // perturbing radii with fixed inversive distances stays in the class;
    // surgery restores Delaunayness without leaving it
    start = delaunayize(start, cfg.flip_tol, cfg.flip_budget).packing;
    FlowResult res = flow_newton(start, target, cfg);

    Eigen::VectorXd u = log_radii(res.packing);
    u.array() -= u.mean();
    outcomes.push_back({res.packing.tri, res.packing.inv_dist, u});
  }

  const Outcome& ref = outcomes.front();
  for (const Outcome& o : outcomes) {
    if (o.tri.num_edges() != ref.tri.num_edges()) return false;
    for (Index e = 0; e < ref.tri.num_edges(); ++e) {
      if (o.tri.edge_endpoints(e) != ref.tri.edge_endpoints(e)) return false;
      if (std::abs(o.inv_dist[e] - ref.inv_dist[e]) > tol) return false;
    }
    if ((o.u - ref.u).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace idpack
