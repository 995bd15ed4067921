#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "idpack/hyperbolic.hpp"
#include "test_helpers.hpp"

using namespace idpack;
using idtest::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd fd_curvature_jacobian(const Packing& pk, double step) {
  // column-major stacked central differences of K over u
  const Index n = pk.tri.num_vertices();
  Eigen::VectorXd out(n * n);
  for (Index j = 0; j < n; ++j) {
    Packing hi = pk, lo = pk;
    hi.radii[j] *= std::exp(step);
    lo.radii[j] *= std::exp(-step);
    const Eigen::VectorXd Khi = curvature(hi).curvature;
    const Eigen::VectorXd Klo = curvature(lo).curvature;
    out.segment(j * n, n) = (Khi - Klo) / (2.0 * step);
  }
  return out;
}

Packing delaunay_interior_packing(Rng& rng, Triangulation tri, double margin) {
  for (;;) {
    Packing pk = idtest::random_packing(rng, tri, 1.5, 3.0, 0.75, 1.35);
    pk = delaunayize(pk).packing;
    bool interior = true;
    for (Index e = 0; e < pk.tri.num_edges() && interior; ++e) {
      const HingeData h = hinge_data(pk, e);
      interior = local_delaunay_slack(h) > margin * local_delaunay_scale(h);
    }
    if (interior) return pk;
  }
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("flat equilateral torus has zero curvature") {
  const Packing pk =
      fixtures::equilateral_packing(fixtures::two_vertex_torus());
  const CurvatureState st = curvature(pk);
  CHECK(st.curvature.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(st.cone_angles[0] == doctest::Approx(2 * kPi).epsilon(1e-14));
}

TEST_CASE("sphere and genus-2 fixtures satisfy Gauss-Bonnet exactly") {
  const Packing sphere =
      fixtures::equilateral_packing(fixtures::three_vertex_sphere());
  const CurvatureState st = curvature(sphere);
  for (Index v = 0; v < 3; ++v)
    CHECK(st.curvature[v] == doctest::Approx(4.0 * kPi / 3).epsilon(1e-14));
  CHECK(std::abs(st.curvature.sum() - 4.0 * kPi) <= 1e-9);

  const Packing g2 =
      fixtures::equilateral_packing(fixtures::one_vertex_genus2());
  CHECK(curvature(g2).curvature[0] ==
        doctest::Approx(-4.0 * kPi).epsilon(1e-13));
}

TEST_CASE("Gauss-Bonnet holds on random valid packings") {
  Rng rng(83);
  int tested = 0;
  while (tested < 100) {
    Packing pk = idtest::random_packing(rng, fixtures::one_vertex_genus2(),
                                        1.1, 8.0, 0.3, 3.0);
    pk = delaunayize(pk).packing;
    const CurvatureState st = curvature(pk);
    CHECK(std::abs(st.curvature.sum() -
                   2.0 * kPi * pk.tri.euler_characteristic()) <= 1e-9);
    ++tested;
  }
}

TEST_CASE("curvature is invariant under global scaling") {
  Rng rng(89);
  Packing pk = delaunayize(idtest::random_packing(
                               rng, fixtures::two_vertex_torus(), 1.5, 3.0,
                               0.7, 1.4))
                   .packing;
  const Eigen::VectorXd K1 = curvature(pk).curvature;
  for (double& r : pk.radii) r *= 7.3;
  const Eigen::VectorXd K2 = curvature(pk).curvature;
  CHECK((K1 - K2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("per-face Jacobian block of the equilateral face") {
  const Packing pk =
      fixtures::equilateral_packing(fixtures::three_vertex_sphere());
  const Eigen::MatrixXd J = Eigen::MatrixXd(curvature_jacobian(pk));
  // two equilateral faces contribute twice the single-face block
  CHECK(J(0, 0) == doctest::Approx(2 * 0.5773502691896258).epsilon(1e-12));
  CHECK(J(0, 1) == doctest::Approx(-2 * 0.2886751345948129).epsilon(1e-12));
  CHECK((J - J.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(J.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Jacobian matches finite differences on Delaunay-interior packings") {
  Rng rng(97);
  for (int rep = 0; rep < 20; ++rep) {
    const Packing pk = delaunay_interior_packing(
        rng,
        rep % 2 ? fixtures::two_vertex_torus()
                : fixtures::three_vertex_sphere(),
        1e-4);
    const Index n = pk.tri.num_vertices();
    const Eigen::MatrixXd J = Eigen::MatrixXd(curvature_jacobian(pk));

    CHECK((J - J.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(J.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);

    const Eigen::VectorXd fd = fd_curvature_jacobian(pk, 1e-6);
    const double scale = J.cwiseAbs().maxCoeff();
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        CHECK(std::abs(J(i, j) - fd[j * n + i]) <= 1e-5 * scale);

    // positive semidefinite with a one-dimensional kernel
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    CHECK(es.eigenvalues()[0] >= -1e-10 * scale);
    CHECK(std::abs(es.eigenvalues()[0]) <= 1e-10 * scale);
    if (n > 1) CHECK(es.eigenvalues()[1] > 1e-8 * scale);
  }
}

TEST_CASE("Ricci potential is a path integral with surgery") {
  Rng rng(101);
  const Packing pk = delaunay_interior_packing(
      rng, fixtures::two_vertex_torus(), 1e-6);
  const Index n = pk.tri.num_vertices();
  // u1 sits in a different Delaunay cell: the direct path crosses a wall
  Eigen::VectorXd u0(n), u1(n), w(n);
  for (Index i = 0; i < n; ++i) {
    u0[i] = std::log(pk.radii[i]);
    u1[i] = u0[i] + (i % 2 ? -1.2 : 1.2) + rng.uniform(-0.05, 0.05);
    w[i] = u0[i] + rng.uniform(-0.3, 0.3);
  }
  Packing endpoint = pk;
  for (Index i = 0; i < n; ++i) endpoint.radii[i] = std::exp(u1[i]);
  CHECK(delaunayize(endpoint).flips.size() >= 1);

  CHECK(ricci_potential_delta(pk, u0, u0, 16) == doctest::Approx(0.0));

  const double direct = ricci_potential_delta(pk, u0, u1, 300);
  const double via_w = ricci_potential_delta(pk, u0, w, 300) +
                       ricci_potential_delta(pk, w, u1, 300);
  CHECK(std::abs(direct - via_w) <= 1e-6);

  // kernel direction: scaling leaves every curvature fixed
  const Eigen::VectorXd shift = Eigen::VectorXd::Constant(n, 0.8);
  CHECK(std::abs(ricci_potential_delta(pk, u0, u0 + shift, 32)) <= 1e-9);
}

TEST_CASE("Euler flow reaches the flat metric on the two-vertex torus") {
  Packing pk = fixtures::equilateral_packing(fixtures::two_vertex_torus());
  pk.radii = {1.0, 1.3};
  FlowConfig cfg;
  cfg.tol = 1e-8;
  cfg.max_iters = 2000;
  const FlowResult res =
      flow_euler(pk, Eigen::VectorXd::Zero(2), cfg);
  CHECK(res.trace.converged);
  CHECK(curvature(res.packing).curvature.cwiseAbs().maxCoeff() < 1e-8);
  // the two radii agree up to global scale by the fixture symmetry
  CHECK(std::abs(std::log(res.packing.radii[0]) -
                 std::log(res.packing.radii[1])) <= 1e-6);

  double prev = std::numeric_limits<double>::infinity();
  for (const FlowStep& s : res.trace.steps) {
    CHECK(s.merit <= prev + 1e-15);
    prev = s.merit;
    CHECK(s.gb_residual <= 1e-9);
  }
}

TEST_CASE("a flow starting at its target performs zero iterations") {
  const Packing pk =
      fixtures::equilateral_packing(fixtures::two_vertex_torus());
  const FlowResult res = flow_euler(pk, Eigen::VectorXd::Zero(2));
  CHECK(res.trace.converged);
  CHECK(res.trace.steps.size() == 1);  // only the initial record
}

TEST_CASE("targets violating Gauss-Bonnet are rejected") {
  const Packing pk =
      fixtures::equilateral_packing(fixtures::two_vertex_torus());
  Eigen::VectorXd bad(2);
  bad << 1e-3, 0.0;
  CHECK_THROWS_AS(flow_euler(pk, bad), TargetInvalidError);
  CHECK_THROWS_AS(flow_newton(pk, bad), TargetInvalidError);
  Eigen::VectorXd huge(2);
  huge << 2.0 * kPi + 1.0, -2.0 * kPi - 1.0;
  CHECK_THROWS_AS(flow_newton(pk, huge), TargetInvalidError);
}

TEST_CASE("Newton flow converges quadratically on the two-vertex torus") {
  Rng rng(103);
  for (int rep = 0; rep < 5; ++rep) {
    Packing pk =
        fixtures::equilateral_packing(fixtures::two_vertex_torus());
    pk.radii = {rng.log_uniform(0.6, 1.6), rng.log_uniform(0.6, 1.6)};
    const FlowResult res = flow_newton(pk, Eigen::VectorXd::Zero(2));
    CHECK(res.trace.converged);
    CHECK(res.trace.steps.size() <= 31);
    CHECK(res.trace.steps.back().max_err < 1e-10);
  }
}

TEST_CASE("Newton handles rough starts and non-uniform targets") {
  Rng rng(109);
  for (int rep = 0; rep < 20; ++rep) {
    Packing t2 = fixtures::equilateral_packing(fixtures::two_vertex_torus());
    for (double& I : t2.inv_dist) I = rng.uniform(1.2, 12.0);
    for (double& r : t2.radii) r = rng.log_uniform(0.2, 5.0);
    const double k = rng.uniform(-6.0, 6.0);
    Eigen::VectorXd tgt(2);
    tgt << k, -k;
    const FlowResult res = flow_newton(t2, tgt);
    CHECK(res.trace.converged);
    CHECK((curvature(res.packing).curvature - tgt).cwiseAbs().maxCoeff() <
          1e-10);
  }

  // positive curvature targets on the sphere
  Packing s3 = fixtures::equilateral_packing(fixtures::three_vertex_sphere());
  s3.radii = {0.5, 1.0, 2.0};
  Eigen::VectorXd tgt(3);
  tgt << 3.0, 4.0, 4.0 * kPi - 7.0;
  const FlowResult res = flow_newton(s3, tgt);
  CHECK(res.trace.converged);
  CHECK((curvature(res.packing).curvature - tgt).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("one-vertex complexes are kernel-only and converge immediately") {
  const Packing torus =
      fixtures::equilateral_packing(fixtures::one_vertex_torus());
  const FlowResult r1 =
      flow_newton(torus, Eigen::VectorXd::Zero(1));
  CHECK(r1.trace.converged);
  CHECK(r1.trace.steps.size() == 1);

  Packing g2 = fixtures::equilateral_packing(fixtures::one_vertex_genus2());
  g2.radii[0] = 2.4;
  const FlowResult r2 =
      flow_newton(g2, Eigen::VectorXd::Constant(1, -4.0 * kPi));
  CHECK(r2.trace.converged);
  CHECK(std::abs(curvature(r2.packing).curvature.sum() + 4.0 * kPi) <= 1e-9);
}

TEST_CASE("curvature is unchanged by a zero-slack flip") {
  // drive edge 2 of the torus onto the Delaunay wall by bisecting its own
  // inversive distance, then switch the diagonal
  Packing pk = fixtures::equilateral_packing(fixtures::two_vertex_torus());
  auto slack_of = [&](double I) {
    Packing probe = pk;
    probe.inv_dist[2] = I;
    return local_delaunay_slack(hinge_data(probe, 2));
  };
  double lo = 2.0, hi = 10.0;
  REQUIRE(slack_of(lo) > 0.0);
  REQUIRE(slack_of(hi) < 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slack_of(mid) > 0.0 ? lo : hi) = mid;
  }
  pk.inv_dist[2] = lo;
  REQUIRE(std::abs(slack_of(lo)) <= 1e-10);

  const Eigen::VectorXd K_before = curvature(pk).curvature;
  const HingeData h = hinge_data(pk, 2);
  Packing flipped = pk;
  flipped.tri = pk.tri.flip(2);
  flipped.inv_dist[2] = ptolemy_f(h.a, h.b, h.c, h.d, h.e);
  const Eigen::VectorXd K_after = curvature(flipped).curvature;
  CHECK((K_before - K_after).cwiseAbs().maxCoeff() <= 1e-9);

  // the wall itself is treated as Delaunay: no flip is triggered
  CHECK(delaunayize(pk).flips.empty());
}

TEST_CASE("uniqueness up to scaling across perturbed starts") {
  const Packing t2 =
      fixtures::equilateral_packing(fixtures::two_vertex_torus());
  CHECK(verify_uniqueness(t2, Eigen::VectorXd::Zero(2), 5, 1e-8));
  CHECK(verify_uniqueness(t2, Eigen::VectorXd::Zero(2), 1, 1e-8));

  const Packing t1 =
      fixtures::equilateral_packing(fixtures::one_vertex_torus());
  CHECK(verify_uniqueness(t1, Eigen::VectorXd::Zero(1), 5, 1e-8));
}

TEST_CASE("perturbing an inversive distance is detected as a class change") {
  Rng rng(107);
  const Packing pk = delaunay_interior_packing(
      rng, fixtures::two_vertex_torus(), 1e-6);
  const Eigen::VectorXd target = Eigen::VectorXd::Zero(2);

  const FlowResult a = flow_newton(pk, target);
  Packing other = pk;
  other.inv_dist[0] *= 1.10;
  const FlowResult b = flow_newton(delaunayize(other).packing, target);

  Eigen::VectorXd ua(2), ub(2);
  for (Index v = 0; v < 2; ++v) {
    ua[v] = std::log(a.packing.radii[v]);
    ub[v] = std::log(b.packing.radii[v]);
  }
  ua.array() -= ua.mean();
  ub.array() -= ub.mean();
  bool differs = (ua - ub).cwiseAbs().maxCoeff() > 1e-8;
  for (Index e = 0; e < pk.tri.num_edges(); ++e)
    differs |= std::abs(a.packing.inv_dist[e] - b.packing.inv_dist[e]) > 1e-8;
  CHECK(differs);
}

}  // TEST_SUITE
