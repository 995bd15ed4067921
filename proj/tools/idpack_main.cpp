// idpack: inversive distance circle packings, weighted Delaunay surgery and
// discrete Ricci flow on closed triangulated surfaces.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>

#include "idpack/fixtures.hpp"
#include "idpack/hyperbolic.hpp"
#include "idpack/io.hpp"

using namespace idpack;

namespace {

struct CommonOpts {
  std::string input;
  std::string output;
  std::string trace_path;
  std::string flip_log_path;
  std::string method;  // empty: keep the file's config
  std::string target = "file";
  double tol = -1.0;
  int max_iters = -1;
  long flip_budget = -2;
  std::uint64_t seed = 0x1dc1;
  int samples = 1000;
};

FlowConfig make_config(const ProblemFile& pf, const CommonOpts& o) {
  FlowConfig cfg = pf.config;
  if (o.method == "euler")
    cfg.method = FlowConfig::Method::euler;
  else if (o.method == "newton")
    cfg.method = FlowConfig::Method::newton;
  if (o.tol > 0) cfg.tol = o.tol;
  if (o.max_iters > 0) cfg.max_iters = o.max_iters;
  if (o.flip_budget >= -1) cfg.flip_budget = o.flip_budget;
  return cfg;
}

Eigen::VectorXd resolve_target(const ProblemFile& pf, const CommonOpts& o) {
  if (o.target == "uniform" || !pf.target) return uniform_target(pf.packing.tri);
  return *pf.target;
}

void print_slacks(const Packing& pk) {
  for (Index e = 0; e < pk.tri.num_edges(); ++e) {
    const auto [u, v] = pk.tri.edge_endpoints(e);
    const double slack = local_delaunay_slack(hinge_data(pk, e));
    std::printf("edge %3d  (%d-%d)  inv_dist %.12g  slack %+.12g\n", e, u, v,
                pk.inv_dist[e], slack);
  }
}

int cmd_validate(const CommonOpts& o) {
  const ProblemFile pf = read_problem_file(o.input);
  const Packing& pk = pf.packing;
  std::printf("vertices %d  edges %d  faces %d  chi %d\n",
              pk.tri.num_vertices(), pk.tri.num_edges(), pk.tri.num_faces(),
              pk.tri.euler_characteristic());
  print_slacks(pk);
  if (pf.target) {
    const double gb = pf.target->sum() -
                      2.0 * M_PI * pk.tri.euler_characteristic();
    std::printf("target gauss-bonnet residual %.3g\n", gb);
  }
  return 0;
}

int cmd_curvature(const CommonOpts& o) {
  const ProblemFile pf = read_problem_file(o.input);
  const CurvatureState st = curvature(pf.packing);
  for (Index v = 0; v < st.curvature.size(); ++v)
    std::printf("vertex %3d  cone angle %.15g  curvature %+.15g\n", v,
                st.cone_angles[v], st.curvature[v]);
  std::printf("gauss-bonnet residual %.3g\n",
              st.curvature.sum() -
                  2.0 * M_PI * pf.packing.tri.euler_characteristic());
  return 0;
}

int cmd_delaunayize(const CommonOpts& o) {
  ProblemFile pf = read_problem_file(o.input);
  const double rel_tol = o.tol > 0 ? o.tol : 1e-12;
  const long budget = o.flip_budget >= -1 ? o.flip_budget : -1;
  DelaunayResult res = delaunayize(pf.packing, rel_tol, budget);
  std::printf("%zu flips\n", res.flips.size());
  pf.packing = std::move(res.packing);
  write_problem_file(o.output, pf);
  const std::string log_path =
      o.flip_log_path.empty() ? o.output + ".flips.json" : o.flip_log_path;
  write_flip_log_file(log_path, res.flips);
  return 0;
}

int cmd_flow(const CommonOpts& o) {
  ProblemFile pf = read_problem_file(o.input);
  const FlowConfig cfg = make_config(pf, o);
  const Eigen::VectorXd target = resolve_target(pf, o);
  FlowResult res = cfg.method == FlowConfig::Method::euler
                       ? flow_euler(pf.packing, target, cfg)
                       : flow_newton(pf.packing, target, cfg);
  const FlowStep& last = res.trace.steps.back();
  std::printf("converged in %d iterations, max error %.3g, %ld flips\n",
              last.iter, last.max_err, res.trace.total_flips);
  pf.packing = std::move(res.packing);
  write_problem_file(o.output, pf);
  const std::string trace_path =
      o.trace_path.empty() ? o.output + ".trace.csv" : o.trace_path;
  write_trace_csv_file(trace_path, res.trace);
  return 0;
}

int cmd_canonical(const CommonOpts& o) {
  ProblemFile pf = read_problem_file(o.input);
  pf.packing = canonical_form(pf.packing, make_config(pf, o));
  write_problem_file(o.output, pf);
  std::printf("canonical form written to %s\n", o.output.c_str());
  return 0;
}

int cmd_equiv(const CommonOpts& o, const std::string& other) {
  const ProblemFile a = read_problem_file(o.input);
  const ProblemFile b = read_problem_file(other);
  const double tol = o.tol > 0 ? o.tol : 1e-8;
  const bool eq = equivalent(a.packing, b.packing, tol);
  std::printf("equivalent: %s\n", eq ? "true" : "false");
  return 0;
}

int cmd_selftest(const CommonOpts& o) {
  std::mt19937_64 gen(o.seed);
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  };
  auto logu = [&](double lo, double hi) {
    return std::exp(uni(std::log(lo), std::log(hi)));
  };

  double worst_ptolemy = 0.0, worst_delta = 0.0;
  for (int i = 0; i < o.samples; ++i) {
    const double a = uni(1.0 + 1e-9, 50), b = uni(1.0 + 1e-9, 50),
                 c = uni(1.0 + 1e-9, 50), d = uni(1.0 + 1e-9, 50),
                 e = uni(1.0 + 1e-9, 50);
    const double f = ptolemy_f(a, b, c, d, e);
    double scale = 1.0;
    for (double t : {a * a, b * b, c * c, d * d, e * e, f * f, e * e * f * f,
                     a * a * c * c, b * b * d * d, 2 * a * b * c * d,
                     2 * a * c * e * f, 2 * b * d * e * f})
      scale = std::max(scale, t);
    worst_ptolemy = std::max(
        worst_ptolemy, std::abs(ptolemy_residual(a, b, c, d, e, f)) / scale);
    const auto [s_abf, s_cdf] = delta_propagation(a, b, c, d, e);
    worst_delta = std::max(
        worst_delta,
        std::abs(s_abf - std::sqrt(discriminant(a, b, f))) / s_abf);
    worst_delta = std::max(
        worst_delta,
        std::abs(s_cdf - std::sqrt(discriminant(c, d, f))) / s_cdf);
  }

  double worst_wall = 0.0;
  int wall_samples = 0;
  while (wall_samples < std::max(1, o.samples / 10)) {
    const double q = logu(0.5, 2), r = logu(0.5, 2), s = logu(0.5, 2);
    const double a = uni(1.2, 5), b = uni(1.2, 5), c = uni(1.2, 5),
                 d = uni(1.2, 5), e = uni(1.2, 5);
    try {
      const double p = delaunay_equality_radius(q, r, s, a, b, c, d, e);
      if (p < 1.2 * degeneracy_radius(q, s, a, d, e)) continue;
      develop_hinge(HingeData{a, b, c, d, e, p, q, r, s});
      worst_wall = std::max(
          worst_wall, wall_gradient_deviation(q, r, s, a, b, c, d, e, 1e-5));
      ++wall_samples;
    } catch (const Error&) {
      continue;
    }
  }

  double worst_fd = 0.0;
  for (int rep = 0; rep < std::max(1, o.samples / 50); ++rep) {
    Packing pk = fixtures::equilateral_packing(
        rep % 2 ? fixtures::two_vertex_torus()
                : fixtures::three_vertex_sphere());
    for (double& I : pk.inv_dist) I = uni(1.5, 3.0);
    for (double& rr : pk.radii) rr = logu(0.75, 1.35);
    pk = delaunayize(pk).packing;
    const Index n = pk.tri.num_vertices();
    const Eigen::MatrixXd J = Eigen::MatrixXd(curvature_jacobian(pk));
    const double scale = J.cwiseAbs().maxCoeff();
    for (Index j = 0; j < n; ++j) {
      Packing hi = pk, lo = pk;
      hi.radii[j] *= std::exp(1e-6);
      lo.radii[j] *= std::exp(-1e-6);
      const Eigen::VectorXd col =
          (curvature(hi).curvature - curvature(lo).curvature) / 2e-6;
      for (Index i = 0; i < n; ++i)
        worst_fd = std::max(worst_fd, std::abs(J(i, j) - col[i]) / scale);
    }
  }

  const bool ok = worst_ptolemy < 1e-10 && worst_delta < 1e-10 &&
                  worst_wall < 1e-4 && worst_fd < 1e-5;
  std::printf("ptolemy residual      %.3g  (threshold 1e-10)\n", worst_ptolemy);
  std::printf("delta propagation     %.3g  (threshold 1e-10)\n", worst_delta);
  std::printf("wall gradient match   %.3g  (threshold 1e-4)\n", worst_wall);
  std::printf("jacobian fd match     %.3g  (threshold 1e-5)\n", worst_fd);
  std::printf("%s\n", ok ? "all residuals within thresholds" : "FAILED");
  return ok ? 0 : 1;
}

void emit_error_json(const std::string& code, const std::string& msg) {
  std::fprintf(stderr, "{\"error\": {\"code\": \"%s\", \"message\": \"%s\"}}\n",
               code.c_str(), msg.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inversive distance circle packing solver"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_common = [&](CLI::App* sub, bool needs_output) {
    sub->add_option("input", o.input, "problem JSON file")->required();
    auto* out = sub->add_option("-o,--output", o.output, "output problem file");
    if (needs_output) out->required();
    sub->add_option("--tol", o.tol, "tolerance override");
    sub->add_option("--max-iters", o.max_iters, "iteration cap override");
    sub->add_option("--flip-budget", o.flip_budget, "surgery flip budget");
  };

  auto* validate = app.add_subcommand("validate", "check a problem file");
  add_common(validate, false);

  auto* curvature_cmd =
      app.add_subcommand("curvature", "print discrete curvatures");
  add_common(curvature_cmd, false);

  auto* delaunayize_cmd = app.add_subcommand(
      "delaunayize", "flip to a weighted Delaunay triangulation");
  add_common(delaunayize_cmd, true);
  delaunayize_cmd->add_option("--flip-log", o.flip_log_path,
                              "flip log path (default <output>.flips.json)");

  auto* flow = app.add_subcommand("flow", "run the discrete Ricci flow");
  add_common(flow, true);
  flow->add_option("--method", o.method, "euler or newton")
      ->check(CLI::IsMember({"euler", "newton"}));
  flow->add_option("--target", o.target,
                   "'uniform' or 'file' (use the file's target section)")
      ->check(CLI::IsMember({"uniform", "file"}));
  flow->add_option("--trace", o.trace_path,
                   "trace CSV path (default <output>.trace.csv)");

  auto* canonical =
      app.add_subcommand("canonical", "canonical form of the conformal class");
  add_common(canonical, true);

  auto* equiv = app.add_subcommand(
      "equiv", "decide discrete conformal equivalence of two problem files");
  std::string other;
  equiv->add_option("input", o.input, "first problem file")->required();
  equiv->add_option("other", other, "second problem file")->required();
  equiv->add_option("--tol", o.tol, "componentwise tolerance");

  auto* selftest =
      app.add_subcommand("selftest", "randomized identity and oracle suites");
  selftest->add_option("--samples", o.samples, "sample count");
  selftest->add_option("--seed", o.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (curvature_cmd->parsed()) return cmd_curvature(o);
    if (delaunayize_cmd->parsed()) return cmd_delaunayize(o);
    if (flow->parsed()) return cmd_flow(o);
    if (canonical->parsed()) return cmd_canonical(o);
    if (equiv->parsed()) return cmd_equiv(o, other);
    if (selftest->parsed()) return cmd_selftest(o);
  } catch (const IoError& ex) {
    emit_error_json(ex.code(), ex.what());
    return 3;
  } catch (const MaxIterationsError& ex) {
    emit_error_json(ex.code(), ex.what());
    return 2;
  } catch (const FlipBudgetError& ex) {
    emit_error_json(ex.code(), ex.what());
    return 2;
  } catch (const SingularBeyondKernelError& ex) {
    emit_error_json(ex.code(), ex.what());
    return 2;
  } catch (const Error& ex) {
    emit_error_json(ex.code(), ex.what());
    return 1;
  }
  return 0;
}
