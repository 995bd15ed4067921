#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "idpack/fixtures.hpp"
#include "idpack/hyperbolic.hpp"
#include "idpack/io.hpp"

namespace py = pybind11;
using namespace idpack;

namespace {

FlowConfig config_from_kwargs(double tol, int max_iters, double euler_step,
                              double flip_tol, long flip_budget) {
  FlowConfig cfg;
  cfg.tol = tol;
  cfg.max_iters = max_iters;
  cfg.euler_step = euler_step;
  cfg.flip_tol = flip_tol;
  cfg.flip_budget = flip_budget;
  return cfg;
}

py::list trace_to_list(const FlowTrace& trace) {
  py::list out;
  for (const FlowStep& s : trace.steps) {
    py::dict d;
    d["iter"] = s.iter;
    d["max_err"] = s.max_err;
    d["merit"] = s.merit;
    d["flips"] = s.flips;
    d["step"] = s.step;
    d["edges"] = s.edges;
    d["gb_residual"] = s.gb_residual;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_idpack, m) {
  m.doc() = "inversive distance circle packings: weighted Delaunay surgery "
            "and discrete Ricci flow on closed triangulated surfaces";

  py::register_exception<Error>(m, "IdpackError");

  py::class_<Hinge>(m, "Hinge")
      .def_readonly("edge", &Hinge::edge)
      .def_readonly("left_face", &Hinge::left_face)
      .def_readonly("right_face", &Hinge::right_face)
      .def_readonly("vk", &Hinge::vk)
      .def_readonly("vi", &Hinge::vi)
      .def_readonly("vl", &Hinge::vl)
      .def_readonly("vj", &Hinge::vj)
      .def_readonly("edge_ki", &Hinge::edge_ki)
      .def_readonly("edge_il", &Hinge::edge_il)
      .def_readonly("edge_lj", &Hinge::edge_lj)
      .def_readonly("edge_jk", &Hinge::edge_jk);

  py::class_<Triangulation>(m, "Triangulation")
      .def(py::init([](Index n, std::vector<std::array<Index, 3>> faces,
                       std::vector<Index> twins) {
             return Triangulation::build(n, std::move(faces), std::move(twins));
           }),
           py::arg("num_vertices"), py::arg("faces"), py::arg("twins"))
      .def_property_readonly("num_vertices", &Triangulation::num_vertices)
      .def_property_readonly("num_edges", &Triangulation::num_edges)
      .def_property_readonly("num_faces", &Triangulation::num_faces)
      .def_property_readonly("euler_characteristic",
                             &Triangulation::euler_characteristic)
      .def_property_readonly("faces", &Triangulation::faces)
      .def_property_readonly("twins", &Triangulation::twins)
      .def("edge_endpoints", &Triangulation::edge_endpoints, py::arg("edge"))
      .def("hinge_at", &Triangulation::hinge_at, py::arg("edge"))
      .def("flippable", &Triangulation::flippable, py::arg("edge"))
      .def("flip", &Triangulation::flip, py::arg("edge"))
      .def("__eq__",
           [](const Triangulation& a, const Triangulation& b) { return a == b; })
      .def("__repr__", [](const Triangulation& t) {
        std::ostringstream os;
        os << "Triangulation(V=" << t.num_vertices() << ", E=" << t.num_edges()
           << ", F=" << t.num_faces() << ", chi=" << t.euler_characteristic()
           << ")";
        return os.str();
      });

  m.def("flip_distance_path", &flip_distance_path, py::arg("from_tri"),
        py::arg("to_tri"), py::arg("cap") = 20000);

  py::class_<Packing>(m, "Packing")
      .def(py::init([](Triangulation tri, std::vector<double> inv_dist,
                       std::vector<double> radii) {
             Packing pk{std::move(tri), std::move(inv_dist), std::move(radii)};
             pk.validate();
             return pk;
           }),
           py::arg("tri"), py::arg("inv_dist"), py::arg("radii"))
      .def_readonly("tri", &Packing::tri)
      .def_readonly("inv_dist", &Packing::inv_dist)
      .def_readonly("radii", &Packing::radii);

  py::class_<HingeData>(m, "HingeData")
      .def(py::init([](double a, double b, double c, double d, double e,
                       double p, double q, double r, double s) {
             return HingeData{a, b, c, d, e, p, q, r, s};
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"),
           py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"))
      .def_readonly("a", &HingeData::a)
      .def_readonly("b", &HingeData::b)
      .def_readonly("c", &HingeData::c)
      .def_readonly("d", &HingeData::d)
      .def_readonly("e", &HingeData::e)
      .def_readonly("p", &HingeData::p)
      .def_readonly("q", &HingeData::q)
      .def_readonly("r", &HingeData::r)
      .def_readonly("s", &HingeData::s);

  py::class_<TriangleGeometry>(m, "TriangleGeometry")
      .def_readonly("lengths", &TriangleGeometry::lengths)
      .def_readonly("angles", &TriangleGeometry::angles)
      .def_readonly("area", &TriangleGeometry::area)
      .def_readonly("ortho_radius", &TriangleGeometry::ortho_radius)
      .def_readonly("dual_dist", &TriangleGeometry::dual_dist);

  py::class_<HingeDevelopment>(m, "HingeDevelopment")
      .def_readonly("vk", &HingeDevelopment::vk)
      .def_readonly("vi", &HingeDevelopment::vi)
      .def_readonly("vl", &HingeDevelopment::vl)
      .def_readonly("vj", &HingeDevelopment::vj)
      .def_readonly("diagonal", &HingeDevelopment::diagonal)
      .def_readonly("apex_inversive", &HingeDevelopment::apex_inversive);

  m.def("hinge_data", &hinge_data, py::arg("packing"), py::arg("edge"));
  m.def("inversive_distance", &inversive_distance, py::arg("l"), py::arg("r1"),
        py::arg("r2"));
  m.def(
      "edge_length",
      [](double I, double r1, double r2, bool boundary_tolerant) {
        return edge_length(I, r1, r2,
                           boundary_tolerant ? BoundaryMode::tolerant
                                             : BoundaryMode::strict);
      },
      py::arg("inv_dist"), py::arg("r1"), py::arg("r2"),
      py::arg("boundary_tolerant") = false);
  m.def("discriminant", &discriminant, py::arg("a"), py::arg("b"),
        py::arg("c"));
  m.def(
      "triangle_geometry",
      [](double a, double b, double c, double ri, double rj, double rk) {
        return triangle_geometry(a, b, c, ri, rj, rk);
      },
      py::arg("a_jk"), py::arg("b_ki"), py::arg("c_ij"), py::arg("r_i"),
      py::arg("r_j"), py::arg("r_k"));
  m.def(
      "develop_hinge", [](const HingeData& h) { return develop_hinge(h); },
      py::arg("hinge"));

  m.def("ptolemy_f", &ptolemy_f, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("d"), py::arg("e"));
  m.def("ptolemy_residual", &ptolemy_residual, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("d"), py::arg("e"), py::arg("f"));
  m.def("delta_propagation", &delta_propagation, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("d"), py::arg("e"));
  m.def("local_delaunay_slack", &local_delaunay_slack, py::arg("hinge"));
  m.def("delaunay_equality_radius", &delaunay_equality_radius, py::arg("q"),
        py::arg("r"), py::arg("s"), py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("d"), py::arg("e"));
  m.def("degeneracy_radius", &degeneracy_radius, py::arg("q"), py::arg("s"),
        py::arg("a"), py::arg("d"), py::arg("e"));
  m.def("ushijima_forms", &ushijima_forms, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("d"), py::arg("e"));
  m.def("wall_gradient_deviation", &wall_gradient_deviation, py::arg("q"),
        py::arg("r"), py::arg("s"), py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("d"), py::arg("e"), py::arg("step") = 1e-5);

  m.def(
      "delaunayize",
      [](const Packing& pk, double rel_tol, long flip_budget) {
        DelaunayResult res = delaunayize(pk, rel_tol, flip_budget);
        py::list log;
        for (const FlipRecord& r : res.flips)
          log.append(py::make_tuple(r.edge, r.old_inv_dist, r.new_inv_dist));
        return py::make_tuple(res.packing, log);
      },
      py::arg("packing"), py::arg("rel_tol") = 1e-12,
      py::arg("flip_budget") = -1);

  m.def(
      "curvature",
      [](const Packing& pk) {
        const CurvatureState st = curvature(pk);
        return py::make_tuple(st.cone_angles, st.curvature);
      },
      py::arg("packing"), "returns (cone_angles, curvatures)");
  m.def(
      "curvature_jacobian",
      [](const Packing& pk) {
        return Eigen::MatrixXd(curvature_jacobian(pk));
      },
      py::arg("packing"));
  m.def("uniform_target", &uniform_target, py::arg("tri"));
  m.def(
      "ricci_potential_delta",
      [](const Packing& pk, const Eigen::VectorXd& u_from,
         const Eigen::VectorXd& u_to, int segments) {
        return ricci_potential_delta(pk, u_from, u_to, segments);
      },
      py::arg("packing"), py::arg("u_from"), py::arg("u_to"),
      py::arg("segments") = 64);

  const auto flow_wrapper = [](bool newton) {
    return [newton](const Packing& pk, const Eigen::VectorXd& target,
                    double tol, int max_iters, double euler_step,
                    double flip_tol, long flip_budget) {
      const FlowConfig cfg = config_from_kwargs(tol, max_iters, euler_step,
                                                flip_tol, flip_budget);
      FlowResult res = newton ? flow_newton(pk, target, cfg)
                              : flow_euler(pk, target, cfg);
      return py::make_tuple(res.packing, trace_to_list(res.trace));
    };
  };
  m.def("flow_newton", flow_wrapper(true), py::arg("packing"),
        py::arg("target"), py::arg("tol") = 1e-10, py::arg("max_iters") = 200,
        py::arg("euler_step") = 0.2, py::arg("flip_tol") = 1e-12,
        py::arg("flip_budget") = -1);
  m.def("flow_euler", flow_wrapper(false), py::arg("packing"),
        py::arg("target"), py::arg("tol") = 1e-10, py::arg("max_iters") = 200,
        py::arg("euler_step") = 0.2, py::arg("flip_tol") = 1e-12,
        py::arg("flip_budget") = -1);
  m.def(
      "verify_uniqueness",
      [](const Packing& pk, const Eigen::VectorXd& target, int trials,
         double tol, std::uint64_t seed) {
        return verify_uniqueness(pk, target, trials, tol, seed);
      },
      py::arg("packing"), py::arg("target"), py::arg("trials") = 5,
      py::arg("tol") = 1e-8, py::arg("seed") = 0x5eed);

  py::class_<HyperbolicCoords>(m, "HyperbolicCoords")
      .def_readonly("tri", &HyperbolicCoords::tri)
      .def_readonly("lengths", &HyperbolicCoords::lengths)
      .def_readonly("radii", &HyperbolicCoords::radii);
  m.def("to_hyperbolic", &to_hyperbolic, py::arg("packing"),
        py::arg("rel_tol") = 1e-12);
  m.def("from_hyperbolic", &from_hyperbolic, py::arg("coords"),
        py::arg("rel_tol") = 1e-12);
  m.def("hyperbolic_local_delaunay_slack", &hyperbolic_local_delaunay_slack,
        py::arg("x_a"), py::arg("x_b"), py::arg("x_c"), py::arg("x_d"),
        py::arg("x_e"), py::arg("p"), py::arg("q"), py::arg("r"),
        py::arg("s"));
  m.def("hexagon_side", &hexagon_side, py::arg("x"), py::arg("y"),
        py::arg("z"));
  m.def(
      "canonical_form",
      [](const Packing& pk) { return canonical_form(pk); }, py::arg("packing"));
  m.def(
      "equivalent",
      [](const Packing& a, const Packing& b, double tol) {
        return equivalent(a, b, tol);
      },
      py::arg("packing1"), py::arg("packing2"), py::arg("tol") = 1e-8);

  m.def(
      "read_problem_file",
      [](const std::string& path) {
        const ProblemFile pf = read_problem_file(path);
        py::dict out;
        out["packing"] = pf.packing;
        out["hyperbolic_coords"] = pf.hyperbolic_coords;
        if (pf.target) out["target"] = *pf.target;
        return out;
      },
      py::arg("path"));
  m.def(
      "write_problem_file",
      [](const std::string& path, const Packing& pk, bool hyperbolic) {
        ProblemFile pf;
        pf.packing = pk;
        pf.hyperbolic_coords = hyperbolic;
        write_problem_file(path, pf);
      },
      py::arg("path"), py::arg("packing"), py::arg("hyperbolic") = false);

  auto fx = m.def_submodule("fixtures", "standard closed-surface complexes");
  fx.def("one_vertex_torus", &fixtures::one_vertex_torus);
  fx.def("two_vertex_torus", &fixtures::two_vertex_torus);
  fx.def("one_vertex_genus2", &fixtures::one_vertex_genus2);
  fx.def("three_vertex_sphere", &fixtures::three_vertex_sphere);
  fx.def("equilateral_packing", &fixtures::equilateral_packing, py::arg("tri"),
         py::arg("inv_dist") = 2.0, py::arg("radius") = 1.0);
}
