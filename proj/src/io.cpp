#include "idpack/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace idpack {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw IoError(std::string("JSON parse failure: ") + ex.what());
  }
}

template <typename T>
T fetch(const json& j, const char* key) {
  if (!j.contains(key))
    throw IoError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw IoError(std::string("bad value for \"") + key + "\": " + ex.what());
  }
}

FlowConfig parse_config(const json& j) {
  FlowConfig cfg;
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "euler")
      cfg.method = FlowConfig::Method::euler;
    else if (m == "newton")
      cfg.method = FlowConfig::Method::newton;
    else
      throw IoError("unknown method \"" + m + "\"");
  }
  if (j.contains("step")) cfg.euler_step = j.at("step").get<double>();
  if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
  if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
  if (j.contains("flip_tol")) cfg.flip_tol = j.at("flip_tol").get<double>();
  if (j.contains("flip_budget"))
    cfg.flip_budget = j.at("flip_budget").get<long>();
  return cfg;
}

}  // namespace

ProblemFile read_problem(std::istream& in) {
  const json j = parse(in);
  if (!j.contains("mesh") || !j.contains("packing"))
    throw IoError("problem file needs \"mesh\" and \"packing\" sections");

  const json& jm = j.at("mesh");
  const auto n = fetch<Index>(jm, "num_vertices");
  const auto faces = fetch<std::vector<std::array<Index, 3>>>(jm, "faces");
  const auto twins = fetch<std::vector<Index>>(jm, "twins");

  ProblemFile pf;
  pf.packing.tri = Triangulation::build(n, faces, twins);

  const json& jp = j.at("packing");
  const auto coords = fetch<std::string>(jp, "coords");
  pf.packing.radii = fetch<std::vector<double>>(jp, "radii");
  if (coords == "euclidean") {
    pf.packing.inv_dist = fetch<std::vector<double>>(jp, "inv_dist");
  } else if (coords == "hyperbolic") {
    pf.hyperbolic_coords = true;
    const auto lengths = fetch<std::vector<double>>(jp, "lengths");
    pf.packing.inv_dist.reserve(lengths.size());
    for (double x : lengths) pf.packing.inv_dist.push_back(std::cosh(x));
  } else {
    throw IoError("unknown coords \"" + coords + "\"");
  }
  pf.packing.validate();

  if (j.contains("target")) {
    const auto k = fetch<std::vector<double>>(j.at("target"), "curvature");
    pf.target = Eigen::Map<const Eigen::VectorXd>(k.data(), k.size());
    if (pf.target->size() != pf.packing.tri.num_vertices())
      throw IoError("target length does not match the vertex count");
    const double gb = pf.target->sum() -
                      2.0 * std::numbers::pi *
                          pf.packing.tri.euler_characteristic();
    if (std::abs(gb) > 1e-9)
      throw TargetInvalidError("target curvature violates Gauss-Bonnet by " +
                               std::to_string(gb));
    for (Eigen::Index i = 0; i < pf.target->size(); ++i)
      if (!((*pf.target)[i] < 2.0 * std::numbers::pi))
        throw TargetInvalidError("target curvature at vertex " +
                                 std::to_string(i) + " is not below 2*pi");
  }
  if (j.contains("config")) pf.config = parse_config(j.at("config"));
  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  return read_problem(in);
}

void write_problem(std::ostream& out, const ProblemFile& pf) {
  // numbers are emitted as raw 17-significant-digit literals so that a
  // read-write-read cycle is value identical
  const Packing& pk = pf.packing;
  out << "{\n  \"mesh\": {\n    \"num_vertices\": " << pk.tri.num_vertices()
      << ",\n    \"faces\": [";
  for (Index f = 0; f < pk.tri.num_faces(); ++f) {
    const auto& t = pk.tri.faces()[f];
    out << (f ? ", " : "") << "[" << t[0] << ", " << t[1] << ", " << t[2]
        << "]";
  }
  out << "],\n    \"twins\": [";
  for (size_t i = 0; i < pk.tri.twins().size(); ++i)
    out << (i ? ", " : "") << pk.tri.twins()[i];
  out << "]\n  },\n  \"packing\": {\n    \"coords\": \""
      << (pf.hyperbolic_coords ? "hyperbolic" : "euclidean") << "\",\n    \""
      << (pf.hyperbolic_coords ? "lengths" : "inv_dist") << "\": [";
  for (size_t e = 0; e < pk.inv_dist.size(); ++e)
    out << (e ? ", " : "")
        << fmt17(pf.hyperbolic_coords ? std::acosh(pk.inv_dist[e])
                                      : pk.inv_dist[e]);
  out << "],\n    \"radii\": [";
  for (size_t v = 0; v < pk.radii.size(); ++v)
    out << (v ? ", " : "") << fmt17(pk.radii[v]);
  out << "]\n  }";
  if (pf.target) {
    out << ",\n  \"target\": {\n    \"curvature\": [";
    for (Eigen::Index i = 0; i < pf.target->size(); ++i)
      out << (i ? ", " : "") << fmt17((*pf.target)[i]);
    out << "]\n  }";
  }
  out << "\n}\n";
}

void write_problem_file(const std::string& path, const ProblemFile& pf) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  write_problem(out, pf);
}

void write_flip_log(std::ostream& out, const std::vector<FlipRecord>& flips) {
  out << "{\n  \"flips\": [";
  for (size_t i = 0; i < flips.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << "{\"edge\": " << flips[i].edge
        << ", \"old_inv_dist\": " << fmt17(flips[i].old_inv_dist)
        << ", \"new_inv_dist\": " << fmt17(flips[i].new_inv_dist) << "}";
  }
  out << (flips.empty() ? "]" : "\n  ]") << "\n}\n";
}

void write_flip_log_file(const std::string& path,
                         const std::vector<FlipRecord>& flips) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  write_flip_log(out, flips);
}

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
  out << "iter,max_err,merit,flips,step\n";
  for (const FlowStep& s : trace.steps)
    out << s.iter << "," << fmt17(s.max_err) << "," << fmt17(s.merit) << ","
        << s.flips << "," << fmt17(s.step) << "\n";
}

void write_trace_csv_file(const std::string& path, const FlowTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  write_trace_csv(out, trace);
}

std::string trace_to_json(const FlowTrace& trace) {
  json steps = json::array();
  for (const FlowStep& s : trace.steps)
    steps.push_back({{"iter", s.iter},
                     {"max_err", s.max_err},
                     {"merit", s.merit},
                     {"flips", s.flips},
                     {"step", s.step},
                     {"edges", s.edges},
                     {"gb_residual", s.gb_residual}});
  json j = {{"steps", steps},
            {"total_flips", trace.total_flips},
            {"converged", trace.converged}};
  return j.dump(2);
}

}  // namespace idpack
