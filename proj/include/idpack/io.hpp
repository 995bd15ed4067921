#ifndef IDPACK_IO_HPP
#define IDPACK_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "idpack/hyperbolic.hpp"

namespace idpack {

// On-disk problem description: a mesh section (num_vertices, faces, twins),
// a packing section in euclidean ("inv_dist") or hyperbolic ("lengths")
// coordinates, an optional per-vertex target curvature and optional solver
// config overrides.
struct ProblemFile {
  Packing packing;                       // always stored in euclidean form
  bool hyperbolic_coords = false;        // serialize as lengths instead
  std::optional<Eigen::VectorXd> target;
  FlowConfig config;

  Eigen::VectorXd effective_target() const {
    return target ? *target : uniform_target(packing.tri);
  }
};

ProblemFile read_problem(std::istream& in);
ProblemFile read_problem_file(const std::string& path);
void write_problem(std::ostream& out, const ProblemFile& pf);
void write_problem_file(const std::string& path, const ProblemFile& pf);

// one line per flip: {"edge": e, "old_inv_dist": ..., "new_inv_dist": ...}
void write_flip_log(std::ostream& out, const std::vector<FlipRecord>& flips);
void write_flip_log_file(const std::string& path,
                         const std::vector<FlipRecord>& flips);

// CSV columns: iter,max_err,merit,flips,step
void write_trace_csv(std::ostream& out, const FlowTrace& trace);
void write_trace_csv_file(const std::string& path, const FlowTrace& trace);

std::string trace_to_json(const FlowTrace& trace);

}  // namespace idpack

#endif
