#ifndef IDPACK_FLOW_HPP
#define IDPACK_FLOW_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <optional>
#include <vector>

#include "idpack/delaunay.hpp"

namespace idpack {

struct CurvatureState {
  Eigen::VectorXd cone_angles;            // phi_i, sum of incident corners
  Eigen::VectorXd curvature;              // K_i = 2*pi - phi_i
  Eigen::SparseMatrix<double> jacobian;   // dK/du, u = log r (may be empty)
};

struct FlowConfig {
  enum class Method { euler, newton };
  Method method = Method::newton;
  double euler_step = 0.2;
  double armijo = 1e-4;       // sufficient-decrease constant for newton
  double tol = 1e-10;         // convergence threshold on max|K - target|
  int max_iters = 200;
  double flip_tol = 1e-12;    // relative Delaunay slack tolerance
  long flip_budget = -1;      // < 0: 100 * |E|
};

struct FlowStep {
  int iter;
  double max_err;      // max|K - target|
  double merit;        // 0.5 * ||K - target||^2
  int flips;           // surgery flips performed this step
  double step;         // accepted step length
  Index edges;
  double gb_residual;  // |sum K - 2 pi chi|
};

struct FlowTrace {
  std::vector<FlowStep> steps;
  long total_flips = 0;
  bool converged = false;
};

struct FlowResult {
  Packing packing;
  FlowTrace trace;
};

// Cone angles and discrete curvatures; requires every face to satisfy the
// triangle inequality. Self-glued faces contribute once per corner.
CurvatureState curvature(const Packing& pk);

// dK/du assembled from per-face blocks: entry (i,j) of an edge is
// -(h_{ij,k} + h_{ij,l}) / l_ij, diagonal entries the positive row
// complement. Symmetric, positive semidefinite with kernel (1,...,1) on
// weighted Delaunay packings.
Eigen::SparseMatrix<double> curvature_jacobian(const Packing& pk);

// K_bar_i = 2 pi chi / n for every vertex; always admissible.
Eigen::VectorXd uniform_target(const Triangulation& tri);

// Line integral of sum_i (K_i - target_i) du_i along the straight segment
// from u_from to u_to, composite 4-point Gauss quadrature with `segments`
// panels, Delaunay surgery at every node. Empty target means uniform.
double ricci_potential_delta(const Packing& pk, const Eigen::VectorXd& u_from,
                             const Eigen::VectorXd& u_to, int segments,
                             const std::optional<Eigen::VectorXd>& target = {});

// Explicit Euler discrete Ricci flow u <- u - step (K - target) with
// Delaunay surgery after every step and step halving whenever the merit
// would increase. Throws TargetInvalidError, MaxIterationsError,
// FlipBudgetError.
FlowResult flow_euler(const Packing& pk, const Eigen::VectorXd& target,
                      const FlowConfig& cfg = {});

// Damped Newton on the Ricci potential: solves dK/du * delta = -(K - target)
// through the rank-one corrected system, projects delta onto sum = 0, and
// backtracks on the merit with an Armijo condition. Additionally throws
// SingularBeyondKernelError when the Jacobian drops rank beyond its
// one-dimensional kernel.
FlowResult flow_newton(const Packing& pk, const Eigen::VectorXd& target,
                       const FlowConfig& cfg = {});

// Runs flow_newton from `trials` random radius perturbations inside the same
// conformal class and checks that all results agree componentwise after
// sum(u) = 0 normalization.
bool verify_uniqueness(const Packing& pk, const Eigen::VectorXd& target,
                       int trials, double tol, std::uint64_t seed = 0x5eed,
                       const FlowConfig& cfg = {});

}  // namespace idpack

#endif
