#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swimopt/pipeline.hpp"

namespace swimopt {

enum class Problem { max_efficiency, min_drag };

Problem parse_problem(const std::string& name);  // "max-eff" | "min-drag"
std::string problem_name(Problem p);

struct ALMOptions {
  double lambda0 = 0.0;
  double sigma0 = 0.0;  // 0 picks 10 for drag and 1000 for efficiency
  double gamma = 10.0;  // penalty growth
  double rho = 0.25;    // required shrink of |C| per outer iteration
  double c_tol = 1e-6;
  int max_outer = 20;
};

struct ALMState {
  double lambda = 0.0;
  double sigma = 10.0;
  int outer_iter = 0;
  double last_C = INFINITY;
  std::vector<double> objective_trace, constraint_trace;
};

ALMState initial_state(const ALMOptions& opts, Problem problem = Problem::min_drag);

/// L_A = s J - lambda C + sigma/2 C^2 with s = -1 for efficiency (J = E) and
/// s = +1 for drag (J = J_drag); C = nu - nu0.
struct AugmentedValue {
  double L = 0.0;
  Eigen::VectorXd grad;
};
AugmentedValue augmented_lagrangian(Problem problem, double J, const Eigen::VectorXd& dJ, double C,
                                    const Eigen::VectorXd& dC, const ALMState& state);

/// lambda <- lambda - sigma C; sigma <- gamma sigma unless |C| shrank by rho.
ALMState update_multipliers(const ALMState& state, double C, const ALMOptions& opts);

struct BfgsOptions {
  double g_tol = 1e-6;
  int max_iter = 200;
  double c1 = 1e-4;  // sufficient decrease
  int max_line_evals = 30;
  double max_step = INFINITY;  // cap on the max-norm of the first trial step
};

/// Objective value and gradient; std::nullopt marks an inadmissible point
/// (treated as +infinity by the line search).
using ObjectiveFn = std::function<std::optional<std::pair<double, Eigen::VectorXd>>(const Eigen::VectorXd&)>;
/// Called after each accepted step. May move x along directions that leave
/// the objective unchanged and returns the factor by which the gradient scales.
using ProjectFn = std::function<double(Eigen::VectorXd&)>;

struct BfgsResult {
  Eigen::VectorXd x, grad;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;           // gradient norm below g_tol
  bool line_search_failed = false;  // stopped on a failed line search
  std::vector<double> history;      // f after every accepted step
};

/// Half-space a . x >= b. Bounds passed together must act on disjoint
/// coordinates so that projecting onto each in turn is exact.
struct LinearBound {
  Eigen::VectorXd a;
  double b = 0.0;
};
void project_bounds(Eigen::VectorXd& x, const std::vector<LinearBound>& bounds);

/// Accepted iterate, reported after projection. `evaluation` is the 0-based
/// index of the objective call that produced it.
struct BfgsStep {
  int iteration = 0;
  int evaluation = 0;
  const Eigen::VectorXd* x = nullptr;
  double f = 0.0;
  double grad_norm = 0.0;
};
using StepObserver = std::function<void(const BfgsStep&)>;

/// Projected BFGS: trial points are projected onto the bounds and the
/// gradient is stripped of components pushing into active bounds. A non-empty
/// `inverse_hessian` seeds the run and receives the final approximation.
/// Throws std::invalid_argument if x0 is inadmissible.
BfgsResult bfgs_minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0, const BfgsOptions& opts,
                         const ProjectFn& project = nullptr, const StepObserver& observer = nullptr,
                         const std::vector<LinearBound>& bounds = {},
                         Eigen::MatrixXd* inverse_hessian = nullptr);

struct OptOptions {
  ALMOptions alm;
  BfgsOptions bfgs{.max_step = 0.05};
  Discretization disc;
  bool normalize_area = true;  // keep A = 4 pi and the centroid on z = 0
  double min_pole_slope = 0.05;  // |R'| at both poles; 0 disables the bound
  // optional: shapes beyond these are rejected like self-intersecting ones.
  // Fine shape bases let grooves add area at almost no drag cost.
  double max_concave_turn = INFINITY;
  double max_panel_turn = INFINITY;
  bool verbose = false;
};

/// One accepted shape.
struct Snapshot {
  int outer = 0, inner = 0;
  double objective = 0.0;  // E or J_drag
  double E = 0.0, J_drag = 0.0, nu = 0.0, C = 0.0, grad_norm = 0.0;
  double lambda = 0.0, sigma = 0.0;
  Eigen::VectorXd params;
};

struct OptResult {
  Problem problem = Problem::max_efficiency;
  GeneratingCurve curve;
  Eigen::VectorXd params;
  double objective = 0.0, E = 0.0, J_drag = 0.0, nu = 0.0;
  int outer_iterations = 0, inner_iterations = 0, evaluations = 0;
  bool converged = false;         // |C| <= c_tol and the last inner run settled
  bool constraint_met = false;
  std::vector<Snapshot> snapshots;
};

using SnapshotFn = std::function<void(const Snapshot&)>;

/// Augmented-Lagrangian shape optimisation at fixed reduced volume nu0. Every
/// evaluation re-solves the flow problems on the current shape, so the slip
/// used for E is always the optimum of that shape.
OptResult optimize_shape(Problem problem, const GeneratingCurve& init, double nu0,
                         const OptOptions& opts, const SnapshotFn& on_snapshot = nullptr);

/// R'(0) >= s and -R'(pi) >= s as bounds on the free parameters.
std::vector<LinearBound> pole_slope_bounds(const BasisSet& basis, double s);

/// Rescale to area 4 pi and move the volume centroid to z = 0. Returns the
/// scale factor applied to the coefficients.
double normalize_shape(Eigen::VectorXd& free, const BasisSet& basis, const PanelGrid& grid);

}  // namespace swimopt
