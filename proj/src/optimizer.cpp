#include "swimopt/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "swimopt/shapes.hpp"
#include "swimopt/stokes.hpp"

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Trial {
  double alpha = 0.0;
  int evaluation = -1;
  double f = 0.0;
  Eigen::VectorXd x, g;
};

}  // namespace

Problem parse_problem(const std::string& name) {
  if (name == "max-eff" || name == "max_efficiency") return Problem::max_efficiency;
  if (name == "min-drag" || name == "min_drag") return Problem::min_drag;
  throw std::invalid_argument("unknown problem '" + name + "' (expected max-eff or min-drag)");
}

std::string problem_name(Problem p) { return p == Problem::max_efficiency ? "max-eff" : "min-drag"; }

ALMState initial_state(const ALMOptions& opts, Problem problem) {
  if (opts.sigma0 < 0.0 || !std::isfinite(opts.sigma0)) throw std::invalid_argument("sigma0 must be positive");
  ALMState s;
  s.lambda = opts.lambda0;
  // E climbs steeply as nu drops, a weak penalty lets the first inner run escape
  s.sigma = opts.sigma0 > 0.0 ? opts.sigma0 : (problem == Problem::max_efficiency ? 1000.0 : 10.0);
  return s;
}

AugmentedValue augmented_lagrangian(Problem problem, double J, const Eigen::VectorXd& dJ, double C,
                                    const Eigen::VectorXd& dC, const ALMState& state) {
  const double sign = problem == Problem::max_efficiency ? -1.0 : 1.0;
  AugmentedValue v;
  v.L = sign * J - state.lambda * C + 0.5 * state.sigma * C * C;
  v.grad = sign * dJ + (state.sigma * C - state.lambda) * dC;
  return v;
}

ALMState update_multipliers(const ALMState& state, double C, const ALMOptions& opts) {
  ALMState next = state;
  next.lambda = state.lambda - state.sigma * C;
  if (std::abs(C) > opts.rho * std::abs(state.last_C)) next.sigma = opts.gamma * state.sigma;
  next.last_C = C;
  next.outer_iter = state.outer_iter + 1;
  return next;
}

void project_bounds(Eigen::VectorXd& x, const std::vector<LinearBound>& bounds) {
  for (const LinearBound& lb : bounds) {
    const double gap = lb.b - lb.a.dot(x);
    if (gap > 0.0) x += (gap / lb.a.squaredNorm()) * lb.a;
  }
}

namespace {

bool is_active(const LinearBound& lb, const Eigen::VectorXd& x) {
  return lb.a.dot(x) - lb.b <= 1e-10 * (1.0 + std::abs(lb.b)) * lb.a.norm();
}

// drop components of v that point out of the feasible set through active
// bounds; sign = +1 for gradients, -1 for search directions
Eigen::VectorXd strip_active(Eigen::VectorXd v, const Eigen::VectorXd& x,
                             const std::vector<LinearBound>& bounds, double sign) {
  for (const LinearBound& lb : bounds) {
    if (!is_active(lb, x)) continue;
    const double c = lb.a.dot(v);
    if (sign * c > 0.0) v -= (c / lb.a.squaredNorm()) * lb.a;
  }
  return v;
}

}  // namespace

BfgsResult bfgs_minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0, const BfgsOptions& opts,
                         const ProjectFn& project, const StepObserver& observer,
                         const std::vector<LinearBound>& bounds, Eigen::MatrixXd* inverse_hessian) {
  const Eigen::Index n = x0.size();
  BfgsResult res;
  int evals = 0;
  auto call = [&](const Eigen::VectorXd& x) {
    auto r = f(x);
    ++evals;
    return r;
  };

  auto first = call(x0);
  if (!first) throw std::invalid_argument("bfgs_minimize: starting point is inadmissible");
  res.x = x0;
  res.f = first->first;
  res.grad = first->second;
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  bool scaled_identity = true;  // H still a multiple of I, next update rescales it
  if (inverse_hessian && inverse_hessian->rows() == n && inverse_hessian->cols() == n) {
    H = *inverse_hessian;
    scaled_identity = false;
  }

  auto pgrad = [&]() { return strip_active(res.grad, res.x, bounds, 1.0); };
  for (int it = 0; it < opts.max_iter; ++it) {
    const Eigen::VectorXd pg = pgrad();
    if (pg.norm() <= opts.g_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd d = strip_active(-H * pg, res.x, bounds, -1.0);
    double slope = res.grad.dot(d);
    if (!(slope < 0.0)) {
      H.setIdentity();
      scaled_identity = true;
      d = -pg;
      slope = res.grad.dot(d);
    }
    double alpha = 1.0;
    const double dmax = d.cwiseAbs().maxCoeff();
    if (alpha * dmax > opts.max_step) alpha = opts.max_step / dmax;

    // backtracking on sufficient decrease; the curvature test y.s > 0 gates the update
    std::optional<Trial> accepted;
    for (int k = 0; k < opts.max_line_evals; ++k) {
      Eigen::VectorXd xt = res.x + alpha * d;
      project_bounds(xt, bounds);
      const int index = evals;
      auto r = call(xt);
      // along a projected path the decrease test uses the actual displacement
      const double expected = bounds.empty() ? alpha * slope : res.grad.dot(xt - res.x);
      if (r && std::isfinite(r->first) && r->first <= res.f + opts.c1 * expected) {
        accepted = Trial{alpha, index, r->first, std::move(xt), r->second};
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted && !scaled_identity) {
      // stale curvature; retry from steepest descent before giving up
      H.setIdentity();
      scaled_identity = true;
      --it;
      continue;
    }
    if (!accepted) {
      res.line_search_failed = true;
      break;
    }

    const Eigen::VectorXd s = accepted->x - res.x;
    const Eigen::VectorXd y = accepted->g - res.grad;
    const double ys = y.dot(s);
    if (ys > 1e-12 * s.norm() * y.norm()) {
      if (scaled_identity) {
        H = (ys / y.squaredNorm()) * Eigen::MatrixXd::Identity(n, n);
        scaled_identity = false;
      }
      const double rho = 1.0 / ys;
      const Eigen::VectorXd Hy = H * y;
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      H += rho * ((1.0 + rho * y.dot(Hy)) * s * s.transpose() - Hy * s.transpose() - s * Hy.transpose());
    } else {
      H.setIdentity();
      scaled_identity = true;
    }

    res.x = std::move(accepted->x);
    res.grad = std::move(accepted->g);
    res.f = accepted->f;
    if (project) {
      const double scale = project(res.x);
      res.grad /= scale;
    }
    res.iterations = it + 1;
    res.history.push_back(res.f);
    if (observer) observer({it + 1, accepted->evaluation, &res.x, res.f, pgrad().norm()});
  }
  if (!res.converged && pgrad().norm() <= opts.g_tol) res.converged = true;
  res.evaluations = evals;
  if (inverse_hessian) *inverse_hessian = H;
  return res;
}

std::vector<LinearBound> pole_slope_bounds(const BasisSet& basis, double s) {
  const int nfree = 2 * basis.size() - 4;
  LinearBound top, bottom;
  top.a.setZero(nfree);
  bottom.a.setZero(nfree);
  for (int k = 0; k < nfree; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nfree);
    e[k] = 1.0;
    const GeneratingCurve c = curve_from_free_params(e, basis);
    top.a[k] = c.at(0.0).dR;
    bottom.a[k] = -c.at(basis.domain_length()).dR;
  }
  top.b = bottom.b = s;
  return {top, bottom};
}

double normalize_shape(Eigen::VectorXd& free, const BasisSet& basis, const PanelGrid& grid) {
  const GeneratingCurve c = curve_from_free_params(free, basis);
  const GeometryCache g = geometry_at(c, grid);
  const Measures m = measures(g);
  // volume centroid: z_c = -pi int R^2 Z Z' dt / V
  double mz = 0.0;
  for (int i = 0; i < g.size(); ++i) mz += grid.w[i] * g.R[i] * g.R[i] * g.Z[i] * g.dZ[i];
  const double zc = -kPi * mz / m.V;
  const double scale = std::sqrt(4.0 * kPi / m.A);
  free = free_params(c.shifted(-zc).scaled(scale));
  return scale;
}

OptResult optimize_shape(Problem problem, const GeneratingCurve& init, double nu0,
                         const OptOptions& opts, const SnapshotFn& on_snapshot) {
  if (!(nu0 > 0.0 && nu0 <= 1.0)) throw std::invalid_argument("nu0 must lie in (0, 1]");
  if (!init.is_spline()) throw std::invalid_argument("optimize_shape needs a spline curve");
  opts.disc.validate();
  const BasisSet& basis = init.basis();
  if (basis.n_intervals() != opts.disc.n_intervals) {
    throw std::invalid_argument("initial curve and discretization disagree on n_intervals");
  }
  const PanelGrid grid = opts.disc.grid();
  const bool want_eff = problem == Problem::max_efficiency;

  if (nu0 == 1.0) {
    // only the sphere has nu = 1 and dnu vanishes there, so there is nothing to search
    OptResult out;
    out.problem = problem;
    out.curve = fit_curve(sphere_curve(), basis);
    out.params = free_params(out.curve);
    const ShapeEvaluation ev = evaluate_shape(out.curve, opts.disc, want_eff);
    out.E = want_eff ? ev.report.E : 0.0;
    out.J_drag = ev.J_drag;
    out.nu = ev.measures.nu;
    out.objective = want_eff ? out.E : out.J_drag;
    out.converged = out.constraint_met = std::abs(out.nu - 1.0) <= opts.alm.c_tol;
    return out;
  }

  struct Info {
    double J = 0.0, E = 0.0, J_drag = 0.0, nu = 0.0;
  };
  std::vector<Info> infos;
  ALMState state = initial_state(opts.alm, problem);

  // Returns J, dJ, nu, dnu; std::nullopt for inadmissible shapes.
  auto evaluate = [&](const Eigen::VectorXd& x)
      -> std::optional<std::tuple<Info, Eigen::VectorXd, Eigen::VectorXd>> {
    try {
      const GeneratingCurve c = curve_from_free_params(x, basis);
      const GeometryCache probe = geometry_at(c, grid);
      if (self_intersecting(probe)) return std::nullopt;
      const Turning tr = turning(probe);
      if (tr.concave > opts.max_concave_turn || tr.max_panel > opts.max_panel_turn) return std::nullopt;
      const ShapeEvaluation ev = evaluate_shape(c, opts.disc, want_eff);
      Info info;
      info.nu = ev.measures.nu;
      info.J_drag = ev.J_drag;
      info.E = want_eff ? ev.report.E : 0.0;
      info.J = want_eff ? info.E : info.J_drag;
      const Objective obj = want_eff ? Objective::efficiency : Objective::drag;
      Eigen::VectorXd dJ = gradient_vector(ev.geom, obj, ev.report).values;
      Eigen::VectorXd dnu = gradient_vector(ev.geom, Objective::reduced_volume, ev.report).values;
      if (!std::isfinite(info.J) || !dJ.allFinite()) return std::nullopt;
      return std::make_tuple(info, std::move(dJ), std::move(dnu));
    } catch (const GeometryError&) {
      return std::nullopt;
    } catch (const SolverError&) {
      return std::nullopt;
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
  };

  ObjectiveFn lagrangian = [&](const Eigen::VectorXd& x) -> std::optional<std::pair<double, Eigen::VectorXd>> {
    auto r = evaluate(x);
    if (!r) {
      infos.push_back({NAN, NAN, NAN, NAN});
      return std::nullopt;
    }
    auto& [info, dJ, dnu] = *r;
    infos.push_back(info);
    AugmentedValue v = augmented_lagrangian(problem, info.J, dJ, info.nu - nu0, dnu, state);
    return std::make_pair(v.L, std::move(v.grad));
  };

  ProjectFn project = nullptr;
  if (opts.normalize_area) {
    project = [&](Eigen::VectorXd& x) { return normalize_shape(x, basis, grid); };
  }

  std::vector<LinearBound> bounds;
  if (opts.min_pole_slope > 0.0) bounds = pole_slope_bounds(basis, opts.min_pole_slope);

  OptResult out;
  out.problem = problem;
  Eigen::VectorXd x = free_params(init);
  if (opts.normalize_area) normalize_shape(x, basis, grid);
  project_bounds(x, bounds);

  int outer = 0;
  Info last;
  Eigen::MatrixXd H;  // carried across outer iterations
  auto record = [&](int inner, const Info& info, double gnorm, const Eigen::VectorXd& params) {
    Snapshot s;
    s.outer = outer;
    s.inner = inner;
    s.objective = info.J;
    s.E = info.E;
    s.J_drag = info.J_drag;
    s.nu = info.nu;
    s.C = info.nu - nu0;
    s.grad_norm = gnorm;
    s.lambda = state.lambda;
    s.sigma = state.sigma;
    s.params = params;
    if (opts.verbose) {
      std::printf("%4d %4d  %s %.8f  nu %.8f  |C| %.2e  |g| %.2e\n", outer, inner,
                  want_eff ? "E" : "J_drag", s.objective, s.nu, std::abs(s.C), s.grad_norm);
      std::fflush(stdout);
    }
    if (on_snapshot) on_snapshot(s);
    out.snapshots.push_back(std::move(s));
  };

  for (outer = 0; outer < opts.alm.max_outer; ++outer) {
    infos.clear();
    StepObserver observer = [&](const BfgsStep& step) {
      record(step.iteration, infos[step.evaluation], step.grad_norm, *step.x);
    };
    BfgsResult r;
    try {
      r = bfgs_minimize(lagrangian, x, opts.bfgs, project, observer, bounds, &H);
    } catch (const std::invalid_argument&) {
      if (outer == 0) throw GeometryError("initial shape is inadmissible");
      break;
    }
    out.inner_iterations += r.iterations;
    out.evaluations += r.evaluations;
    x = r.x;
    // the accepted point is the last entry recorded by the observer, or x0
    last = out.snapshots.empty() || r.iterations == 0 ? infos.front()
                                                        : Info{out.snapshots.back().objective,
                                                               out.snapshots.back().E,
                                                               out.snapshots.back().J_drag,
                                                               out.snapshots.back().nu};
    if (r.iterations == 0) record(0, last, r.grad.norm(), x);
    const double C = last.nu - nu0;
    state.objective_trace.push_back(last.J);
    state.constraint_trace.push_back(C);
    const bool settled = r.converged || r.line_search_failed;
    if (std::abs(C) <= opts.alm.c_tol && settled) {
      out.converged = true;
      ++outer;
      break;
    }
    state = update_multipliers(state, C, opts.alm);
  }

  out.outer_iterations = outer;
  out.params = x;
  out.curve = curve_from_free_params(x, basis);
  out.objective = last.J;
  out.E = last.E;
  out.J_drag = last.J_drag;
  out.nu = last.nu;
  out.constraint_met = std::abs(last.nu - nu0) <= opts.alm.c_tol;
  return out;
}

}  // namespace swimopt
