#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swimopt/io.hpp"
#include "swimopt/shapes.hpp"
#include "swimopt/workflows.hpp"

using namespace swimopt;

namespace {

constexpr int kOk = 0, kInputError = 2, kNoConvergence = 3, kValidationFailure = 4;
constexpr double kPi = std::numbers::pi;

Metadata meta_for(const RunConfig& cfg, const std::string& schema) {
  return {schema, config_hash(cfg), cfg.disc, {}};
}

void print_snapshot_header() {
  std::printf("%5s %5s  %14s  %12s  %9s  %9s\n", "outer", "inner", "objective", "nu", "|C|", "|grad|");
}

void print_snapshot(const Snapshot& s) {
  std::printf("%5d %5d  %14.8f  %12.8f  %9.2e  %9.2e\n", s.outer, s.inner, s.objective, s.nu, std::abs(s.C),
              s.grad_norm);
  std::fflush(stdout);
}

SnapshotFn preset_progress() {
  return [](const Snapshot& s) {
    if (s.inner == 0 || s.inner % 10 == 0) {
      std::printf("  preset %3d %4d  J_drag %.8f  nu %.8f\n", s.outer, s.inner, s.objective, s.nu);
      std::fflush(stdout);
    }
  };
}

// u^S = sin t at the nodes
Eigen::VectorXd sine_slip(const GeometryCache& g) { return g.grid.t.array().sin().matrix(); }

void write_flow(const RunConfig& cfg, const GeometryCache& g, const Eigen::VectorXd& zeta,
                const std::filesystem::path& dir) {
  double extent = 0.0;
  for (int i = 0; i < g.size(); ++i) extent = std::max({extent, g.R[i], std::abs(g.Z[i])});
  extent *= cfg.flow_extent;
  const int nr = cfg.flow_nr, nz = cfg.flow_nz;
  Eigen::Matrix2Xd pts(2, nr * nz);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nz; ++j) {
      pts(0, i * nz + j) = extent * (i + 0.5) / nr;
      pts(1, i * nz + j) = nz > 1 ? -extent + 2.0 * extent * j / (nz - 1) : 0.0;
    }
  }
  std::vector<int> outside;
  for (int k = 0; k < pts.cols(); ++k) {
    if (!inside_body(g, pts(0, k), pts(1, k))) outside.push_back(k);
  }
  Eigen::Matrix2Xd sub(2, outside.size());
  for (std::size_t k = 0; k < outside.size(); ++k) sub.col(k) = pts.col(outside[k]);
  const Eigen::Matrix2Xd u_sub = eval_offsurface(g, cfg.disc.rule(), zeta, sub);
  Eigen::Matrix2Xd u = Eigen::Matrix2Xd::Constant(2, pts.cols(), NAN);
  for (std::size_t k = 0; k < outside.size(); ++k) u.col(outside[k]) = u_sub.col(k);
  Metadata m = meta_for(cfg, "flow");
  m.extra = {{"frame", "lab"}, {"inside", "nan"}};
  write_csv(dir / "flow.csv", m, flow_table(pts, u));
}

int cmd_solve(const RunConfig& cfg) {
  const GeneratingCurve curve = initial_shape(cfg, preset_progress());
  const auto dir = output_dir(cfg);
  const ShapeEvaluation ev = evaluate_shape(curve, cfg.disc, cfg.slip == "optimal");
  const GeometryCache& g = ev.geom;
  const double F0 = ev.report.F0;
  double E = NAN, U = NAN, JW = NAN, JD = NAN;
  const FlowSolution* shown = &ev.report.adjoint;
  FlowSolution sine;
  Eigen::VectorXd slip;
  if (cfg.slip == "optimal") {
    E = ev.report.E;
    U = ev.report.U_opt;
    JW = ev.report.J_W;
    JD = ev.report.J_D;
    slip = ev.report.z_S;
    shown = &ev.report.forward;
  } else if (cfg.slip == "sin") {
    slip = sine_slip(g);
    sine = solve_forward(g, ev.ops, slip);
    U = sine.U;
    JW = power_loss(g, sine);
    JD = towing_power(F0, U);
    E = efficiency(JD, JW);
    shown = &sine;
  }

  write_csv(dir / "shape.csv", meta_for(cfg, "shape"), shape_table(curve));
  if (slip.size()) write_csv(dir / "slip.csv", meta_for(cfg, "slip"), slip_table(g, slip));
  write_csv(dir / "surface.csv", meta_for(cfg, "surface"), surface_table(g, *shown, slip));
  if (curve.is_spline()) {
    const Eigen::VectorXd dD = gradient_vector(g, Objective::drag, ev.report).values;
    const Eigen::VectorXd dnu = gradient_vector(g, Objective::reduced_volume, ev.report).values;
    Eigen::VectorXd dE = Eigen::VectorXd::Constant(dnu.size(), NAN);
    if (cfg.slip == "optimal") dE = gradient_vector(g, Objective::efficiency, ev.report).values;
    write_csv(dir / "gradient.csv", meta_for(cfg, "gradient"), gradient_table(dE, dD, dnu));
  }
  if (cfg.flow_nr > 0 && cfg.flow_nz > 0) write_flow(cfg, g, shown->zeta, dir);
  Metadata m = meta_for(cfg, "summary");
  m.extra = {{"command", "solve"}, {"slip", cfg.slip}};
  write_summary(dir / "summary.json", m,
                {{"E", E}, {"U", U}, {"F0", F0}, {"J_W", JW}, {"J_D", JD}, {"J_drag", ev.J_drag},
                 {"nu", ev.measures.nu}, {"V", ev.measures.V}, {"A", ev.measures.A}});
  std::printf("E %.10f  U %.10f  F0 %.10f  J_drag %.10f  nu %.10f\n", E, U, F0, ev.J_drag, ev.measures.nu);
  std::printf("F0/(6 pi) %.10f\n", F0 / (6.0 * kPi));
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kOk;
}

int cmd_optimize(const RunConfig& cfg) {
  const Problem problem = parse_problem(cfg.problem);
  const GeneratingCurve init = initial_shape(cfg, preset_progress());
  const auto dir = output_dir(cfg);
  write_csv(dir / "initial_shape.csv", meta_for(cfg, "shape"), shape_table(init));

  const OptOptions opts = optimizer_options(cfg);
  std::vector<Snapshot> ends;  // last accepted shape of every outer iteration
  print_snapshot_header();
  const OptResult r = optimize_shape(problem, init, cfg.nu, opts, [&](const Snapshot& s) {
    print_snapshot(s);
    if (!ends.empty() && ends.back().outer == s.outer) ends.back() = s;
    else ends.push_back(s);
  });

  write_csv(dir / "snapshots.csv", meta_for(cfg, "snapshots"), snapshot_table(r.snapshots));
  const BasisSet basis = cfg.disc.shape_basis();
  for (const Snapshot& s : ends) {
    char name[32];
    std::snprintf(name, sizeof name, "outer_%03d.csv", s.outer);
    write_csv(dir / "snapshots" / name, meta_for(cfg, "shape"),
              shape_table(curve_from_free_params(s.params, basis)));
  }

  const ShapeEvaluation ev = evaluate_shape(r.curve, cfg.disc, true);
  write_csv(dir / "shape.csv", meta_for(cfg, "shape"), shape_table(r.curve));
  write_csv(dir / "slip.csv", meta_for(cfg, "slip"), slip_table(ev.geom, ev.report.z_S));
  write_csv(dir / "surface.csv", meta_for(cfg, "surface"),
            surface_table(ev.geom, ev.report.forward, ev.report.z_S));
  Metadata m = meta_for(cfg, "summary");
  m.extra = {{"command", "optimize"}, {"problem", problem_name(problem)},
             {"converged", r.converged ? "true" : "false"}};
  write_summary(dir / "summary.json", m,
                {{"E", ev.report.E}, {"U", ev.report.U_opt}, {"F0", ev.report.F0}, {"J_W", ev.report.J_W},
                 {"J_D", ev.report.J_D}, {"J_drag", ev.J_drag}, {"nu", ev.measures.nu}, {"V", ev.measures.V},
                 {"A", ev.measures.A}, {"outer_iterations", double(r.outer_iterations)},
                 {"inner_iterations", double(r.inner_iterations)}, {"evaluations", double(r.evaluations)}});
  std::printf("%s: E %.8f  J_drag %.8f  nu %.8f  outer %d  inner %d  %s\n", problem_name(problem).c_str(),
              ev.report.E, ev.J_drag, ev.measures.nu, r.outer_iterations, r.inner_iterations,
              r.converged ? "converged" : "NOT converged");
  std::printf("artifacts in %s\n", dir.string().c_str());
  return r.converged ? kOk : kNoConvergence;
}

int cmd_validate(const RunConfig& cfg) {
  const auto dir = output_dir(cfg);
  bool ok = true;

  // identities on the exact sphere
  {
    const ShapeEvaluation ev = evaluate_shape(sphere_curve(), cfg.disc, true);
    const FlowSolution sine = solve_forward(ev.geom, ev.ops, sine_slip(ev.geom));
    struct Row {
      const char* name;
      double value, target, tol;
    } rows[] = {
        {"sphere F0/(6 pi)", ev.report.F0 / (6.0 * kPi), 1.0, 1e-6},
        {"sphere E", ev.report.E, 0.5, 1e-4},
        {"sphere |U| for sin slip", std::abs(sine.U), 2.0 / 3.0, 1e-6},
        {"sphere nu", ev.measures.nu, 1.0, 1e-10},
    };
    for (const Row& r : rows) {
      const bool pass = std::abs(r.value - r.target) <= r.tol;
      ok = ok && pass;
      std::printf("%-26s %.10f  (expect %.10f)  %s\n", r.name, r.value, r.target, pass ? "ok" : "FAIL");
    }
  }

  const GeneratingCurve base = initial_shape(cfg, preset_progress());
  const auto dirs = validation_directions(base, cfg.random_directions, cfg.seed);
  const auto checks = check_directions(base, cfg.disc, dirs, cfg.eta);
  std::printf("\n%-12s %15s %15s %10s %15s %15s %10s\n", "direction", "E'", "E' FD", "rel.err", "J_drag'",
              "J_drag' FD", "rel.err");
  Table t{{"direction", "dE", "dE_fd", "dE_rel", "dJdrag", "dJdrag_fd", "dJdrag_rel"}, {}};
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const DirectionCheck& c = checks[k];
    const bool pass = c.dE_rel <= 1e-4 && c.dD_rel <= 1e-4;
    ok = ok && pass;
    std::printf("%-12s %15.8e %15.8e %10.2e %15.8e %15.8e %10.2e %s\n", c.name.c_str(), c.dE, c.dE_fd, c.dE_rel,
                c.dD, c.dD_fd, c.dD_rel, pass ? "" : "FAIL");
    t.rows.push_back({double(k), c.dE, c.dE_fd, c.dE_rel, c.dD, c.dD_fd, c.dD_rel});
  }
  Metadata m = meta_for(cfg, "validate");
  m.extra = {{"eta", std::to_string(cfg.eta)}};
  write_csv(dir / "validate.csv", m, t);

  if (cfg.eta_sweep) {
    const std::vector<double> etas{1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3};
    const auto rows = eta_sweep(base, cfg.disc, dirs.front().free, etas);
    Table st{{"eta", "err_E", "err_drag"}, {}};
    std::printf("\n%10s %12s %8s %12s %8s\n", "eta", "err E'", "order", "err J_drag'", "order");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      double oE = NAN, oD = NAN;
      if (k > 0) {
        const double h = std::log(rows[k - 1].eta / rows[k].eta);
        oE = std::log(rows[k - 1].err_E / rows[k].err_E) / h;
        oD = std::log(rows[k - 1].err_D / rows[k].err_D) / h;
      }
      std::printf("%10.3e %12.4e %8.3f %12.4e %8.3f\n", rows[k].eta, rows[k].err_E, oE, rows[k].err_D, oD);
      st.rows.push_back({rows[k].eta, rows[k].err_E, rows[k].err_D});
    }
    write_csv(dir / "eta_sweep.csv", meta_for(cfg, "eta_sweep"), st);
  }
  std::printf("\nvalidation %s\n", ok ? "passed" : "FAILED");
  return ok ? kOk : kValidationFailure;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto dir = output_dir(cfg);
  const OptOptions opts = optimizer_options(cfg);
  std::vector<SweepRow> rows;
  bool failures = false;
  std::printf("%6s  %10s %10s  %10s %10s  %10s %10s\n", "nu0", "sph J_E", "sph drag", "maxE J_E", "maxE drag",
              "minD J_E", "minD drag");
  for (double nu : cfg.sweep_nu) {
    const SweepRow r = sweep_entry(nu, opts, cfg.sweep_optimize);
    std::printf("%6.3f  %10.6f %10.6f  %10.6f %10.6f  %10.6f %10.6f\n", r.nu0, r.spheroid_E, r.spheroid_drag,
                r.maxeff_E, r.maxeff_drag, r.mindrag_E, r.mindrag_drag);
    if (!r.error.empty()) {
      failures = true;
      std::printf("        nu0 = %.3f: %s\n", nu, r.error.c_str());
    }
    std::fflush(stdout);
    rows.push_back(r);
  }
  write_csv(dir / "sweep.csv", meta_for(cfg, "sweep"), sweep_table(rows));

  auto report_min = [&](const char* label, double SweepRow::*field) {
    int best = -1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (std::isfinite(rows[k].*field) && (best < 0 || rows[k].*field < rows[best].*field)) best = int(k);
    }
    if (best < 0) return;
    const bool interior = best > 0 && best + 1 < int(rows.size());
    std::printf("%s drag minimum at nu0 = %.3f (%s)\n", label, rows[best].nu0,
                interior ? "interior" : "at the end of the sweep");
  };
  report_min("spheroid", &SweepRow::spheroid_drag);
  if (cfg.sweep_optimize) report_min("min-drag", &SweepRow::mindrag_drag);
  std::printf("artifacts in %s\n", dir.string().c_str());
  return failures ? kNoConvergence : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape optimisation of axisymmetric microswimmers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file");

  // flags override the config file; remember which ones were given
  RunConfig f;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
  auto over = [&](CLI::Option* o, std::function<void(RunConfig&)> apply) { overrides.emplace_back(o, apply); };
  over(app.add_option("--problem", f.problem, "max-eff | min-drag"), [&](RunConfig& c) { c.problem = f.problem; });
  over(app.add_option("--nu", f.nu, "target reduced volume"), [&](RunConfig& c) { c.nu = f.nu; });
  auto* init_opt = app.add_option("--init", f.init, "sphere | spheroid | peanut | min-drag | shape csv");
  over(init_opt, [&](RunConfig& c) { c.init = f.init; });
  over(app.add_option("--slip", f.slip, "optimal | sin | none"), [&](RunConfig& c) { c.slip = f.slip; });
  over(app.add_option("--n-intervals", f.disc.n_intervals, "shape spline intervals"),
       [&](RunConfig& c) { c.disc.n_intervals = f.disc.n_intervals; });
  over(app.add_option("--n-u", f.disc.n_u, "slip coefficients"), [&](RunConfig& c) { c.disc.n_u = f.disc.n_u; });
  over(app.add_option("--n-panels", f.disc.n_panels, "quadrature panels"),
       [&](RunConfig& c) { c.disc.n_panels = f.disc.n_panels; });
  over(app.add_option("--panel-order", f.disc.panel_order, "nodes per panel (8, 12, 16)"),
       [&](RunConfig& c) { c.disc.panel_order = f.disc.panel_order; });
  over(app.add_option("--c-tol", f.c_tol, "constraint tolerance"), [&](RunConfig& c) { c.c_tol = f.c_tol; });
  over(app.add_option("--max-outer", f.max_outer, "outer iterations"),
       [&](RunConfig& c) { c.max_outer = f.max_outer; });
  over(app.add_option("--g-tol", f.g_tol, "inner gradient tolerance"), [&](RunConfig& c) { c.g_tol = f.g_tol; });
  over(app.add_option("--max-iter", f.max_iter, "inner iterations"), [&](RunConfig& c) { c.max_iter = f.max_iter; });
  over(app.add_option("--sigma0", f.sigma0, "initial penalty (0: problem default)"),
       [&](RunConfig& c) { c.sigma0 = f.sigma0; });
  over(app.add_option("--output,-o", f.output, "output directory"), [&](RunConfig& c) { c.output = f.output; });
  over(app.add_option("--seed", f.seed, "seed for random directions"), [&](RunConfig& c) { c.seed = f.seed; });
  over(app.add_option("--eta", f.eta, "finite-difference step"), [&](RunConfig& c) { c.eta = f.eta; });
  over(app.add_option("--random-directions", f.random_directions, "random directions in validate"),
       [&](RunConfig& c) { c.random_directions = f.random_directions; });
  over(app.add_flag("--eta-sweep", f.eta_sweep, "report the finite-difference truncation order"),
       [&](RunConfig& c) { c.eta_sweep = f.eta_sweep; });
  over(app.add_option("--sweep-nu", f.sweep_nu, "reduced volumes for sweep")->delimiter(','),
       [&](RunConfig& c) { c.sweep_nu = f.sweep_nu; });
  over(app.add_flag("--sweep-optimize", f.sweep_optimize, "also run min-drag and max-eff in sweep"),
       [&](RunConfig& c) { c.sweep_optimize = f.sweep_optimize; });
  std::vector<int> grid;
  over(app.add_option("--flow-grid", grid, "off-surface grid NR,NZ")->delimiter(',')->expected(2),
       [&](RunConfig& c) {
         c.flow_nr = grid[0];
         c.flow_nz = grid[1];
       });
  over(app.add_option("--flow-extent", f.flow_extent, "grid half width in body sizes"),
       [&](RunConfig& c) { c.flow_extent = f.flow_extent; });

  auto* solve = app.add_subcommand("solve", "flow solves and exports on one shape");
  auto* optimize = app.add_subcommand("optimize", "shape optimisation at fixed reduced volume");
  auto* validate = app.add_subcommand("validate", "shape sensitivities against finite differences");
  auto* sweep = app.add_subcommand("sweep", "shape comparison table over reduced volumes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  RunConfig cfg;
  try {
    if (validate->parsed()) cfg.init = "peanut";
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    for (auto& [opt, apply] : overrides) {
      if (opt->count() > 0) apply(cfg);
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "swimopt: %s\n", e.what());
    return kInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (optimize->parsed()) return cmd_optimize(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "swimopt: %s\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "swimopt: %s\n", e.what());
    return kNoConvergence;
  }
  return kInputError;
}
