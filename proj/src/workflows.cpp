#include "swimopt/workflows.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "swimopt/shapes.hpp"

namespace swimopt {

namespace {

GeneratingCurve radial_shape(double height, double (*profile)(double)) {
  return GeneratingCurve::analytic([height, profile](double t) {
    CurvePoint p;
    p.R = std::sin(t) * profile(t);
    p.Z = height * std::cos(t);
    return p;
  });
}

double lump(double t) { return 0.8 * (1.0 + 0.2 * std::cos(t)); }
double vase(double t) { return 1.0 - 0.25 * std::cos(2.0 * t) + 0.2 * std::cos(3.0 * t); }
double bumps(double t) { return 1.0 + 0.15 * std::cos(6.0 * t); }

}  // namespace

OptOptions optimizer_options(const RunConfig& cfg) {
  OptOptions o;
  o.disc = cfg.disc;
  o.alm.c_tol = cfg.c_tol;
  o.alm.max_outer = cfg.max_outer;
  o.alm.sigma0 = cfg.sigma0;
  o.bfgs.g_tol = cfg.g_tol;
  o.bfgs.max_iter = cfg.max_iter;
  return o;
}

OptResult min_drag_preset(double nu, const OptOptions& opts, const SnapshotFn& progress) {
  const GeneratingCurve start = preset_curve("spheroid", nu, opts.disc.n_intervals);
  return optimize_shape(Problem::min_drag, start, nu, opts, progress);
}

GeneratingCurve initial_shape(const RunConfig& cfg, const SnapshotFn& progress) {
  const std::string& init = cfg.init;
  if (init == "sphere" || init == "spheroid" || init == "peanut") {
    return preset_curve(init, cfg.nu, cfg.disc.n_intervals);
  }
  if (init == "min-drag") return min_drag_preset(cfg.nu, optimizer_options(cfg), progress).curve;
  const std::filesystem::path path(init);
  if (!std::filesystem::exists(path)) {
    throw std::invalid_argument("shape file not found: " + path.string());
  }
  return curve_from_samples(read_csv(path), cfg.disc.shape_basis());
}

std::vector<NamedDirection> validation_directions(const GeneratingCurve& base, int n_random,
                                                  std::uint64_t seed) {
  const BasisSet& basis = base.basis();
  const Eigen::VectorXd x0 = free_params(base);
  std::vector<NamedDirection> dirs;
  auto toward = [&](const std::string& name, const GeneratingCurve& target) {
    dirs.push_back({name, free_params(fit_curve(target, basis)) - x0});
  };
  toward("long-lump", radial_shape(1.6, lump));
  toward("vase", radial_shape(1.2, vase));
  toward("three-bump", radial_shape(1.3, bumps));
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 0.05);
  for (int k = 0; k < n_random; ++k) {
    Eigen::VectorXd d(x0.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = normal(gen);
    dirs.push_back({"random-" + std::to_string(k + 1), d});
  }
  return dirs;
}

std::vector<DirectionCheck> check_directions(const GeneratingCurve& base, const Discretization& disc,
                                             const std::vector<NamedDirection>& dirs, double eta) {
  const BasisSet& basis = base.basis();
  const Eigen::VectorXd x0 = free_params(base);
  const ShapeEvaluation ev = evaluate_shape(base, disc, true);
  std::vector<DirectionCheck> out;
  for (const NamedDirection& d : dirs) {
    const DirectionalDerivatives an =
        directional_derivatives(ev.geom, ev.report, perturbation_field(d.free, ev.geom), true);
    const ShapeEvaluation ep = evaluate_shape(curve_from_free_params(x0 + eta * d.free, basis), disc, true);
    const ShapeEvaluation em = evaluate_shape(curve_from_free_params(x0 - eta * d.free, basis), disc, true);
    DirectionCheck c;
    c.name = d.name;
    c.dE = an.dE;
    c.dE_fd = (ep.report.E - em.report.E) / (2.0 * eta);
    c.dE_rel = std::abs(c.dE - c.dE_fd) / std::abs(c.dE_fd);
    c.dD = an.ddrag;
    c.dD_fd = (ep.J_drag - em.J_drag) / (2.0 * eta);
    c.dD_rel = std::abs(c.dD - c.dD_fd) / std::abs(c.dD_fd);
    out.push_back(c);
  }
  return out;
}

std::vector<EtaRow> eta_sweep(const GeneratingCurve& base, const Discretization& disc,
                              const Eigen::VectorXd& dir, const std::vector<double>& etas) {
  std::vector<EtaRow> rows;
  for (double eta : etas) {
    const DirectionCheck c = check_directions(base, disc, {{"sweep", dir}}, eta).front();
    rows.push_back({eta, std::abs(c.dE - c.dE_fd), std::abs(c.dD - c.dD_fd)});
  }
  return rows;
}

SweepRow sweep_entry(double nu0, const OptOptions& opts, bool optimize) {
  SweepRow row;
  row.nu0 = nu0;
  try {
    const ShapeEvaluation sph =
        evaluate_shape(preset_curve("spheroid", nu0, opts.disc.n_intervals), opts.disc, true);
    row.spheroid_nu = sph.measures.nu;
    row.spheroid_E = sph.report.E;
    row.spheroid_drag = sph.J_drag;
    if (!optimize) return row;
    const OptResult md = min_drag_preset(nu0, opts);
    const ShapeEvaluation emd = evaluate_shape(md.curve, opts.disc, true);
    row.mindrag_nu = emd.measures.nu;
    row.mindrag_E = emd.report.E;
    row.mindrag_drag = emd.J_drag;
    if (!md.converged) row.error = "min-drag did not converge";
    const OptResult me = optimize_shape(Problem::max_efficiency, md.curve, nu0, opts);
    row.maxeff_nu = me.nu;
    row.maxeff_E = me.E;
    row.maxeff_drag = me.J_drag;
    if (!me.converged) row.error += std::string(row.error.empty() ? "" : "; ") + "max-eff did not converge";
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t{{"nu0", "spheroid_nu", "spheroid_J_E", "spheroid_J_drag", "maxeff_nu", "maxeff_J_E", "maxeff_J_drag",
           "mindrag_nu", "mindrag_J_E", "mindrag_J_drag"},
          {}};
  for (const SweepRow& r : rows) {
    t.rows.push_back({r.nu0, r.spheroid_nu, r.spheroid_E, r.spheroid_drag, r.maxeff_nu, r.maxeff_E, r.maxeff_drag,
                      r.mindrag_nu, r.mindrag_E, r.mindrag_drag});
  }
  return t;
}

}  // namespace swimopt
