#include "swimopt/stokes.hpp"

#include <cmath>
#include <numbers>

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd interleave(const Eigen::VectorXd& r, const Eigen::VectorXd& z) {
  Eigen::VectorXd out(2 * r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    out[2 * i] = r[i];
    out[2 * i + 1] = z[i];
  }
  return out;
}

// Weights of <n, zeta>_Gamma as a row acting on the interleaved density.
Eigen::RowVectorXd normal_flux_row(const GeometryCache& g) {
  const int n = g.size();
  Eigen::RowVectorXd row(2 * n);
  for (int i = 0; i < n; ++i) {
    const double w = 2.0 * kPi * g.grid.w[i] * g.area_element[i];
    row[2 * i] = w * g.n_r[i];
    row[2 * i + 1] = w * g.n_z[i];
  }
  return row;
}

// Traction, pressure and their components from a density.
void fill_traction(const GeometryCache& g, const BoundaryOperators& ops, FlowSolution& sol) {
  const int n = g.size();
  const Eigen::VectorXd f = 0.5 * sol.zeta - ops.traction * sol.zeta;
  const Eigen::VectorXd pv = ops.pressure * sol.zeta;
  sol.f_r.resize(n);
  sol.f_z.resize(n);
  sol.f_tau.resize(n);
  sol.f_n.resize(n);
  sol.p.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.f_r[i] = f[2 * i];
    sol.f_z[i] = f[2 * i + 1];
    sol.f_tau[i] = f[2 * i] * g.tau_r[i] + f[2 * i + 1] * g.tau_z[i];
    sol.f_n[i] = f[2 * i] * g.n_r[i] + f[2 * i + 1] * g.n_z[i];
    const double zn = sol.zeta[2 * i] * g.n_r[i] + sol.zeta[2 * i + 1] * g.n_z[i];
    sol.p[i] = -0.5 * zn + pv[i];
  }
}

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs, const char* what) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) throw SolverError(std::string("non-finite solution in ") + what + " solve");
  const double rel = (M * x - rhs).norm() / std::max(rhs.norm(), 1e-300);
  if (!(rel < 1e-6)) {
    throw SolverError(std::string("ill-conditioned ") + what + " system (residual " +
                      std::to_string(rel) + ")");
  }
  return x;
}

void check_sizes(const GeometryCache& g, const BoundaryOperators& ops) {
  if (ops.size() != g.size()) throw std::invalid_argument("operators do not match the geometry");
}

}  // namespace

FlowSolution solve_adjoint(const GeometryCache& geom, const BoundaryOperators& ops) {
  check_sizes(geom, ops);
  const int n = geom.size();
  const int m = 2 * n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
  M.topLeftCorner(m, m) = ops.single;
  M.block(0, m, m, 1) = interleave(geom.n_r, geom.n_z);
  M.block(m, 0, 1, m) = normal_flux_row(geom);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  for (int i = 0; i < n; ++i) rhs[2 * i + 1] = 1.0;
  const Eigen::VectorXd x = dense_solve(M, rhs, "adjoint");

  FlowSolution sol;
  sol.kind = FlowKind::adjoint;
  sol.zeta = x.head(m);
  sol.multiplier = x[m];
  fill_traction(geom, ops, sol);
  sol.F0 = geom.surface_integral(sol.f_z);
  Eigen::VectorXd u = ops.single * sol.zeta;
  for (int i = 0; i < n; ++i) u[2 * i + 1] -= 1.0;
  sol.residual = u.cwiseAbs().maxCoeff();
  if (!(sol.F0 > 0.0)) throw SolverError("towing force is not positive");
  return sol;
}

FlowSolution solve_forward(const GeometryCache& geom, const BoundaryOperators& ops,
                           const Eigen::VectorXd& slip_nodal) {
  check_sizes(geom, ops);
  const int n = geom.size();
  const int m = 2 * n;
  if (slip_nodal.size() != n) throw std::invalid_argument("slip vector must have one value per node");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 2, m + 2);
  M.topLeftCorner(m, m) = ops.single;
  for (int i = 0; i < n; ++i) M(2 * i + 1, m) = -1.0;
  M.block(0, m + 1, m, 1) = interleave(geom.n_r, geom.n_z);
  // no net axial force: <(1/2 - K) zeta, e_z> = 0
  Eigen::RowVectorXd fz = Eigen::RowVectorXd::Zero(m);
  for (int i = 0; i < n; ++i) fz[2 * i + 1] = 2.0 * kPi * geom.grid.w[i] * geom.area_element[i];
  M.block(m, 0, 1, m) = 0.5 * fz - fz * ops.traction;
  M.block(m + 1, 0, 1, m) = normal_flux_row(geom);

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 2);
  rhs.head(m) = interleave(slip_nodal.cwiseProduct(geom.tau_r), slip_nodal.cwiseProduct(geom.tau_z));
  FlowSolution sol;
  sol.kind = FlowKind::forward;
  sol.slip = slip_nodal;
  if (rhs.norm() == 0.0) {
    sol.zeta = Eigen::VectorXd::Zero(m);
  } else {
    const Eigen::VectorXd x = dense_solve(M, rhs, "forward");
    sol.zeta = x.head(m);
    sol.U = x[m];
    sol.multiplier = x[m + 1];
  }
  fill_traction(geom, ops, sol);
  sol.residual = std::abs(geom.surface_integral(sol.f_z));
  return sol;
}

FlowSolution solve_forward(const GeometryCache& geom, const BoundaryOperators& ops,
                           const SlipProfile& slip) {
  return solve_forward(geom, ops, slip.sample(geom.grid.t));
}

FlowSolution solve_auxiliary(const GeometryCache& geom, const BoundaryOperators& ops,
                             const FlowSolution& adjoint) {
  check_sizes(geom, ops);
  if (adjoint.kind != FlowKind::adjoint) throw std::invalid_argument("auxiliary solve needs the adjoint solution");
  const int n = geom.size();
  const int m = 2 * n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  const Eigen::MatrixXd traction = 0.5 * Eigen::MatrixXd::Identity(m, m) - ops.traction;
  for (int i = 0; i < n; ++i) {
    M.row(2 * i).head(m) =
        geom.tau_r[i] * traction.row(2 * i) + geom.tau_z[i] * traction.row(2 * i + 1);
    rhs[2 * i] = adjoint.f_tau[i];
    M.row(2 * i + 1).head(m) =
        geom.n_r[i] * ops.single.row(2 * i) + geom.n_z[i] * ops.single.row(2 * i + 1);
    M(2 * i + 1, m) = 1.0;
  }
  M.block(m, 0, 1, m) = normal_flux_row(geom);
  const Eigen::VectorXd x = dense_solve(M, rhs, "auxiliary");

  FlowSolution sol;
  sol.kind = FlowKind::auxiliary;
  sol.zeta = x.head(m);
  sol.multiplier = x[m];
  fill_traction(geom, ops, sol);
  const Eigen::VectorXd u = ops.single * sol.zeta;
  sol.slip.resize(n);
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    sol.slip[i] = geom.tau_r[i] * u[2 * i] + geom.tau_z[i] * u[2 * i + 1];
    res = std::max(res, std::abs(geom.n_r[i] * u[2 * i] + geom.n_z[i] * u[2 * i + 1]));
  }
  sol.residual = res;
  return sol;
}

bool inside_body(const GeometryCache& geom, double r, double z) {
  r = std::abs(r);
  // closed polygon: the meridian from the north to the south pole, then the axis
  const int m = 4096;
  std::vector<double> pr(m + 1), pz(m + 1);
  for (int k = 0; k <= m; ++k) {
    const CurvePoint p = geom.curve.at(kPi * k / m);
    pr[k] = (k == 0 || k == m) ? 0.0 : p.R;
    pz[k] = p.Z;
  }
  bool in = false;
  for (int k = 0, j = m; k <= m; j = k++) {
    if ((pz[k] > z) != (pz[j] > z)) {
      const double x = pr[j] + (z - pz[j]) * (pr[k] - pr[j]) / (pz[k] - pz[j]);
      if (r < x) in = !in;
    }
  }
  return in;
}

Eigen::Matrix2Xd eval_offsurface(const GeometryCache& geom, const SingularRule& rule,
                                 const Eigen::VectorXd& zeta, const Eigen::Matrix2Xd& points) {
  const double scale = std::max(geom.R.maxCoeff(), geom.Z.maxCoeff() - geom.Z.minCoeff());
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    const double r = points(0, c), z = points(1, c);
    double dmin = INFINITY;
    for (int i = 0; i < geom.size(); ++i) dmin = std::min(dmin, std::hypot(std::abs(r) - geom.R[i], z - geom.Z[i]));
    if (inside_body(geom, r, z) || dmin < 1e-12 * scale) {
      throw GeometryError("evaluation point (" + std::to_string(r) + ", " + std::to_string(z) +
                          ") is not exterior to the body");
    }
  }
  return single_layer_at(geom, rule, zeta, points);
}

Eigen::VectorXd boundary_velocity(const GeometryCache& geom, const FlowSolution& sol) {
  const int n = geom.size();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    double us = 0.0, uz = 0.0;
    switch (sol.kind) {
      case FlowKind::forward:
        us = sol.slip[i];
        uz = sol.U;
        break;
      case FlowKind::adjoint:
        uz = 1.0;
        break;
      case FlowKind::auxiliary:
        us = sol.slip[i];
        break;
    }
    u[2 * i] = us * geom.tau_r[i];
    u[2 * i + 1] = us * geom.tau_z[i] + uz;
  }
  return u;
}

namespace {
double pairing(const GeometryCache& geom, const Eigen::VectorXd& u, const FlowSolution& s) {
  Eigen::VectorXd dot(geom.size());
  for (int i = 0; i < geom.size(); ++i) dot[i] = u[2 * i] * s.f_r[i] + u[2 * i + 1] * s.f_z[i];
  return geom.surface_integral(dot);
}
}  // namespace

double reciprocity_check(const GeometryCache& geom, const FlowSolution& sol1,
                         const FlowSolution& sol2) {
  const double a = pairing(geom, boundary_velocity(geom, sol1), sol2);
  const double b = pairing(geom, boundary_velocity(geom, sol2), sol1);
  const double scale = std::abs(a) + std::abs(b);
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

double dissipation(const GeometryCache& geom, const FlowSolution& sol) {
  return pairing(geom, boundary_velocity(geom, sol), sol);
}

}  // namespace swimopt
