#include "swimopt/operators.hpp"

#include <cmath>
#include <vector>

namespace swimopt {

namespace {

constexpr int kBand = 2;          // panels on each side treated as near-singular
constexpr double kNearRatio = 1.5;
constexpr int kMaxDepth = 48;
constexpr double kTaylor = 1e-4;  // parameter offset below which x - y is expanded

struct RowBuffers {
  Eigen::Matrix<double, 2, Eigen::Dynamic> single, traction;
  Eigen::RowVectorXd pressure;
  bool want_all = true;

  explicit RowBuffers(int n, bool all) : want_all(all) {
    single.setZero(2, 2 * n);
    if (all) {
      traction.setZero(2, 2 * n);
      pressure.setZero(2 * n);
    }
  }

  void add(const KernelBlocks& kb, double weight, int col) {
    single.block<2, 2>(0, 2 * col) += weight * kb.single;
    if (!want_all) return;
    traction.block<2, 2>(0, 2 * col) += weight * kb.traction;
    pressure.segment<2>(2 * col) += weight * kb.pressure;
  }
};

void adaptive_points(const GeometryCache& g, const SingularRule& rule, const MeridianPoint& x,
                     double lo, double hi, int depth, std::vector<QuadPoint>& out) {
  const double mid = 0.5 * (lo + hi);
  const CurvePoint p = g.curve.at(mid);
  const double len = std::hypot(p.dR, p.dZ) * (hi - lo);
  const double dist = std::hypot(x.r - p.R, x.z - p.Z);
  if (dist >= kNearRatio * len || depth >= kMaxDepth) {
    rule.append_smooth(lo, hi, out);
    return;
  }
  adaptive_points(g, rule, x, lo, mid, depth + 1, out);
  adaptive_points(g, rule, x, mid, hi, depth + 1, out);
}

// Integrates all source panels against one target. self_panel < 0 marks an
// off-surface target.
void assemble_row(const GeometryCache& g, const SingularRule& rule, const MeridianPoint& x,
                  int self_panel, double s0, RowBuffers& row) {
  const PanelGrid& grid = g.grid;
  const int order = grid.order;
  std::vector<QuadPoint> pts;
  std::vector<double> lag(order);
  const CurvePoint p0 = self_panel >= 0 ? g.curve.at(s0) : CurvePoint{};
  for (int q = 0; q < grid.n_panels; ++q) {
    const double lo = grid.panel_lo(q), hi = grid.panel_hi(q);
    pts.clear();
    if (self_panel >= 0 && std::abs(q - self_panel) <= kBand) {
      rule.append_points(lo, hi, s0, pts);
    } else {
      double dmin = INFINITY, arc = 0.0;
      for (int k = 0; k < order; ++k) {
        const int j = q * order + k;
        dmin = std::min(dmin, std::hypot(x.r - g.R[j], x.z - g.Z[j]));
        arc += grid.w[j] * g.alpha[j];
      }
      if (dmin >= arc) {
        for (int k = 0; k < order; ++k) {
          const int j = q * order + k;
          const KernelBlocks kb = azimuthal_reduce_all(x, {g.R[j], g.Z[j], 0.0, 0.0});
          row.add(kb, grid.w[j] * g.area_element[j], j);
        }
        continue;
      }
      adaptive_points(g, rule, x, lo, hi, 0, pts);
    }
    for (const QuadPoint& qp : pts) {
      const CurvePoint p = g.curve.at(qp.s);
      const double jac = p.R * std::hypot(p.dR, p.dZ);
      const double u = qp.s - s0;
      KernelBlocks kb;
      if (self_panel >= 0 && std::abs(u) < kTaylor) {
        const double dr = -u * (p0.dR + 0.5 * u * p0.ddR), dz = -u * (p0.dZ + 0.5 * u * p0.ddZ);
        kb = azimuthal_reduce_all(x, {p.R, p.Z, 0.0, 0.0}, dr, dz);
      } else {
        kb = azimuthal_reduce_all(x, {p.R, p.Z, 0.0, 0.0});
      }
      panel_interpolation(grid, q, qp.s, lag.data());
      const double wj = qp.w * jac;
      for (int k = 0; k < order; ++k) row.add(kb, wj * lag[k], q * order + k);
    }
  }
}

}  // namespace

BoundaryOperators assemble_operators(const GeometryCache& geom, const SingularRule& rule) {
  const int n = geom.size();
  BoundaryOperators ops;
  ops.single.resize(2 * n, 2 * n);
  ops.traction.resize(2 * n, 2 * n);
  ops.pressure.resize(n, 2 * n);
  // rows are independent; each writes a disjoint block
  for (int i = 0; i < n; ++i) {
    RowBuffers row(n, true);
    const MeridianPoint x{geom.R[i], geom.Z[i], geom.n_r[i], geom.n_z[i]};
    assemble_row(geom, rule, x, geom.grid.panel_of(i), geom.grid.t[i], row);
    ops.single.middleRows(2 * i, 2) = row.single;
    ops.traction.middleRows(2 * i, 2) = row.traction;
    ops.pressure.row(i) = row.pressure;
  }
  return ops;
}

ReducedKernel assemble_operator(KernelKind kind, const GeometryCache& geom, const SingularRule& rule) {
  BoundaryOperators ops = assemble_operators(geom, rule);
  ReducedKernel out;
  out.kind = kind;
  switch (kind) {
    case KernelKind::single_layer:
      out.values = std::move(ops.single);
      break;
    case KernelKind::traction:
      out.values = std::move(ops.traction);
      break;
    case KernelKind::pressure:
      out.values = std::move(ops.pressure);
      break;
  }
  return out;
}

Eigen::MatrixXd single_layer_row(const GeometryCache& geom, const SingularRule& rule,
                                 const MeridianPoint& target) {
  RowBuffers row(geom.size(), false);
  assemble_row(geom, rule, target, -1, 0.0, row);
  return row.single;
}

Eigen::Matrix2Xd single_layer_at(const GeometryCache& geom, const SingularRule& rule,
                                 const Eigen::VectorXd& zeta, const Eigen::Matrix2Xd& points) {
  Eigen::Matrix2Xd out(2, points.cols());
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    const MeridianPoint x{points(0, c), points(1, c), 0.0, 0.0};
    out.col(c) = single_layer_row(geom, rule, x) * zeta;
  }
  return out;
}

}  // namespace swimopt
