#include "swimopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace swimopt {

namespace {
constexpr double kPi = std::numbers::pi;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = g.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

PanelGrid make_panel_grid(int n_panels, int order) {
  if (n_panels < 1 || order < 2) throw std::invalid_argument("panel grid needs panels >= 1, order >= 2");
  PanelGrid g;
  g.n_panels = n_panels;
  g.order = order;
  g.ref = gauss_legendre(order);
  g.breaks = Eigen::VectorXd::LinSpaced(n_panels + 1, 0.0, kPi);
  g.t.resize(n_panels * order);
  g.w.resize(n_panels * order);
  for (int p = 0; p < n_panels; ++p) {
    const double lo = g.breaks[p], hi = g.breaks[p + 1];
    for (int j = 0; j < order; ++j) {
      g.t[p * order + j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.ref.x[j];
      g.w[p * order + j] = 0.5 * (hi - lo) * g.ref.w[j];
    }
  }
  g.bary.resize(order);
  for (int j = 0; j < order; ++j) {
    double prod = 1.0;
    for (int k = 0; k < order; ++k)
      if (k != j) prod *= (g.ref.x[j] - g.ref.x[k]);
    g.bary[j] = 1.0 / prod;
  }
  // normalise for range; barycentric formula is scale invariant
  g.bary /= g.bary.cwiseAbs().maxCoeff();
  return g;
}

void panel_interpolation(const PanelGrid& grid, int panel, double s, double* out) {
  const double lo = grid.panel_lo(panel), hi = grid.panel_hi(panel);
  const double x = (2.0 * s - lo - hi) / (hi - lo);
  const int n = grid.order;
  for (int j = 0; j < n; ++j) {
    if (x == grid.ref.x[j]) {
      for (int k = 0; k < n; ++k) out[k] = (k == j) ? 1.0 : 0.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < n; ++j) {
    out[j] = grid.bary[j] / (x - grid.ref.x[j]);
    denom += out[j];
  }
  for (int j = 0; j < n; ++j) out[j] /= denom;
}

Eigen::VectorXd panel_derivative(const PanelGrid& grid, const Eigen::VectorXd& f) {
  const int n = grid.order;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      D(i, j) = (grid.bary[j] / grid.bary[i]) / (grid.ref.x[i] - grid.ref.x[j]);
      D(i, i) -= D(i, j);
    }
  }
  Eigen::VectorXd out(f.size());
  for (int p = 0; p < grid.n_panels; ++p) {
    const double scale = 2.0 / (grid.panel_hi(p) - grid.panel_lo(p));
    out.segment(p * n, n) = scale * (D * f.segment(p * n, n));
  }
  return out;
}

GeometryCache geometry_at(const GeneratingCurve& curve, const PanelGrid& grid) {
  GeometryCache g{curve, grid, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  const int n = grid.size();
  for (auto* v : {&g.R, &g.Z, &g.dR, &g.dZ, &g.ddR, &g.ddZ, &g.alpha, &g.kappa, &g.area_element,
                  &g.n_r, &g.n_z, &g.tau_r, &g.tau_z}) {
    v->resize(n);
  }
  for (int i = 0; i < n; ++i) {
    const double t = grid.t[i];
    if (!(t > 0.0 && t < kPi)) throw std::invalid_argument("geometry grid must lie inside (0, pi)");
    const CurvePoint p = curve.at(t);
    const double a = std::hypot(p.dR, p.dZ);
    if (!(a > 1e-12) || !std::isfinite(a)) {
      throw GeometryError("degenerate parametrization at t = " + std::to_string(t));
    }
    g.R[i] = p.R;
    g.Z[i] = p.Z;
    g.dR[i] = p.dR;
    g.dZ[i] = p.dZ;
    g.ddR[i] = p.ddR;
    g.ddZ[i] = p.ddZ;
    g.alpha[i] = a;
    g.kappa[i] = (p.dZ * p.ddR - p.dR * p.ddZ) / (a * a * a);
    g.area_element[i] = p.R * a;
    g.tau_r[i] = p.dR / a;
    g.tau_z[i] = p.dZ / a;
    g.n_r[i] = p.dZ / a;
    g.n_z[i] = -p.dR / a;
  }
  const double rmax = g.R.maxCoeff();
  if (!(rmax > 0.0) || g.R.minCoeff() <= 1e-8 * rmax) {
    throw GeometryError("curve touches or crosses the symmetry axis");
  }
  return g;
}

double GeometryCache::surface_integral(const Eigen::VectorXd& f) const {
  return 2.0 * kPi * (grid.w.array() * f.array() * area_element.array()).sum();
}

double GeometryCache::duality(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  return 2.0 * kPi * (grid.w.array() * f.array() * g.array() * area_element.array()).sum();
}

bool self_intersecting(const GeometryCache& geom) {
  const int n = geom.size();
  std::vector<double> r(n + 2), z(n + 2);
  const CurvePoint top = geom.curve.at(0.0), bottom = geom.curve.at(kPi);
  r[0] = 0.0;
  z[0] = top.Z;
  for (int i = 0; i < n; ++i) {
    r[i + 1] = geom.R[i];
    z[i + 1] = geom.Z[i];
  }
  r[n + 1] = 0.0;
  z[n + 1] = bottom.Z;
  auto orient = [&](int a, int b, int c) {
    return (r[b] - r[a]) * (z[c] - z[a]) - (z[b] - z[a]) * (r[c] - r[a]);
  };
  const int m = n + 1;  // segments i -> i + 1
  for (int i = 0; i < m; ++i) {
    const double rlo = std::min(r[i], r[i + 1]), rhi = std::max(r[i], r[i + 1]);
    const double zlo = std::min(z[i], z[i + 1]), zhi = std::max(z[i], z[i + 1]);
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // the poles close the curve on the axis
      if (std::max(r[j], r[j + 1]) < rlo || std::min(r[j], r[j + 1]) > rhi) continue;
      if (std::max(z[j], z[j + 1]) < zlo || std::min(z[j], z[j + 1]) > zhi) continue;
      const double d1 = orient(i, i + 1, j), d2 = orient(i, i + 1, j + 1);
      const double d3 = orient(j, j + 1, i), d4 = orient(j, j + 1, i + 1);
      if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    }
  }
  // the axis segment between the poles must not be crossed either
  const double zmin = std::min(top.Z, bottom.Z), zmax = std::max(top.Z, bottom.Z);
  for (int i = 1; i < n; ++i) {
    if (geom.R[i] <= 0.0 && geom.Z[i] > zmin && geom.Z[i] < zmax) return true;
  }
  return top.Z <= bottom.Z;
}

Turning turning(const GeometryCache& geom) {
  Turning out;
  const PanelGrid& grid = geom.grid;
  for (int p = 0; p < grid.n_panels; ++p) {
    double panel = 0.0;
    for (int k = 0; k < grid.order; ++k) {
      const int j = p * grid.order + k;
      const double v = grid.w[j] * geom.kappa[j] * geom.alpha[j];
      panel += std::abs(v);
      if (v < 0.0) out.concave -= v;
    }
    out.total += panel;
    out.max_panel = std::max(out.max_panel, panel);
  }
  return out;
}

Measures measures(const GeometryCache& geom) {
  Measures m;
  const auto& w = geom.grid.w.array();
  m.V = -kPi * (w * geom.R.array().square() * geom.dZ.array()).sum();
  m.A = 2.0 * kPi * (w * geom.area_element.array()).sum();
  m.nu = 6.0 * std::sqrt(kPi) * m.V / std::pow(m.A, 1.5);
  return m;
}

Measures measures(const GeneratingCurve& curve, const PanelGrid& grid) {
  return measures(geometry_at(curve, grid));
}

}  // namespace swimopt
