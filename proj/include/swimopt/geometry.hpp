#pragma once

#include <vector>

#include <Eigen/Dense>

#include "swimopt/curve.hpp"

namespace swimopt {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  Eigen::VectorXd x, w;
};
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre grid on (0, pi). Nodes are stored panel by panel.
struct PanelGrid {
  int n_panels = 0;
  int order = 0;
  Eigen::VectorXd t, w;            // nodes and weights
  Eigen::VectorXd breaks;          // n_panels + 1 panel ends
  GaussRule ref;                   // reference rule on [-1, 1]
  Eigen::VectorXd bary;            // barycentric weights of ref.x

  int size() const { return static_cast<int>(t.size()); }
  int panel_of(int node) const { return node / order; }
  double panel_lo(int p) const { return breaks[p]; }
  double panel_hi(int p) const { return breaks[p + 1]; }
};

PanelGrid make_panel_grid(int n_panels = 16, int order = 16);

/// Nodal geometry of a generating curve. The normal points into the body.
struct GeometryCache {
  GeneratingCurve curve;
  PanelGrid grid;
  Eigen::VectorXd R, Z, dR, dZ, ddR, ddZ;
  Eigen::VectorXd alpha, kappa, area_element;
  Eigen::VectorXd n_r, n_z, tau_r, tau_z;

  int size() const { return grid.size(); }
  /// 2 pi * sum_i w_i f_i R_i alpha_i
  double surface_integral(const Eigen::VectorXd& f) const;
  /// <f, g>_Gamma
  double duality(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
};

GeometryCache geometry_at(const GeneratingCurve& curve, const PanelGrid& grid);

/// True if the meridian polyline through the nodes and both poles crosses
/// itself or the symmetry axis.
bool self_intersecting(const GeometryCache& geom);

/// Turning of the unit tangent: total |kappa| ds, the concave part
/// (kappa < 0) and the largest amount within one panel.
struct Turning {
  double total = 0.0, concave = 0.0, max_panel = 0.0;
};
Turning turning(const GeometryCache& geom);

struct Measures {
  double V = 0.0, A = 0.0, nu = 0.0;
};

Measures measures(const GeometryCache& geom);
Measures measures(const GeneratingCurve& curve, const PanelGrid& grid = make_panel_grid());

/// Barycentric Lagrange weights of the panel's nodes evaluated at s.
void panel_interpolation(const PanelGrid& grid, int panel, double s, double* out);

/// d/dt of nodal data by differentiating each panel's interpolant.
Eigen::VectorXd panel_derivative(const PanelGrid& grid, const Eigen::VectorXd& f);

}  // namespace swimopt
