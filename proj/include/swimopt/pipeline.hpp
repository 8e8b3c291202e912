#pragma once

#include <optional>

#include "swimopt/functionals.hpp"
#include "swimopt/quadrature.hpp"
#include "swimopt/sensitivity.hpp"

namespace swimopt {

/// Discretization sizes shared by every stage.
struct Discretization {
  int n_intervals = 12;  // shape spline intervals
  int n_u = 16;          // slip coefficients
  int n_panels = 24;     // Gauss-Legendre panels on (0, pi); matching n_intervals puts knots on panel ends
  int panel_order = 12;  // nodes per panel (8, 12 or 16)

  PanelGrid grid() const { return make_panel_grid(n_panels, panel_order); }
  SingularRule rule() const { return build_singular_rule(panel_order); }
  BasisSet shape_basis() const;
  void validate() const;  // throws std::invalid_argument
};

/// Geometry, operators and flow solutions of one shape.
struct ShapeEvaluation {
  GeometryCache geom;
  Measures measures;
  BoundaryOperators ops;
  EfficiencyReport report;  // adjoint always; auxiliary/forward when efficiency was requested
  double J_drag = 0.0;
  bool has_efficiency = false;
};

ShapeEvaluation evaluate_shape(const GeneratingCurve& curve, const Discretization& disc,
                               bool with_efficiency);

}  // namespace swimopt
