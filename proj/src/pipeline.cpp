#include "swimopt/pipeline.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace swimopt {

BasisSet Discretization::shape_basis() const { return build_basis(n_intervals, std::numbers::pi); }

void Discretization::validate() const {
  if (n_intervals <= 10) throw std::invalid_argument("n_intervals must exceed 10");
  if (n_u < 1) throw std::invalid_argument("n_u must be positive");
  if (n_panels < 4) throw std::invalid_argument("n_panels must be at least 4");
  if (panel_order != 8 && panel_order != 12 && panel_order != 16) {
    throw std::invalid_argument("panel_order must be 8, 12 or 16, got " + std::to_string(panel_order));
  }
}

ShapeEvaluation evaluate_shape(const GeneratingCurve& curve, const Discretization& disc,
                               bool with_efficiency) {
  disc.validate();
  ShapeEvaluation ev;
  ev.geom = geometry_at(curve, disc.grid());
  ev.measures = measures(ev.geom);
  ev.ops = assemble_operators(ev.geom, disc.rule());
  if (with_efficiency) {
    ev.report = optimal_slip(ev.geom, ev.ops);
    ev.has_efficiency = true;
  } else {
    ev.report.adjoint = solve_adjoint(ev.geom, ev.ops);
    ev.report.F0 = ev.report.adjoint.F0;
  }
  ev.J_drag = normalized_drag(ev.geom, ev.report.F0);
  return ev;
}

}  // namespace swimopt
