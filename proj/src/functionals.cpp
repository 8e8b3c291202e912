#include "swimopt/functionals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swimopt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double power_loss(const GeometryCache& geom, const FlowSolution& forward) {
  return geom.duality(forward.f_tau, forward.slip);
}

double towing_power(double F0, double U) { return F0 * U * U; }

double efficiency(double J_D, double J_W) {
  if (!(J_W > 0.0)) throw std::domain_error("efficiency undefined for non-positive power loss");
  return J_D / J_W;
}

double swim_speed_from_adjoint(const GeometryCache& geom, const FlowSolution& adjoint,
                               const Eigen::VectorXd& slip_nodal) {
  return -geom.duality(adjoint.f_tau, slip_nodal) / adjoint.F0;
}

EfficiencyReport optimal_slip(const GeometryCache& geom, const BoundaryOperators& ops) {
  EfficiencyReport rep;
  rep.adjoint = solve_adjoint(geom, ops);
  rep.auxiliary = solve_auxiliary(geom, ops, rep.adjoint);
  rep.F0 = rep.adjoint.F0;
  rep.z_S = rep.auxiliary.slip;
  rep.U_opt = swim_speed_from_adjoint(geom, rep.adjoint, rep.z_S);
  if (!(rep.U_opt > -1.0 && rep.U_opt <= 1e-12)) {
    throw SolverError("optimal-slip swim speed " + std::to_string(rep.U_opt) + " outside (-1, 0]");
  }
  rep.E = -rep.U_opt / (1.0 + rep.U_opt);
  rep.forward = solve_forward(geom, ops, rep.z_S);
  rep.J_W = power_loss(geom, rep.forward);
  rep.J_D = towing_power(rep.F0, rep.forward.U);
  rep.E_check = rep.J_W > 0.0 ? rep.J_D / rep.J_W : 0.0;
  return rep;
}

double normalized_drag(const GeometryCache& geom, double F0) {
  const Measures m = measures(geom);
  if (!(m.V > 0.0)) throw GeometryError("non-positive volume");
  return F0 / (6.0 * kPi * std::cbrt(3.0 * m.V / (4.0 * kPi)));
}

double normalized_drag(const GeometryCache& geom, const BoundaryOperators& ops) {
  return normalized_drag(geom, solve_adjoint(geom, ops).F0);
}

double slip_efficiency(const GeometryCache& geom, const BoundaryOperators& ops, double F0,
                       const Eigen::VectorXd& slip_nodal) {
  const FlowSolution fw = solve_forward(geom, ops, slip_nodal);
  return efficiency(towing_power(F0, fw.U), power_loss(geom, fw));
}

}  // namespace swimopt
