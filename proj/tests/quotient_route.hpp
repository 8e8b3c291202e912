#pragma once

// Second route to E': differentiate E = J_D / J_W at the optimal slip held
// fixed, using the F0', U' and J_W' formulas for a convected slip.

#include "swimopt/functionals.hpp"
#include "swimopt/sensitivity.hpp"

namespace swimopt::testing {

inline double quotient_route_dE(const GeometryCache& g, const EfficiencyReport& r, const ShapePerturbation& p) {
  const Eigen::VectorXd& z = r.forward.slip;
  const Eigen::VectorXd dz = panel_derivative(g.grid, z);
  const double F0 = r.adjoint.F0;
  const double U = r.forward.U;
  const double JW = power_loss(g, r.forward);
  const double E = towing_power(F0, U) / JW;
  const double dF0 = d_F0(g, r.adjoint, p);
  const double dU = d_U(g, r.forward, r.adjoint, z, dz, p);
  const double dJW = d_JW(g, r.forward, z, dz, p);
  // A_D = F0 J_D = F0^2 U^2 and A_W = F0 J_W
  const double dAD = 2.0 * F0 * dF0 * U * U + 2.0 * F0 * F0 * U * dU;
  const double dAW = dF0 * JW + F0 * dJW;
  return (dAD - E * dAW) / (F0 * JW);
}

}  // namespace swimopt::testing
