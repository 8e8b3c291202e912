#pragma once

#include <Eigen/Dense>

#include "swimopt/stokes.hpp"

namespace swimopt {

/// Optimal slip for a fixed shape, with all three flow solutions retained
/// for the sensitivity formulas.
struct EfficiencyReport {
  double E = 0.0;        // -U/(1+U)
  double U_opt = 0.0;    // swim speed at the optimal slip
  Eigen::VectorXd z_S;   // optimal slip at the nodes
  double J_W = 0.0;      // power loss of the forward solve at z^S
  double J_D = 0.0;      // F0 U^2
  double F0 = 0.0;
  double E_check = 0.0;  // J_D / J_W from the independent forward solve
  FlowSolution adjoint, auxiliary, forward;
};

double power_loss(const GeometryCache& geom, const FlowSolution& forward);
double towing_power(double F0, double U);
/// Throws std::domain_error when J_W is not positive.
double efficiency(double J_D, double J_W);

/// U = -<f_hat_tau, u^S> / F0.
double swim_speed_from_adjoint(const GeometryCache& geom, const FlowSolution& adjoint,
                               const Eigen::VectorXd& slip_nodal);

/// Adjoint + auxiliary solves, then a forward solve at z^S as a cross-check.
/// Throws SolverError if U_opt is outside (-1, 0].
EfficiencyReport optimal_slip(const GeometryCache& geom, const BoundaryOperators& ops);

/// F0 / (6 pi r_V), r_V the radius of the sphere of equal volume.
double normalized_drag(const GeometryCache& geom, double F0);
double normalized_drag(const GeometryCache& geom, const BoundaryOperators& ops);

/// Rayleigh quotient J_D / J_W for an arbitrary nodal slip.
double slip_efficiency(const GeometryCache& geom, const BoundaryOperators& ops, double F0,
                       const Eigen::VectorXd& slip_nodal);

}  // namespace swimopt
