#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "swimopt/geometry.hpp"
#include "swimopt/operators.hpp"
#include "swimopt/slip.hpp"

namespace swimopt {

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class FlowKind { forward, adjoint, auxiliary };

/// Boundary solution on the geometry grid.
///
/// Traction is f = sigma . n with the inward normal n, so that the towing
/// problem gives F0 = <f, e_z> > 0.
struct FlowSolution {
  FlowKind kind = FlowKind::forward;
  Eigen::VectorXd zeta;          // interleaved (r, z) density
  double U = 0.0;                // swim speed (forward only)
  Eigen::VectorXd f_r, f_z;      // traction in cylindrical components
  Eigen::VectorXd f_tau, f_n, p;
  Eigen::VectorXd slip;          // u^S (forward) or z^S (auxiliary) at the nodes
  double F0 = 0.0;               // towing force (adjoint only)
  double multiplier = 0.0;       // null-space border multiplier, ~0 when consistent
  double residual = 0.0;         // max-norm residual of the imposed condition
};

FlowSolution solve_adjoint(const GeometryCache& geom, const BoundaryOperators& ops);

/// Forward problem with nodal slip values.
FlowSolution solve_forward(const GeometryCache& geom, const BoundaryOperators& ops,
                           const Eigen::VectorXd& slip_nodal);
FlowSolution solve_forward(const GeometryCache& geom, const BoundaryOperators& ops,
                           const SlipProfile& slip);

FlowSolution solve_auxiliary(const GeometryCache& geom, const BoundaryOperators& ops,
                             const FlowSolution& adjoint);

/// Velocity of the single layer zeta at exterior points (2 x M, rows r and z).
/// Throws GeometryError for points inside or on the body.
Eigen::Matrix2Xd eval_offsurface(const GeometryCache& geom, const SingularRule& rule,
                                 const Eigen::VectorXd& zeta, const Eigen::Matrix2Xd& points);

/// True if (r, z) lies inside the body (meridian region bounded by the axis).
bool inside_body(const GeometryCache& geom, double r, double z);

/// Boundary velocity U e_z + u^S tau of a forward solution (interleaved).
Eigen::VectorXd boundary_velocity(const GeometryCache& geom, const FlowSolution& sol);

/// |<u1^D, f2> - <u2^D, f1>| / (|<u1^D, f2>| + |<u2^D, f1>|).
double reciprocity_check(const GeometryCache& geom, const FlowSolution& sol1,
                         const FlowSolution& sol2);

/// <u^D, f>_Gamma for one solution.
double dissipation(const GeometryCache& geom, const FlowSolution& sol);

}  // namespace swimopt
