#pragma once

#include <Eigen/Dense>

#include "swimopt/geometry.hpp"
#include "swimopt/kernels.hpp"
#include "swimopt/quadrature.hpp"

namespace swimopt {

/// Dense reduced operator. Unknowns are interleaved: entry 2j is the r
/// component of the density at node j and 2j + 1 the z component.
struct ReducedKernel {
  KernelKind kind = KernelKind::single_layer;
  Eigen::MatrixXd values;
};

/// Integral parts of the three boundary operators on one geometry.
///   single   (2N x 2N): velocity S[zeta]
///   traction (2N x 2N): K[zeta] with the inward target normal
///   pressure (N  x 2N): principal value part of the surface pressure
/// The jump terms are added by the solvers.
struct BoundaryOperators {
  Eigen::MatrixXd single, traction, pressure;
  int size() const { return static_cast<int>(pressure.rows()); }
};

BoundaryOperators assemble_operators(const GeometryCache& geom, const SingularRule& rule);
ReducedKernel assemble_operator(KernelKind kind, const GeometryCache& geom, const SingularRule& rule);

/// Single-layer velocity at off-surface points (r, z); rows (u_r, u_z).
Eigen::Matrix2Xd single_layer_at(const GeometryCache& geom, const SingularRule& rule,
                                 const Eigen::VectorXd& zeta, const Eigen::Matrix2Xd& points);

/// The same row block as used for surface nodes, for an arbitrary target.
/// Output is 2 x 2N.
Eigen::MatrixXd single_layer_row(const GeometryCache& geom, const SingularRule& rule,
                                 const MeridianPoint& target);

}  // namespace swimopt
