#pragma once

#include <functional>

#include <Eigen/Dense>

#include "swimopt/geometry.hpp"

namespace swimopt {

/// Nodal transformation velocity theta on the geometry grid.
struct ShapePerturbation {
  Eigen::VectorXd zeta_R, zeta_Z;  // full coefficient directions (empty for field-based)
  Eigen::VectorXd theta_r, theta_z;
  Eigen::VectorXd theta_tau, theta_n, d_theta_n;

  ShapePerturbation& operator+=(const ShapePerturbation& o);
  ShapePerturbation& operator*=(double c);
};

/// theta = (zeta_R . B) e_r + (zeta_Z . B) e_z for a free-parameter direction.
ShapePerturbation perturbation_field(const Eigen::VectorXd& zeta_free, const GeometryCache& geom);

/// Value and t-derivative of (theta_r, theta_z) at t.
struct FieldSample {
  double r = 0.0, z = 0.0, dr = 0.0, dz = 0.0;
};

/// Perturbation from an arbitrary smooth field given as a callable of t.
ShapePerturbation perturbation_from_field(const std::function<FieldSample(double)>& field,
                                          const GeometryCache& geom);

/// Adds g(t) tau to theta without touching the normal part.
ShapePerturbation with_tangential(const ShapePerturbation& pert, const Eigen::VectorXd& g,
                                  const GeometryCache& geom);

}  // namespace swimopt
