#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swimopt/bspline.hpp"

namespace swimopt {

/// Raised for degenerate or inadmissible curves.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Position of the meridian and its first two t-derivatives.
struct CurvePoint {
  double R = 0.0, Z = 0.0;
  double dR = 0.0, dZ = 0.0;
  double ddR = 0.0, ddZ = 0.0;
};

/// Meridian arc t -> (R(t), Z(t)), t in [0, pi].
///
/// Either a quintic B-spline curve (coefficients xi_R, xi_Z) or an analytic
/// curve given by a callable. The analytic variant exists so that tests can
/// compare against closed-form shapes without a fitting error.
class GeneratingCurve {
public:
  using Analytic = std::function<CurvePoint(double)>;

  /// Raw coefficients; pole conditions are not enforced here.
  static GeneratingCurve from_coefficients(const BasisSet& basis, Eigen::VectorXd xi_R,
                                           Eigen::VectorXd xi_Z);
  static GeneratingCurve analytic(Analytic fn, std::string label = "analytic");

  bool is_spline() const noexcept { return basis_.has_value(); }
  const std::string& label() const noexcept { return label_; }

  const BasisSet& basis() const;
  const Eigen::VectorXd& xi_R() const { return xi_R_; }
  const Eigen::VectorXd& xi_Z() const { return xi_Z_; }

  /// Number of spline coefficients per component (N_gamma).
  int n_coefficients() const { return static_cast<int>(xi_R_.size()); }
  int free_dof() const { return 2 * n_coefficients() - 4; }

  CurvePoint at(double t) const;

  GeneratingCurve scaled(double factor) const;
  GeneratingCurve shifted(double dz) const;

private:
  void build_cells();

  std::optional<BasisSet> basis_;
  Eigen::VectorXd xi_R_, xi_Z_;
  std::vector<std::array<double, 12>> cells_;  // power coefficients of R then Z on each interval
  std::shared_ptr<const Analytic> fn_;
  std::string label_ = "spline";
};

/// Complete a free-parameter vector (xi_R[1..n-2], xi_Z[1..n-2]) with the four
/// end coefficients fixed by R(0) = R(pi) = 0 and Z'(0) = Z'(pi) = 0.
/// Requires basis.n_intervals() > 10.
GeneratingCurve curve_from_free_params(const Eigen::VectorXd& free, const BasisSet& basis);

/// Inverse of curve_from_free_params for spline curves.
Eigen::VectorXd free_params(const GeneratingCurve& curve);

/// Expand a free-parameter direction into full coefficient vectors, applying
/// the same (homogeneous) end elimination. Returns (zeta_R, zeta_Z).
std::pair<Eigen::VectorXd, Eigen::VectorXd> expand_direction(const Eigen::VectorXd& free,
                                                             const BasisSet& basis);

/// Least-squares fit of a spline curve with pole conditions to any curve.
GeneratingCurve fit_curve(const GeneratingCurve& target, const BasisSet& basis,
                          int samples_per_interval = 8);

/// Throws GeometryError if R is not positive on the given parameter values
/// (relative floor 1e-8 of max R) or if the arc-length Jacobian vanishes.
void check_admissible(const GeneratingCurve& curve, const Eigen::VectorXd& t);

}  // namespace swimopt
