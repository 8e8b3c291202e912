#pragma once

#include <functional>

#include <Eigen/Dense>

#include "swimopt/bspline.hpp"

namespace swimopt {

/// Cardinal slip basis w_1..w_{N_u} on [0, pi].
///
/// Each w_k is a quintic spline on the extended domain [0, 2 pi] with
/// 2(N_u + 1) intervals, interpolating the odd extension of the unit sample
/// at t_k = k pi / (N_u + 1), with derivatives of order 1..4 matched between
/// t = 0 and t = 2 pi.
class SlipBasis {
public:
  explicit SlipBasis(int n_u);

  int n_u() const noexcept { return n_u_; }
  const BasisSet& basis() const noexcept { return basis_; }
  /// Row k holds the spline coefficients of w_{k+1}.
  const Eigen::MatrixXd& coefficients() const noexcept { return coef_; }
  double node(int k) const;  // t_{k+1}, k = 0..N_u-1

private:
  int n_u_;
  BasisSet basis_;
  Eigen::MatrixXd coef_;
};

/// u^S(t) = sum_k xi_u[k] w_k(t).
class SlipProfile {
public:
  SlipProfile(const SlipBasis& basis, Eigen::VectorXd xi_u);

  const Eigen::VectorXd& xi_u() const noexcept { return xi_u_; }
  int n_u() const noexcept { return static_cast<int>(xi_u_.size()); }
  double value(double t, int deriv = 0) const;
  Eigen::VectorXd sample(const Eigen::VectorXd& t, int deriv = 0) const;

private:
  BasisSet basis_;
  Eigen::VectorXd xi_u_;
  Eigen::VectorXd spline_coef_;
};

SlipProfile slip_from_params(const Eigen::VectorXd& xi_u, const SlipBasis& basis);

/// Samples fn at the interior slip nodes.
SlipProfile slip_from_function(const std::function<double(double)>& fn, const SlipBasis& basis);

}  // namespace swimopt
