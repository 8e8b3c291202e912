#include "swimopt/slip.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace swimopt {

namespace {
constexpr double kPi = std::numbers::pi;
}

SlipBasis::SlipBasis(int n_u) : n_u_(n_u), basis_(2 * (std::max(n_u, 1) + 1), 2.0 * kPi) {
  if (n_u < 1) throw std::invalid_argument("slip basis needs N_u >= 1, got " + std::to_string(n_u));
  const int nb = basis_.size();  // 2 N_u + 7
  const int npts = 2 * n_u + 3;
  const double h = kPi / (n_u + 1);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nb, nb);
  for (int i = 0; i < npts; ++i) {
    for (int k = 0; k < nb; ++k) A(i, k) = basis_.value(k, i * h);
  }
  for (int d = 1; d <= 4; ++d) {
    for (int k = 0; k < nb; ++k) {
      A(npts + d - 1, k) = basis_.value(k, 0.0, d) - basis_.value(k, 2.0 * kPi, d);
    }
  }
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nb, n_u);
  for (int k = 0; k < n_u; ++k) {
    rhs(k + 1, k) = 1.0;
    rhs(npts - 2 - k, k) = -1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw std::runtime_error("singular slip interpolation system");
  coef_ = lu.solve(rhs).transpose();
}

double SlipBasis::node(int k) const { return (k + 1) * kPi / (n_u_ + 1); }

SlipProfile::SlipProfile(const SlipBasis& basis, Eigen::VectorXd xi_u)
    : basis_(basis.basis()), xi_u_(std::move(xi_u)) {
  if (xi_u_.size() != basis.n_u()) {
    throw std::invalid_argument("slip coefficient vector must have length N_u");
  }
  spline_coef_ = basis.coefficients().transpose() * xi_u_;
}

double SlipProfile::value(double t, int deriv) const {
  return basis_.evaluate(std::span<const double>(spline_coef_.data(), spline_coef_.size()), t,
                         deriv);
}

Eigen::VectorXd SlipProfile::sample(const Eigen::VectorXd& t, int deriv) const {
  Eigen::VectorXd out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) out[i] = value(t[i], deriv);
  return out;
}

SlipProfile slip_from_params(const Eigen::VectorXd& xi_u, const SlipBasis& basis) {
  return SlipProfile(basis, xi_u);
}

SlipProfile slip_from_function(const std::function<double(double)>& fn, const SlipBasis& basis) {
  Eigen::VectorXd xi(basis.n_u());
  for (int k = 0; k < basis.n_u(); ++k) xi[k] = fn(basis.node(k));
  return SlipProfile(basis, std::move(xi));
}

}  // namespace swimopt
