#include "swimopt/sensitivity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;

// 2 pi sum_i w_i g_i
double integrate_t(const GeometryCache& geom, const Eigen::ArrayXd& g) {
  return 2.0 * kPi * (geom.grid.w.array() * g).sum();
}

}  // namespace

MeasureDerivatives d_measures(const GeometryCache& geom, const ShapePerturbation& pert) {
  const auto R = geom.R.array(), a = geom.alpha.array(), tn = pert.theta_n.array();
  MeasureDerivatives d;
  d.dV = -integrate_t(geom, tn * R * a);
  d.dA = integrate_t(geom, (geom.dZ.array() - geom.kappa.array() * R * a) * tn);
  const Measures m = measures(geom);
  d.dnu = m.nu * (d.dV / m.V - 1.5 * d.dA / m.A);
  return d;
}

double d_F0(const GeometryCache& geom, const FlowSolution& adjoint, const ShapePerturbation& pert) {
  return -integrate_t(geom, adjoint.f_tau.array().square() * pert.theta_n.array() *
                                geom.area_element.array());
}

double d_JW(const GeometryCache& geom, const FlowSolution& forward, const Eigen::VectorXd& slip,
            const Eigen::VectorXd& dslip, const ShapePerturbation& pert) {
  const auto R = geom.R.array(), a = geom.alpha.array();
  const auto u = slip.array(), du = dslip.array();
  const auto ft = forward.f_tau.array(), fn = forward.f_n.array(), p = forward.p.array();
  const Eigen::ArrayXd q = geom.dR.array() * u / (R * a);
  // the strain contributes 2 (f_n + p) q besides 4 q^2
  const Eigen::ArrayXd bracket = 4.0 * q.square() + 2.0 * (fn + p) * q - ft.square() + (fn + p) * p +
                                 2.0 * geom.kappa.array() * u * ft;
  const Eigen::ArrayXd integrand = (bracket * a * pert.theta_n.array() -
                                    2.0 * ft * du * pert.theta_tau.array() +
                                    2.0 * u * fn * pert.d_theta_n.array()) * R;
  return integrate_t(geom, integrand);
}

double d_U(const GeometryCache& geom, const FlowSolution& forward, const FlowSolution& adjoint,
           const Eigen::VectorXd& slip, const Eigen::VectorXd& dslip, const ShapePerturbation& pert) {
  const auto R = geom.R.array(), a = geom.alpha.array();
  const auto u = slip.array(), du = dslip.array();
  const auto ft = forward.f_tau.array(), fn = forward.f_n.array(), p = forward.p.array();
  const auto fht = adjoint.f_tau.array(), ph = adjoint.p.array();
  const Eigen::ArrayXd bracket =
      geom.kappa.array() * u * fht - ft * fht + 0.5 * (fn + p) * ph;
  const Eigen::ArrayXd integrand = (bracket * a * pert.theta_n.array() -
                                    fht * du * pert.theta_tau.array() -
                                    u * ph * pert.d_theta_n.array()) * R;
  return -integrate_t(geom, integrand) / adjoint.F0;
}

double d_drag(const GeometryCache& geom, const FlowSolution& adjoint, const ShapePerturbation& pert) {
  const Measures m = measures(geom);
  const MeasureDerivatives dm = d_measures(geom, pert);
  const double jd = normalized_drag(geom, adjoint.F0);
  return jd * (d_F0(geom, adjoint, pert) / adjoint.F0 - dm.dV / (3.0 * m.V));
}

double d_efficiency(const GeometryCache& geom, const FlowSolution& adjoint,
                    const FlowSolution& auxiliary, const ShapePerturbation& pert) {
  const double F0 = adjoint.F0;
  const double U = swim_speed_from_adjoint(geom, adjoint, auxiliary.slip);
  const auto R = geom.R.array(), a = geom.alpha.array();
  const auto z = auxiliary.slip.array();
  const auto fnt = auxiliary.f_n.array(), pt = auxiliary.p.array();
  const auto fht = adjoint.f_tau.array(), ph = adjoint.p.array();
  const Eigen::ArrayXd q = geom.dR.array() * z / (R * a);
  const Eigen::ArrayXd bracket = 4.0 * q.square() + 2.0 * (fnt + pt) * q + (fnt + pt) * (pt - ph) +
                                 (1.0 + U) * fht.square();
  const Eigen::ArrayXd integrand =
      (2.0 * z * (fnt + ph) * pert.d_theta_n.array() + bracket * a * pert.theta_n.array()) * R;
  return -integrate_t(geom, integrand) / (F0 * (1.0 + U) * (1.0 + U));
}

DirectionalDerivatives directional_derivatives(const GeometryCache& geom,
                                               const EfficiencyReport& solutions,
                                               const ShapePerturbation& pert, bool with_efficiency) {
  DirectionalDerivatives d;
  const Measures m = measures(geom);
  d.measures = d_measures(geom, pert);
  d.dF0 = d_F0(geom, solutions.adjoint, pert);
  const double jd = normalized_drag(geom, solutions.adjoint.F0);
  d.ddrag = jd * (d.dF0 / solutions.adjoint.F0 - d.measures.dV / (3.0 * m.V));
  if (with_efficiency) d.dE = d_efficiency(geom, solutions.adjoint, solutions.auxiliary, pert);
  return d;
}

ShapeGradient gradient_vector(const GeometryCache& geom, Objective objective,
                              const EfficiencyReport& solutions) {
  if (!geom.curve.is_spline()) throw std::invalid_argument("gradient_vector needs a spline curve");
  const int nfree = geom.curve.free_dof();
  ShapeGradient g;
  g.objective = objective;
  g.values.resize(nfree);
  Eigen::VectorXd dslip;
  if (objective == Objective::JW || objective == Objective::U) {
    dslip = panel_derivative(geom.grid, solutions.forward.slip);
  }
  const Measures m = measures(geom);
  for (int k = 0; k < nfree; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nfree);
    e[k] = 1.0;
    const ShapePerturbation pert = perturbation_field(e, geom);
    double v = 0.0;
    switch (objective) {
      case Objective::efficiency:
        v = d_efficiency(geom, solutions.adjoint, solutions.auxiliary, pert);
        break;
      case Objective::drag:
        v = d_drag(geom, solutions.adjoint, pert);
        break;
      case Objective::reduced_volume: {
        const MeasureDerivatives dm = d_measures(geom, pert);
        v = m.nu * (dm.dV / m.V - 1.5 * dm.dA / m.A);
        break;
      }
      case Objective::JW:
        v = d_JW(geom, solutions.forward, solutions.forward.slip, dslip, pert);
        break;
      case Objective::U:
        v = d_U(geom, solutions.forward, solutions.adjoint, solutions.forward.slip, dslip, pert);
        break;
      case Objective::F0:
        v = d_F0(geom, solutions.adjoint, pert);
        break;
    }
    g.values[k] = v;
  }
  return g;
}

FdCheck fd_check(const std::function<double(const Eigen::VectorXd&)>& objective,
                 const Eigen::VectorXd& free_params, const Eigen::VectorXd& direction, double eta,
                 double analytic) {
  if (!(eta > 0.0)) throw std::invalid_argument("fd_check: eta must be positive");
  FdCheck out;
  const double jp = objective(free_params + eta * direction);
  const double jm = objective(free_params - eta * direction);
  out.fd = (jp - jm) / (2.0 * eta);
  out.abs_err = std::abs(analytic - out.fd);
  out.rel_err = out.fd != 0.0 ? out.abs_err / std::abs(out.fd) : out.abs_err;
  return out;
}

}  // namespace swimopt
