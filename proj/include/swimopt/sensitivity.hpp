#pragma once

#include <functional>

#include <Eigen/Dense>

#include "swimopt/functionals.hpp"
#include "swimopt/perturbation.hpp"

namespace swimopt {

struct MeasureDerivatives {
  double dV = 0.0, dA = 0.0, dnu = 0.0;
};

MeasureDerivatives d_measures(const GeometryCache& geom, const ShapePerturbation& pert);

double d_F0(const GeometryCache& geom, const FlowSolution& adjoint, const ShapePerturbation& pert);

/// Power-loss derivative for a convected slip; `slip` and `dslip` are the
/// nodal slip and its t-derivative that produced `forward`.
double d_JW(const GeometryCache& geom, const FlowSolution& forward, const Eigen::VectorXd& slip,
            const Eigen::VectorXd& dslip, const ShapePerturbation& pert);

double d_U(const GeometryCache& geom, const FlowSolution& forward, const FlowSolution& adjoint,
           const Eigen::VectorXd& slip, const Eigen::VectorXd& dslip, const ShapePerturbation& pert);

double d_drag(const GeometryCache& geom, const FlowSolution& adjoint, const ShapePerturbation& pert);

/// Derivative of the optimal efficiency; needs only the adjoint and
/// auxiliary solutions and involves theta_n and theta_n' alone.
double d_efficiency(const GeometryCache& geom, const FlowSolution& adjoint,
                    const FlowSolution& auxiliary, const ShapePerturbation& pert);

enum class Objective { efficiency, drag, reduced_volume, JW, U, F0 };

struct ShapeGradient {
  Objective objective = Objective::efficiency;
  Eigen::VectorXd values;
};

/// Derivatives along every free-parameter basis direction. For JW and U the
/// forward solution stored in the report (slip z^S) is used.
ShapeGradient gradient_vector(const GeometryCache& geom, Objective objective,
                              const EfficiencyReport& solutions);

/// All derivatives along one direction of a spline curve.
struct DirectionalDerivatives {
  MeasureDerivatives measures;
  double dF0 = 0.0, ddrag = 0.0, dE = 0.0;
};
DirectionalDerivatives directional_derivatives(const GeometryCache& geom,
                                               const EfficiencyReport& solutions,
                                               const ShapePerturbation& pert, bool with_efficiency);

struct FdCheck {
  double fd = 0.0, abs_err = 0.0, rel_err = 0.0;
};

/// Central difference [J(x + eta d) - J(x - eta d)] / (2 eta) against an
/// analytic value.
FdCheck fd_check(const std::function<double(const Eigen::VectorXd&)>& objective,
                 const Eigen::VectorXd& free_params, const Eigen::VectorXd& direction, double eta,
                 double analytic);

}  // namespace swimopt
