#include "swimopt/perturbation.hpp"

#include <stdexcept>

namespace swimopt {

namespace {

// theta_n = (theta_r Z' - theta_z R') / alpha and its t-derivative.
void project(const GeometryCache& g, int i, const FieldSample& f, ShapePerturbation& out) {
  const double a = g.alpha[i];
  const double da = (g.dR[i] * g.ddR[i] + g.dZ[i] * g.ddZ[i]) / a;
  const double num = f.r * g.dZ[i] - f.z * g.dR[i];
  const double dnum = f.dr * g.dZ[i] + f.r * g.ddZ[i] - f.dz * g.dR[i] - f.z * g.ddR[i];
  out.theta_r[i] = f.r;
  out.theta_z[i] = f.z;
  out.theta_tau[i] = (f.r * g.dR[i] + f.z * g.dZ[i]) / a;
  out.theta_n[i] = num / a;
  out.d_theta_n[i] = dnum / a - num * da / (a * a);
}

ShapePerturbation allocate(int n) {
  ShapePerturbation p;
  for (auto* v : {&p.theta_r, &p.theta_z, &p.theta_tau, &p.theta_n, &p.d_theta_n})
    v->resize(n);
  return p;
}

}  // namespace

ShapePerturbation& ShapePerturbation::operator+=(const ShapePerturbation& o) {
  if (zeta_R.size() == o.zeta_R.size() && zeta_R.size() > 0) {
    zeta_R += o.zeta_R;
    zeta_Z += o.zeta_Z;
  } else {
    zeta_R.resize(0);
    zeta_Z.resize(0);
  }
  theta_r += o.theta_r;
  theta_z += o.theta_z;
  theta_tau += o.theta_tau;
  theta_n += o.theta_n;
  d_theta_n += o.d_theta_n;
  return *this;
}

ShapePerturbation& ShapePerturbation::operator*=(double c) {
  zeta_R *= c;
  zeta_Z *= c;
  theta_r *= c;
  theta_z *= c;
  theta_tau *= c;
  theta_n *= c;
  d_theta_n *= c;
  return *this;
}

ShapePerturbation perturbation_field(const Eigen::VectorXd& zeta_free, const GeometryCache& geom) {
  if (!geom.curve.is_spline()) {
    throw std::invalid_argument("perturbation_field needs a spline curve; use perturbation_from_field");
  }
  const BasisSet& basis = geom.curve.basis();
  auto [zr, zz] = expand_direction(zeta_free, basis);
  const int n = geom.size();
  ShapePerturbation out = allocate(n);
  const std::span<const double> sr(zr.data(), zr.size()), sz(zz.data(), zz.size());
  for (int i = 0; i < n; ++i) {
    const double t = geom.grid.t[i];
    FieldSample f;
    f.r = basis.evaluate(sr, t, 0);
    f.z = basis.evaluate(sz, t, 0);
    f.dr = basis.evaluate(sr, t, 1);
    f.dz = basis.evaluate(sz, t, 1);
    project(geom, i, f, out);
  }
  out.zeta_R = std::move(zr);
  out.zeta_Z = std::move(zz);
  return out;
}

ShapePerturbation perturbation_from_field(const std::function<FieldSample(double)>& field,
                                          const GeometryCache& geom) {
  const int n = geom.size();
  ShapePerturbation out = allocate(n);
  for (int i = 0; i < n; ++i) project(geom, i, field(geom.grid.t[i]), out);
  return out;
}

ShapePerturbation with_tangential(const ShapePerturbation& pert, const Eigen::VectorXd& g,
                                  const GeometryCache& geom) {
  ShapePerturbation out = pert;
  out.theta_r += g.cwiseProduct(geom.tau_r);
  out.theta_z += g.cwiseProduct(geom.tau_z);
  out.zeta_R.resize(0);
  out.zeta_Z.resize(0);
  out.theta_tau += g;
  return out;
}

}  // namespace swimopt
