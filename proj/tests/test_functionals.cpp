#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "swimopt/pipeline.hpp"
#include "swimopt/shapes.hpp"

using namespace swimopt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere: optimal efficiency is one half with a sine slip") {
  const ShapeEvaluation ev = evaluate_shape(sphere_curve(), Discretization{}, true);
  CHECK(ev.report.E == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ev.report.E_check == doctest::Approx(0.5).epsilon(1e-10));
  const Eigen::VectorXd& z = ev.report.z_S;
  const double scale = z.cwiseAbs().maxCoeff();
  const double sign = z[z.size() / 2] > 0 ? 1.0 : -1.0;
  double err = 0.0;
  for (int i = 0; i < z.size(); ++i) err = std::max(err, std::abs(sign * z[i] / scale - std::sin(ev.geom.grid.t[i])));
  CHECK(err < 1e-6);
  CHECK(ev.J_drag == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("swimming efficiency relations") {
  const ShapeEvaluation ev = evaluate_shape(spheroid_curve(1.0, 2.0), Discretization{}, true);
  const EfficiencyReport& r = ev.report;
  CHECK(r.E == doctest::Approx(-r.U_opt / (1.0 + r.U_opt)).epsilon(1e-12));
  CHECK(r.J_D == doctest::Approx(towing_power(r.F0, r.U_opt)));
  CHECK(r.E_check == doctest::Approx(r.E).epsilon(1e-9));
  CHECK(r.U_opt < 0.0);
  CHECK_THROWS_AS(efficiency(1.0, 0.0), std::domain_error);
}

TEST_CASE("prolate spheroid efficiencies") {
  const double nus[] = {0.6, 0.7, 0.8, 0.9};
  const double ref[] = {3.859753, 2.517108, 1.688483, 1.111298};
  for (int k = 0; k < 4; ++k) {
    const ShapeEvaluation ev = evaluate_shape(spheroid_curve(1.0, spheroid_aspect_for_nu(nus[k])), Discretization{}, true);
    CHECK(ev.report.E == doctest::Approx(ref[k]).epsilon(1e-5));
  }
}

TEST_CASE("optimal slip maximises the Rayleigh quotient") {
  std::mt19937 gen(5);
  std::normal_distribution<double> nd;
  const GeneratingCurve shapes[] = {sphere_curve(), spheroid_curve(1.0, 1.7), peanut_curve(0.3, 1.3)};
  for (const GeneratingCurve& c : shapes) {
    const ShapeEvaluation ev = evaluate_shape(c, Discretization{}, true);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd u(ev.geom.size());
      const double a = nd(gen), b = nd(gen), d = nd(gen);
      for (int i = 0; i < u.size(); ++i) {
        const double t = ev.geom.grid.t[i];
        u[i] = std::sin(t) * (a + b * std::cos(t) + d * std::sin(3.0 * t));
      }
      CHECK(slip_efficiency(ev.geom, ev.ops, ev.report.F0, u) <= ev.report.E + 1e-6);
    }
    // the optimum itself attains the bound
    CHECK(slip_efficiency(ev.geom, ev.ops, ev.report.F0, ev.report.z_S) == doctest::Approx(ev.report.E).epsilon(1e-9));
  }
}

TEST_CASE("normalised drag is scale invariant") {
  const Discretization d;
  const GeneratingCurve c = preset_curve("peanut", 0.75, d.n_intervals);
  const ShapeEvaluation a = evaluate_shape(c, d, false), b = evaluate_shape(c.scaled(2.5), d, false);
  CHECK(a.J_drag == doctest::Approx(b.J_drag).epsilon(1e-12));
  CHECK(b.report.F0 == doctest::Approx(2.5 * a.report.F0).epsilon(1e-12));
  CHECK(normalized_drag(a.geom, 6.0 * kPi * std::cbrt(3.0 * a.measures.V / (4.0 * kPi))) == doctest::Approx(1.0));
}
