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

struct Setup {
  GeometryCache geom;
  BoundaryOperators ops;
};

Setup setup(const GeneratingCurve& c, int panels = 16, int order = 16) {
  Setup s{geometry_at(c, make_panel_grid(panels, order)), {}};
  s.ops = assemble_operators(s.geom, build_singular_rule(order));
  return s;
}

Eigen::VectorXd random_slip(const GeometryCache& g, std::mt19937& gen) {
  std::normal_distribution<double> nd;
  const double a = nd(gen), b = nd(gen), c = nd(gen);
  Eigen::VectorXd u(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double t = g.grid.t[i];
    u[i] = std::sin(t) * (a + b * std::cos(t) + c * std::cos(2.0 * t));
  }
  return u;
}

}  // namespace

TEST_CASE("towed sphere obeys Stokes law") {
  const Setup s = setup(sphere_curve(1.5));
  const FlowSolution a = solve_adjoint(s.geom, s.ops);
  CHECK(a.F0 == doctest::Approx(6.0 * kPi * 1.5).epsilon(1e-10));
  CHECK(a.residual < 1e-10);
  // traction on a towed sphere is uniform: f = 3/(2a) e_z
  for (int i = 0; i < s.geom.size(); ++i) {
    CHECK(a.f_z[i] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(a.f_r[i]) < 1e-9);
  }
}

TEST_CASE("prolate spheroid drag matches the closed form") {
  for (double ar : {1.5, 2.0, 4.0}) {
    const Setup s = setup(spheroid_curve(1.0, ar), 24, 16);
    CHECK(solve_adjoint(s.geom, s.ops).F0 == doctest::Approx(prolate_drag(1.0, ar)).epsilon(1e-8));
  }
}

TEST_CASE("exterior velocity of the towed sphere") {
  const Setup s = setup(sphere_curve());
  const FlowSolution a = solve_adjoint(s.geom, s.ops);
  Eigen::Matrix2Xd pts(2, 4);
  pts << 1.5, 0.3, 2.0, 4.0, 0.2, 1.4, -1.0, 3.0;
  const Eigen::Matrix2Xd u = eval_offsurface(s.geom, build_singular_rule(16), a.zeta, pts);
  for (int k = 0; k < pts.cols(); ++k) {
    const Eigen::Vector3d x(pts(0, k), 0.0, pts(1, k)), e(0.0, 0.0, 1.0);
    const double r = x.norm();
    const Eigen::Vector3d exact = 0.75 * (e / r + x.dot(e) * x / std::pow(r, 3)) +
                                  0.25 * (e / std::pow(r, 3) - 3.0 * x.dot(e) * x / std::pow(r, 5));
    CHECK(u(0, k) == doctest::Approx(exact[0]).epsilon(1e-9).scale(1.0));
    CHECK(u(1, k) == doctest::Approx(exact[2]).epsilon(1e-9).scale(1.0));
  }
  CHECK(inside_body(s.geom, 0.2, 0.1));
  CHECK_FALSE(inside_body(s.geom, 1.2, 0.1));
  Eigen::Matrix2Xd inner(2, 1);
  inner << 0.2, 0.1;
  CHECK_THROWS_AS(eval_offsurface(s.geom, build_singular_rule(16), a.zeta, inner), GeometryError);
}

TEST_CASE("sphere squirmer with u_S = sin t swims at 2/3") {
  const Setup s = setup(sphere_curve());
  Eigen::VectorXd u = s.geom.grid.t.array().sin().matrix();
  const FlowSolution f = solve_forward(s.geom, s.ops, u);
  CHECK(std::abs(f.U) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  // force free
  CHECK(std::abs(s.geom.surface_integral(f.f_z)) < 1e-10);
}

TEST_CASE("reciprocity and positive dissipation") {
  std::mt19937 gen(11);
  const GeneratingCurve shapes[] = {sphere_curve(), spheroid_curve(1.0, 2.0), peanut_curve(0.3, 1.2)};
  for (const GeneratingCurve& c : shapes) {
    const Setup s = setup(c, 24, 12);
    for (int k = 0; k < 10; ++k) {
      const FlowSolution a = solve_forward(s.geom, s.ops, random_slip(s.geom, gen));
      const FlowSolution b = solve_forward(s.geom, s.ops, random_slip(s.geom, gen));
      CHECK(reciprocity_check(s.geom, a, b) <= 1e-7);
      CHECK(dissipation(s.geom, a) >= -1e-10);
    }
  }
}

TEST_CASE("forward solve with a spline slip profile") {
  const Setup s = setup(sphere_curve());
  const SlipBasis basis(16);
  const SlipProfile prof = slip_from_function([](double t) { return std::sin(t); }, basis);
  const FlowSolution f = solve_forward(s.geom, s.ops, prof);
  CHECK(std::abs(f.U) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}
