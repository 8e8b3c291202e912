#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "swimopt/curve.hpp"
#include "swimopt/geometry.hpp"
#include "swimopt/shapes.hpp"

using namespace swimopt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("free parameters round-trip and satisfy the pole conditions") {
  const BasisSet b = build_basis(14, kPi);
  std::mt19937 gen(3);
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(2 * b.size() - 4);
  for (auto& v : x) v = nd(gen);
  const GeneratingCurve c = curve_from_free_params(x, b);
  CHECK((free_params(c) - x).norm() < 1e-12);
  CHECK(std::abs(c.at(0.0).R) < 1e-12);
  CHECK(std::abs(c.at(kPi).R) < 1e-12);
  CHECK(std::abs(c.at(0.0).dZ) < 1e-12);
  CHECK(std::abs(c.at(kPi).dZ) < 1e-12);
}

TEST_CASE("sphere fit with 24 intervals is accurate to 1e-6") {
  const GeneratingCurve c = fit_curve(sphere_curve(), build_basis(24, kPi));
  double err = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = kPi * k / 1000.0;
    err = std::max({err, std::abs(c.at(t).R - std::sin(t)), std::abs(c.at(t).Z - std::cos(t))});
  }
  CHECK(err <= 1e-6);
}

TEST_CASE("end elimination needs more than ten intervals") {
  const BasisSet b = build_basis(10, kPi);
  CHECK_THROWS(curve_from_free_params(Eigen::VectorXd::Zero(2 * b.size() - 4), b));
}

TEST_CASE("scaling and shifting act on the coefficients") {
  const GeneratingCurve c = preset_curve("peanut", 0.7, 12);
  const GeneratingCurve s = c.scaled(2.0).shifted(0.5);
  for (double t : {0.1, 1.0, 2.5}) {
    CHECK(s.at(t).R == doctest::Approx(2.0 * c.at(t).R));
    CHECK(s.at(t).Z == doctest::Approx(2.0 * c.at(t).Z + 0.5));
  }
}

TEST_CASE("curves touching the axis are inadmissible") {
  const GeneratingCurve bad = GeneratingCurve::analytic([](double t) {
    CurvePoint p;
    p.R = std::sin(t) * std::cos(t) * std::cos(t);
    p.Z = std::cos(t);
    p.dR = std::cos(t) * std::cos(t) * std::cos(t) - 2.0 * std::sin(t) * std::sin(t) * std::cos(t);
    p.dZ = -std::sin(t);
    return p;
  });
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(101, 0.01, kPi - 0.01);
  CHECK_THROWS_AS(check_admissible(bad, t), GeometryError);
}

TEST_CASE("sphere and spheroid measures match closed forms") {
  const PanelGrid grid = make_panel_grid(24, 12);
  const Measures m = measures(sphere_curve(2.0), grid);
  CHECK(m.V == doctest::Approx(4.0 / 3.0 * kPi * 8.0).epsilon(1e-13));
  CHECK(m.A == doctest::Approx(16.0 * kPi).epsilon(1e-13));
  CHECK(m.nu == doctest::Approx(1.0).epsilon(1e-13));
  const Measures s = measures(spheroid_curve(1.0, 2.0), grid);
  CHECK(s.V == doctest::Approx(spheroid_volume(1.0, 2.0)).epsilon(1e-12));
  CHECK(s.A == doctest::Approx(spheroid_area(1.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("spheroid aspect ratio reproduces the requested reduced volume") {
  for (double nu : {0.6, 0.75, 0.9, 0.99}) {
    const double ar = spheroid_aspect_for_nu(nu);
    const double got = 6.0 * std::sqrt(kPi) * spheroid_volume(1.0, ar) / std::pow(spheroid_area(1.0, ar), 1.5);
    CHECK(got == doctest::Approx(nu).epsilon(1e-12));
  }
}

TEST_CASE("geometry of the sphere") {
  const GeometryCache g = geometry_at(sphere_curve(), make_panel_grid(8, 8));
  for (int i = 0; i < g.size(); ++i) {
    CHECK(g.kappa[i] == doctest::Approx(1.0).epsilon(1e-13));
    // inward normal
    CHECK(g.n_r[i] == doctest::Approx(-std::sin(g.grid.t[i])).epsilon(1e-13));
    CHECK(g.n_z[i] == doctest::Approx(-std::cos(g.grid.t[i])).epsilon(1e-13));
  }
  CHECK_FALSE(self_intersecting(g));
  const Turning tr = turning(g);
  CHECK(tr.total == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(tr.concave == doctest::Approx(0.0));
}

TEST_CASE("a meridian folding back on itself is detected") {
  const GeneratingCurve fold = GeneratingCurve::analytic([](double t) {
    CurvePoint p;
    p.R = std::sin(t) * (1.0 + 0.9 * std::cos(2.0 * t));
    p.Z = std::cos(t) + 1.5 * std::sin(2.0 * t);
    p.dR = std::cos(t) * (1.0 + 0.9 * std::cos(2.0 * t)) - 1.8 * std::sin(t) * std::sin(2.0 * t);
    p.dZ = -std::sin(t) + 3.0 * std::cos(2.0 * t);
    return p;
  });
  CHECK(self_intersecting(geometry_at(fold, make_panel_grid(16, 8))));
}
