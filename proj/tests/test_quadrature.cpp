#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "swimopt/geometry.hpp"
#include "swimopt/quadrature.hpp"

using namespace swimopt;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {4, 8, 12, 16}) {
    const GaussRule g = gauss_legendre(n);
    for (int p = 0; p < 2 * n; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
    }
  }
}

TEST_CASE("logarithmic singularity inside and at the end of the interval") {
  const SingularRule rule = build_singular_rule(16);
  auto exact = [](double a, double b, double s0) {
    auto F = [s0](double s) {
      const double d = s - s0;
      return d == 0.0 ? 0.0 : d * std::log(std::abs(d)) - d;
    };
    return F(b) - F(a);
  };
  for (double s0 : {0.0, 0.123, 0.5, 0.77, 1.0}) {
    const double got = rule.integrate([s0](double s) { return std::log(std::abs(s - s0)); }, 0.0, 1.0, s0);
    // the innermost dyadic layers stop at a floor of 1e-13
    CHECK(std::abs(got - exact(0.0, 1.0, s0)) <= 1e-10);
  }
}

TEST_CASE("Cauchy principal value") {
  const SingularRule rule = build_singular_rule(12);
  for (double s0 : {0.2, 0.5, 0.9}) {
    const double got = rule.integrate([s0](double s) { return std::cos(s) / (s - s0); }, 0.0, 1.0, s0);
    // pv int cos(s)/(s - s0) = cos(s0) log((1 - s0)/s0) + int (cos s - cos s0)/(s - s0)
    const SingularRule smooth = build_singular_rule(16);
    const double reg = smooth.integrate(
        [s0](double s) { return s == s0 ? -std::sin(s0) : (std::cos(s) - std::cos(s0)) / (s - s0); }, 0.0, 1.0, 2.0);
    // s0 + u rounds, so the innermost pairs cancel only to about eps |s0| / u
    CHECK(std::abs(got - (std::cos(s0) * std::log((1.0 - s0) / s0) + reg)) <= 1e-5);
  }
}

TEST_CASE("panel grid weights integrate smooth functions on (0, pi)") {
  const PanelGrid g = make_panel_grid(16, 8);
  CHECK(g.size() == 128);
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.w[i] * std::sin(g.t[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("panel derivative and interpolation are spectrally accurate") {
  const PanelGrid g = make_panel_grid(12, 12);
  Eigen::VectorXd f = g.t.array().sin().matrix();
  const Eigen::VectorXd df = panel_derivative(g, f);
  for (int i = 0; i < g.size(); ++i) CHECK(df[i] == doctest::Approx(std::cos(g.t[i])).epsilon(1e-11));
  double w[12];
  panel_interpolation(g, 3, 0.5 * (g.panel_lo(3) + g.panel_hi(3)) + 0.01, w);
  double v = 0.0;
  for (int j = 0; j < 12; ++j) v += w[j] * f[3 * 12 + j];
  CHECK(v == doctest::Approx(std::sin(0.5 * (g.panel_lo(3) + g.panel_hi(3)) + 0.01)).epsilon(1e-13));
}

TEST_CASE("unsupported panel orders are rejected") {
  CHECK_THROWS_AS(build_singular_rule(10), std::invalid_argument);
}
