#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "swimopt/optimizer.hpp"
#include "swimopt/shapes.hpp"

using namespace swimopt;

namespace {

ObjectiveFn rosenbrock() {
  return [](const Eigen::VectorXd& x) -> std::optional<std::pair<double, Eigen::VectorXd>> {
    const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
    Eigen::VectorXd g(2);
    g << -2.0 * a - 400.0 * x[0] * b, 200.0 * b;
    return std::make_pair(a * a + 100.0 * b * b, g);
  };
}

}  // namespace

TEST_CASE("BFGS minimises the Rosenbrock function") {
  BfgsOptions o;
  o.g_tol = 1e-10;
  o.max_iter = 500;
  const BfgsResult r = bfgs_minimize(rosenbrock(), Eigen::Vector2d(-1.2, 1.0), o);
  CHECK(r.converged);
  CHECK((r.x - Eigen::Vector2d(1.0, 1.0)).norm() < 1e-8);
  for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] <= r.history[k - 1]);
}

TEST_CASE("inadmissible trial points are treated as +infinity") {
  // f = (x - 2)^2 but x > 1.5 is forbidden
  ObjectiveFn f = [](const Eigen::VectorXd& x) -> std::optional<std::pair<double, Eigen::VectorXd>> {
    if (x[0] > 1.5) return std::nullopt;
    return std::make_pair((x[0] - 2.0) * (x[0] - 2.0), Eigen::VectorXd::Constant(1, 2.0 * (x[0] - 2.0)));
  };
  BfgsOptions o;
  o.max_iter = 100;
  const BfgsResult r = bfgs_minimize(f, Eigen::VectorXd::Zero(1), o);
  CHECK(r.x[0] <= 1.5);
  CHECK(r.x[0] > 1.4);
  CHECK_THROWS_AS(bfgs_minimize(f, Eigen::VectorXd::Constant(1, 3.0), o), std::invalid_argument);
}

TEST_CASE("projected BFGS respects linear bounds") {
  // min (x + 1)^2 + (y - 2)^2 subject to x + y >= 3 -> (0, 3)
  ObjectiveFn f = [](const Eigen::VectorXd& x) -> std::optional<std::pair<double, Eigen::VectorXd>> {
    Eigen::VectorXd g(2);
    g << 2.0 * (x[0] + 1.0), 2.0 * (x[1] - 2.0);
    return std::make_pair((x[0] + 1.0) * (x[0] + 1.0) + (x[1] - 2.0) * (x[1] - 2.0), g);
  };
  LinearBound b{Eigen::Vector2d(1.0, 1.0), 3.0};
  BfgsOptions o;
  o.g_tol = 1e-10;
  const BfgsResult r = bfgs_minimize(f, Eigen::Vector2d(4.0, 4.0), o, nullptr, nullptr, {b});
  CHECK(r.x[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
  CHECK(r.x[1] == doctest::Approx(3.0).epsilon(1e-7));
  Eigen::VectorXd x = Eigen::Vector2d(0.0, 0.0);
  project_bounds(x, {b});
  CHECK(x[0] + x[1] == doctest::Approx(3.0));
}

TEST_CASE("augmented Lagrangian solves a constrained quadratic") {
  // min x^2 + 2 y^2 subject to x + y = 1 -> (2/3, 1/3), multiplier 4/3
  ALMOptions ao;
  ao.sigma0 = 10.0;
  ALMState st = initial_state(ao);
  Eigen::VectorXd x = Eigen::Vector2d(0.0, 0.0);
  BfgsOptions bo;
  bo.g_tol = 1e-12;
  double C = 1.0;
  for (int outer = 0; outer < ao.max_outer && std::abs(C) > 1e-10; ++outer) {
    ObjectiveFn f = [&](const Eigen::VectorXd& y) -> std::optional<std::pair<double, Eigen::VectorXd>> {
      const double J = y[0] * y[0] + 2.0 * y[1] * y[1];
      const Eigen::Vector2d dJ(2.0 * y[0], 4.0 * y[1]), dC(1.0, 1.0);
      const AugmentedValue v = augmented_lagrangian(Problem::min_drag, J, dJ, y[0] + y[1] - 1.0, dC, st);
      return std::make_pair(v.L, v.grad);
    };
    x = bfgs_minimize(f, x, bo).x;
    C = x[0] + x[1] - 1.0;
    const double last = st.last_C;
    st = update_multipliers(st, C, ao);
    if (std::isfinite(last)) CHECK(std::abs(C) <= std::abs(last) + 1e-14);
  }
  CHECK(x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(st.lambda == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("multiplier and penalty updates") {
  ALMOptions ao;
  ao.sigma0 = 10.0;
  ALMState s = initial_state(ao);
  s = update_multipliers(s, 0.1, ao);
  CHECK(s.lambda == doctest::Approx(-1.0));
  CHECK(s.sigma == doctest::Approx(10.0));  // no previous constraint value to beat
  s = update_multipliers(s, 0.01, ao);      // shrank by more than rho
  CHECK(s.sigma == doctest::Approx(10.0));
  s = update_multipliers(s, 0.009, ao);
  CHECK(s.sigma == doctest::Approx(100.0));
  // efficiency is maximised: L = -E - lambda C + sigma/2 C^2
  const AugmentedValue v = augmented_lagrangian(Problem::max_efficiency, 2.0, Eigen::VectorXd::Ones(1), 0.5,
                                                Eigen::VectorXd::Ones(1), s);
  CHECK(v.L == doctest::Approx(-2.0 - s.lambda * 0.5 + 0.5 * s.sigma * 0.25));
  CHECK(initial_state(ALMOptions{}, Problem::max_efficiency).sigma > initial_state(ALMOptions{}).sigma);
  ALMOptions bad;
  bad.sigma0 = -1.0;
  CHECK_THROWS_AS(initial_state(bad), std::invalid_argument);
}

TEST_CASE("normalisation is a pure rescaling and recentring") {
  const Discretization disc;
  const GeneratingCurve c = preset_curve("peanut", 0.7, disc.n_intervals).scaled(1.7).shifted(0.4);
  Eigen::VectorXd x = free_params(c);
  const ShapeEvaluation before = evaluate_shape(c, disc, true);
  const double scale = normalize_shape(x, disc.shape_basis(), disc.grid());
  const ShapeEvaluation after = evaluate_shape(curve_from_free_params(x, disc.shape_basis()), disc, true);
  CHECK(scale == doctest::Approx(1.0 / 1.7).epsilon(1e-6));
  CHECK(after.measures.A == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(after.report.E == doctest::Approx(before.report.E).epsilon(1e-10));
  CHECK(after.J_drag == doctest::Approx(before.J_drag).epsilon(1e-10));
  CHECK(after.measures.nu == doctest::Approx(before.measures.nu).epsilon(1e-12));
}

TEST_CASE("pole slope bounds encode R'(0) and -R'(pi)") {
  const Discretization disc;
  const GeneratingCurve c = preset_curve("spheroid", 0.8, disc.n_intervals);
  const auto b = pole_slope_bounds(disc.shape_basis(), 0.05);
  REQUIRE(b.size() == 2);
  const Eigen::VectorXd x = free_params(c);
  CHECK(b[0].a.dot(x) == doctest::Approx(c.at(0.0).dR));
  CHECK(b[1].a.dot(x) == doctest::Approx(-c.at(std::numbers::pi).dR));
}

TEST_CASE("nu0 = 1 returns the sphere at once") {
  OptOptions o;
  const OptResult r = optimize_shape(Problem::min_drag, preset_curve("sphere", 1.0, o.disc.n_intervals), 1.0, o);
  CHECK(r.converged);
  CHECK(r.inner_iterations == 0);
  CHECK(r.J_drag == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("a short drag minimisation lowers drag and keeps the constraint") {
  OptOptions o;
  o.alm.max_outer = 2;
  o.bfgs.max_iter = 8;
  const GeneratingCurve init = preset_curve("peanut", 0.8, o.disc.n_intervals);
  const double d0 = evaluate_shape(init, o.disc, false).J_drag;
  const OptResult r = optimize_shape(Problem::min_drag, init, 0.8, o);
  CHECK(r.J_drag < d0);
  CHECK(std::abs(r.nu - 0.8) < 2e-2);
  REQUIRE(!r.snapshots.empty());
  for (const Snapshot& s : r.snapshots) CHECK(std::isfinite(s.objective));
}

TEST_CASE("problem names") {
  CHECK(parse_problem("max-eff") == Problem::max_efficiency);
  CHECK(parse_problem("min-drag") == Problem::min_drag);
  CHECK(problem_name(Problem::min_drag) == "min-drag");
  CHECK_THROWS_AS(parse_problem("fastest"), std::invalid_argument);
}
