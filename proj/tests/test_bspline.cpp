#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "swimopt/bspline.hpp"

using namespace swimopt;

namespace {

// Cox-de Boor recursion on the knots 0..6
double cox_de_boor(int i, int p, double x) {
  if (p == 0) return (x >= i && x < i + 1) ? 1.0 : 0.0;
  return (x - i) / p * cox_de_boor(i, p - 1, x) + (i + p + 1 - x) / p * cox_de_boor(i + 1, p - 1, x);
}

}  // namespace

TEST_CASE("cardinal quintic matches Cox-de Boor") {
  for (int k = 0; k <= 600; ++k) {
    const double x = -0.5 + 7.0 * k / 600.0;
    CHECK(cardinal_bspline(x) == doctest::Approx(cox_de_boor(0, 5, x)).epsilon(1e-13));
  }
}

TEST_CASE("cardinal derivatives match finite differences of the function") {
  const double h = 1e-5;
  for (double x : {0.3, 1.7, 2.5, 3.2, 4.9, 5.6}) {
    for (int d = 1; d <= 4; ++d) {
      const double fd = (cardinal_bspline(x + h, d - 1) - cardinal_bspline(x - h, d - 1)) / (2 * h);
      CHECK(cardinal_bspline(x, d) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("basis has N_L + 5 members and sums to one on the domain") {
  const BasisSet b = build_basis(16, std::numbers::pi);
  CHECK(b.size() == 21);
  for (int k = 0; k <= 200; ++k) {
    const double t = std::numbers::pi * k / 200.0;
    double sum = 0.0;
    for (int j = 0; j < b.size(); ++j) {
      const double v = b.value(j, t);
      CHECK(v >= -1e-15);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("local evaluation agrees with member-wise evaluation") {
  const BasisSet b = build_basis(12, 2.0 * std::numbers::pi);
  for (double t : {0.0, 0.4, 1.0, 3.3, 6.0, 2.0 * std::numbers::pi}) {
    for (int d = 0; d <= 3; ++d) {
      const BasisSet::Local loc = b.local(t, d);
      for (int j = 0; j < BasisSet::kLocal; ++j) {
        if (loc.first + j < b.size()) CHECK(loc.values[j] == doctest::Approx(b.value(loc.first + j, t, d)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("fourth derivative is continuous across knots") {
  for (double knot : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    CHECK(cardinal_bspline(knot - 1e-9, 4) == doctest::Approx(cardinal_bspline(knot + 1e-9, 4)).epsilon(1e-6));
  }
}

TEST_CASE("invalid basis sizes are rejected") {
  CHECK_THROWS_AS(build_basis(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(12, -1.0), std::invalid_argument);
}
