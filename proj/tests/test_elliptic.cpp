#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "swimopt/curve.hpp"
#include "swimopt/elliptic.hpp"

using namespace swimopt;

namespace {

// arithmetic-geometric mean with the Gauss sum for E
void agm(double m, double& K, double& E) {
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  double sum = 0.5 * c * c, pow2 = 0.5;
  for (int k = 0; k < 60 && std::abs(c) > 1e-17; ++k) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  K = std::numbers::pi / (2.0 * a);
  E = K * (1.0 - sum);
}

}  // namespace

TEST_CASE("complete elliptic integrals agree with the AGM") {
  for (double m : {0.0, 1e-8, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-9}) {
    double K, E;
    agm(m, K, E);
    const EllipticKE ke = complete_elliptic(m, 1.0 - m);
    CHECK(ke.K == doctest::Approx(K).epsilon(1e-13));
    CHECK(ke.E == doctest::Approx(E).epsilon(1e-12));
  }
}

TEST_CASE("Legendre relation") {
  for (double m : {0.2, 0.5, 0.8}) {
    const EllipticKE a = complete_elliptic(m, 1.0 - m), b = complete_elliptic(1.0 - m, m);
    CHECK(a.E * b.K + b.E * a.K - a.K * b.K == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  }
}

TEST_CASE("Carlson integrals at special arguments") {
  CHECK(carlson_rf(1.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(carlson_rd(1.0, 1.0, 1.0) == doctest::Approx(1.0));
  // R_F(0, 1, 2) = 1.31102877714605990523
  CHECK(carlson_rf(0.0, 1.0, 2.0) == doctest::Approx(1.31102877714605990523).epsilon(1e-14));
  // R_D(0, 2, 1) = 1.79721035210338831016
  CHECK(carlson_rd(0.0, 2.0, 1.0) == doctest::Approx(1.79721035210338831016).epsilon(1e-14));
}

TEST_CASE("parameter outside [0, 1) is rejected") {
  CHECK_THROWS_AS(complete_elliptic(1.0, 0.0), GeometryError);
  CHECK_THROWS_AS(complete_elliptic(-0.1, 1.1), GeometryError);
}
