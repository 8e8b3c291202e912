#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "swimopt/kernels.hpp"

using namespace swimopt;

namespace {

constexpr double kPi = std::numbers::pi;

struct Brute {
  Eigen::Matrix2d single = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d traction = Eigen::Matrix2d::Zero();
  Eigen::RowVector2d pressure = Eigen::RowVector2d::Zero();
};

// 3-D Stokeslet of a ring at (r, z) seen from (r0, 0, z0), trapezoid in phi
Brute brute(const MeridianPoint& tgt, const MeridianPoint& src, int n = 4000) {
  Brute b;
  const Eigen::Vector3d x0(tgt.r, 0.0, tgt.z);
  const Eigen::Vector3d n0(tgt.n_r, 0.0, tgt.n_z);
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * k / n, w = 2.0 * kPi / n;
    const Eigen::Vector3d y(src.r * std::cos(phi), src.r * std::sin(phi), src.z);
    const Eigen::Vector3d er(std::cos(phi), std::sin(phi), 0.0), ez(0.0, 0.0, 1.0);
    const Eigen::Vector3d x = x0 - y;
    const double r = x.norm();
    const Eigen::Matrix3d G = (Eigen::Matrix3d::Identity() / r + x * x.transpose() / (r * r * r)) / (8.0 * kPi);
    const Eigen::Matrix3d T = 3.0 / (4.0 * kPi) * x * x.transpose() * x.dot(n0) / std::pow(r, 5);
    const Eigen::Vector3d P = x / (4.0 * kPi * r * r * r);
    const Eigen::Vector3d dirs[2] = {er, ez};
    for (int j = 0; j < 2; ++j) {
      const Eigen::Vector3d u = G * dirs[j], t = T * dirs[j];
      b.single(0, j) += w * u[0];
      b.single(1, j) += w * u[2];
      b.traction(0, j) += w * t[0];
      b.traction(1, j) += w * t[2];
      b.pressure(j) += w * P.dot(dirs[j]);
    }
  }
  return b;
}

}  // namespace

TEST_CASE("azimuthal reduction matches brute-force ring integration") {
  const MeridianPoint src{0.8, 0.1, 0.0, 0.0};
  const MeridianPoint targets[] = {
      {1.3, 0.4, 0.6, 0.8}, {0.5, -0.7, -1.0, 0.0}, {0.82, 0.12, 0.0, 1.0}, {2.5, 3.0, 0.6, -0.8}, {0.05, 0.3, 0.0, 1.0}};
  for (const MeridianPoint& t : targets) {
    const KernelBlocks k = azimuthal_reduce_all(t, src);
    const Brute b = brute(t, src);
    CHECK((k.single - b.single).norm() <= 1e-11 * b.single.norm());
    CHECK((k.traction - b.traction).norm() <= 1e-10 * b.traction.norm());
    CHECK((k.pressure - b.pressure).norm() <= 1e-10 * b.pressure.norm());
  }
}

TEST_CASE("single-kernel entry points agree with the combined one") {
  const MeridianPoint src{1.0, 0.0, 0.0, 0.0}, tgt{1.2, 0.3, 0.6, 0.8};
  const KernelBlocks k = azimuthal_reduce_all(tgt, src);
  CHECK((azimuthal_reduce(KernelKind::single_layer, src, tgt) - k.single).norm() < 1e-14);
  CHECK((azimuthal_reduce(KernelKind::traction, src, tgt) - k.traction).norm() < 1e-14);
  CHECK((azimuthal_reduce(KernelKind::pressure, src, tgt).row(0) - k.pressure).norm() < 1e-14);
}

TEST_CASE("explicit offset overload matches the plain one away from the source") {
  const MeridianPoint src{1.0, 0.2, 0.0, 0.0}, tgt{1.1, 0.35, 0.6, 0.8};
  const KernelBlocks a = azimuthal_reduce_all(tgt, src);
  const KernelBlocks b = azimuthal_reduce_all(tgt, src, tgt.r - src.r, tgt.z - src.z);
  CHECK((a.single - b.single).norm() < 1e-14);
  CHECK((a.traction - b.traction).norm() < 1e-13);
}

TEST_CASE("coincident points are rejected") {
  const MeridianPoint p{1.0, 0.0, 1.0, 0.0};
  CHECK_THROWS(azimuthal_reduce_all(p, p));
}

TEST_CASE("ring moments against direct quadrature") {
  for (double eps : {1e-3, 0.1, 2.0}) {
    for (double b : {0.5, 3.0}) {
      const RingMoments m = ring_moments(eps, b);
      auto I = [&](double s, int p) {
        const int n = 20000;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
          const double c = 1.0 - std::cos(2.0 * kPi * (k + 0.5) / n);
          sum += std::pow(c, p) * std::pow(eps + b * c, s);
        }
        return sum * 2.0 * kPi / n;
      };
      CHECK(m.h1_0 == doctest::Approx(I(0.5, 0)).epsilon(1e-7));
      CHECK(m.m1[1] == doctest::Approx(I(-0.5, 1)).epsilon(1e-7));
      CHECK(m.m3[2] == doctest::Approx(I(-1.5, 2)).epsilon(1e-7));
      CHECK(m.m5[3] == doctest::Approx(I(-2.5, 3)).epsilon(1e-7));
    }
  }
}
