#include "swimopt/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "swimopt/curve.hpp"
#include "swimopt/elliptic.hpp"

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTrapezoid = 24;

struct TrapTable {
  std::array<double, kTrapezoid / 2 + 1> psi{}, w{};
  TrapTable() {
    const double h = 2.0 * kPi / kTrapezoid;
    for (int j = 0; j <= kTrapezoid / 2; ++j) {
      psi[j] = 1.0 - std::cos(j * h);
      w[j] = (j == 0 || j == kTrapezoid / 2) ? h : 2.0 * h;
    }
  }
};

const TrapTable& trap_table() {
  static const TrapTable table;
  return table;
}

}  // namespace

RingMoments ring_moments(double eps, double b) {
  RingMoments m;
  const double a = eps + b;
  const double mpar = 2.0 * b / (a + b);
  if (mpar > 0.5) {
    const double m1 = eps / (a + b);
    const EllipticKE ke = complete_elliptic(mpar, m1);
    const double sq = std::sqrt(a + b);
    m.h1_0 = 4.0 * sq * ke.E;
    m.m1[0] = 4.0 * ke.K / sq;
    m.m3[0] = 4.0 * ke.E / (eps * sq);
    m.m5[0] = (4.0 * a * m.m3[0] - m.m1[0]) / (3.0 * eps * (a + b));
    // (1 - cos) X^s = (X^{s+1} - eps X^s) / b
    m.m1[1] = (m.h1_0 - eps * m.m1[0]) / b;
    m.m3[1] = (m.m1[0] - eps * m.m3[0]) / b;
    m.m3[2] = (m.m1[1] - eps * m.m3[1]) / b;
    m.m5[1] = (m.m3[0] - eps * m.m5[0]) / b;
    m.m5[2] = (m.m3[1] - eps * m.m5[1]) / b;
    m.m5[3] = (m.m3[2] - eps * m.m5[2]) / b;
    return m;
  }
  // far from the ring or close to the axis: periodic trapezoid converges fast
  const TrapTable& tt = trap_table();
  for (int j = 0; j <= kTrapezoid / 2; ++j) {
    const double psi = tt.psi[j];
    const double X = eps + b * psi;
    const double x1 = 1.0 / std::sqrt(X);
    const double x3 = x1 / X, x5 = x3 / X;
    const double w = tt.w[j];
    m.h1_0 += w * X * x1;
    double pm = w;
    for (int k = 0; k < 4; ++k) {
      if (k < 2) m.m1[k] += pm * x1;
      if (k < 3) m.m3[k] += pm * x3;
      m.m5[k] += pm * x5;
      pm *= psi;
    }
  }
  return m;
}

KernelBlocks azimuthal_reduce_all(const MeridianPoint& target, const MeridianPoint& source) {
  return azimuthal_reduce_all(target, source, target.r - source.r, target.z - source.z);
}

KernelBlocks azimuthal_reduce_all(const MeridianPoint& target, const MeridianPoint& source,
                                  double dr, double dz) {
  const double r0 = target.r, r = source.r;
  const double eps = dr * dr + dz * dz;
  if (!(eps > 0.0)) throw GeometryError("kernel evaluated at coincident points");
  const double b = 2.0 * r * r0;
  const RingMoments I = ring_moments(eps, b);

  KernelBlocks out;
  // numerators expanded in psi = 1 - cos(phi):
  //   P = dr + r psi, Q = dr - r0 psi, N = N0 + n_r r psi
  const double pq1 = -dr * dr, pq2 = -r * r0;
  const double s_rr = (I.m1[0] - I.m1[1]) + dr * dr * I.m3[0] + pq1 * I.m3[1] + pq2 * I.m3[2];
  const double s_rz = dz * (dr * I.m3[0] + r * I.m3[1]);
  const double s_zr = dz * (dr * I.m3[0] - r0 * I.m3[1]);
  const double s_zz = I.m1[0] + dz * dz * I.m3[0];
  const double cs = 1.0 / (8.0 * kPi);
  out.single << cs * s_rr, cs * s_rz, cs * s_zr, cs * s_zz;

  const double n0 = target.n_r * dr + target.n_z * dz;
  const double nr = target.n_r * r;
  const double pqn0 = dr * dr * n0;
  const double pqn1 = dr * dr * nr + pq1 * n0;
  const double pqn2 = pq1 * nr + pq2 * n0;
  const double pqn3 = pq2 * nr;
  const double k_rr = pqn0 * I.m5[0] + pqn1 * I.m5[1] + pqn2 * I.m5[2] + pqn3 * I.m5[3];
  const double k_rz = dz * (dr * n0 * I.m5[0] + (dr * nr + r * n0) * I.m5[1] + r * nr * I.m5[2]);
  const double k_zr = dz * (dr * n0 * I.m5[0] + (dr * nr - r0 * n0) * I.m5[1] - r0 * nr * I.m5[2]);
  const double k_zz = dz * dz * (n0 * I.m5[0] + nr * I.m5[1]);
  const double ck = 3.0 / (4.0 * kPi);
  out.traction << ck * k_rr, ck * k_rz, ck * k_zr, ck * k_zz;

  const double cp = 1.0 / (4.0 * kPi);
  out.pressure << cp * (dr * I.m3[0] - r0 * I.m3[1]), cp * dz * I.m3[0];
  return out;
}

Eigen::Matrix2d azimuthal_reduce(KernelKind kind, const MeridianPoint& source,
                                 const MeridianPoint& target) {
  const KernelBlocks kb = azimuthal_reduce_all(target, source);
  switch (kind) {
    case KernelKind::single_layer:
      return kb.single;
    case KernelKind::traction:
      return kb.traction;
    case KernelKind::pressure: {
      Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
      m.row(0) = kb.pressure;
      return m;
    }
  }
  return Eigen::Matrix2d::Zero();
}

}  // namespace swimopt
