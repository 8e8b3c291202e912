#pragma once

#include <Eigen/Dense>

namespace swimopt {

enum class KernelKind { single_layer, traction, pressure };

/// Point of the meridian plane; the normal is only used by the traction kernel.
struct MeridianPoint {
  double r = 0.0, z = 0.0;
  double n_r = 0.0, n_z = 0.0;
};

/// Azimuthally integrated kernels for a ring source at (r, z) and a target
/// at (r0, 0, z0). Blocks act on (zeta_r, zeta_z) of the ring density and
/// return (r, z) components at the target. Prefactors 1/(8 pi), 3/(4 pi) and
/// 1/(4 pi) are included; the source area element R alpha dt is not.
struct KernelBlocks {
  Eigen::Matrix2d single;
  Eigen::Matrix2d traction;      // uses the target normal
  Eigen::RowVector2d pressure;
};

/// Throws GeometryError when source and target coincide.
KernelBlocks azimuthal_reduce_all(const MeridianPoint& target, const MeridianPoint& source);
/// Same, with the offset (r0 - r, z0 - z) supplied by the caller. Near the
/// target the plain difference loses the O(d^2) normal component.
KernelBlocks azimuthal_reduce_all(const MeridianPoint& target, const MeridianPoint& source,
                                  double dr, double dz);

/// Single kernel; pressure is returned in the first row of the matrix.
Eigen::Matrix2d azimuthal_reduce(KernelKind kind, const MeridianPoint& source,
                                 const MeridianPoint& target);

/// Moments I(s, m) = int_0^{2 pi} (1 - cos phi)^m X^s dphi with
/// X = eps + b (1 - cos phi), for s in {1/2, -1/2, -3/2, -5/2}.
struct RingMoments {
  double h1_0 = 0.0;                      // s = 1/2
  double m1[2] = {0.0, 0.0};              // s = -1/2, m = 0..1
  double m3[3] = {0.0, 0.0, 0.0};         // s = -3/2, m = 0..2
  double m5[4] = {0.0, 0.0, 0.0, 0.0};    // s = -5/2, m = 0..3
};
RingMoments ring_moments(double eps, double b);

}  // namespace swimopt
