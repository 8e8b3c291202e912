#pragma once

namespace swimopt {

/// Carlson symmetric integrals.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

struct EllipticKE {
  double K = 0.0, E = 0.0;
};

/// Complete elliptic integrals of the first and second kind for parameter m
/// (= k^2). `m1` must equal 1 - m; passing it separately keeps full relative
/// accuracy as m -> 1. Throws GeometryError when m is outside [0, 1).
EllipticKE complete_elliptic(double m, double m1);

double ellipk(double m);
double ellipe(double m);

}  // namespace swimopt
