#include "swimopt/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "swimopt/curve.hpp"

namespace swimopt {

double carlson_rf(double x, double y, double z) {
  for (int it = 0; it < 100; ++it) {
    const double mu = (x + y + z) / 3.0;
    const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    const double eps = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
    if (eps < 2.5e-3) {
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(mu);
    }
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sx * sz + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  return 1.0 / std::sqrt((x + y + z) / 3.0);
}

double carlson_rd(double x, double y, double z) {
  double sum = 0.0, fac = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mu = (x + y + 3.0 * z) / 5.0;
    const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    const double eps = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
    if (eps < 1.5e-3) {
      const double ea = dx * dy, eb = dz * dz;
      const double ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
      const double s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                       dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
      return 3.0 * sum + fac * (1.0 + s) / (mu * std::sqrt(mu));
    }
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sx * sz + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  const double mu = (x + y + 3.0 * z) / 5.0;
  return 3.0 * sum + fac / (mu * std::sqrt(mu));
}

EllipticKE complete_elliptic(double m, double m1) {
  if (!(m >= 0.0) || !(m1 > 0.0) || m > 1.0) {
    throw GeometryError("elliptic parameter outside [0, 1)");
  }
  // K = R_F(0, m1, 1) and E = K - m/3 R_D(0, m1, 1) share one duplication sequence
  double x = 0.0, y = m1, z = 1.0, sum = 0.0, fac = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mean = (x + y + z) / 3.0;
    const double spread = std::max({std::abs(x - mean), std::abs(y - mean), std::abs(z - mean)}) / mean;
    if (spread < 1e-3) break;
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sx * sz + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  EllipticKE out;
  {
    const double mu = (x + y + z) / 3.0;
    const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    const double e2 = dx * dy - dz * dz, e3 = dx * dy * dz;
    out.K = (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(mu);
  }
  {
    const double mu = (x + y + 3.0 * z) / 5.0;
    const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    const double ea = dx * dy, eb = dz * dz;
    const double ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
    const double s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                     dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
    const double rd = 3.0 * sum + fac * (1.0 + s) / (mu * std::sqrt(mu));
    out.E = out.K - m / 3.0 * rd;
  }
  return out;
}

double ellipk(double m) { return complete_elliptic(m, 1.0 - m).K; }
double ellipe(double m) { return complete_elliptic(m, 1.0 - m).E; }

}  // namespace swimopt
