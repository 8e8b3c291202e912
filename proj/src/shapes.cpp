#include "swimopt/shapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swimopt/geometry.hpp"

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GeneratingCurve sphere_curve(double radius) {
  return GeneratingCurve::analytic(
      [radius](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return CurvePoint{radius * s, radius * c, radius * c, -radius * s, -radius * s, -radius * c};
      },
      "sphere");
}

GeneratingCurve spheroid_curve(double b, double c) {
  return GeneratingCurve::analytic(
      [b, c](double t) {
        const double s = std::sin(t), co = std::cos(t);
        return CurvePoint{b * s, c * co, b * co, -c * s, -b * s, -c * co};
      },
      "spheroid");
}

double spheroid_volume(double b, double c) { return 4.0 / 3.0 * kPi * b * b * c; }

double spheroid_area(double b, double c) {
  if (std::abs(c - b) < 1e-14 * b) return 4.0 * kPi * b * b;
  if (c > b) {
    const double e = std::sqrt(1.0 - b * b / (c * c));
    return 2.0 * kPi * b * b * (1.0 + c / (b * e) * std::asin(e));
  }
  const double e = std::sqrt(1.0 - c * c / (b * b));
  return 2.0 * kPi * b * b * (1.0 + (1.0 - e * e) / e * std::atanh(e));
}

double prolate_drag(double b, double c) {
  if (c < b) throw std::invalid_argument("prolate_drag needs c >= b");
  const double e = std::sqrt(1.0 - b * b / (c * c));
  if (e < 1e-6) return 6.0 * kPi * c;
  const double L = std::log((1.0 + e) / (1.0 - e));
  return 16.0 * kPi * c * e * e * e / ((1.0 + e * e) * L - 2.0 * e);
}

double spheroid_aspect_for_nu(double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("reduced volume must lie in (0, 1]");
  if (nu == 1.0) return 1.0;
  auto f = [nu](double ar) {
    const double A = spheroid_area(1.0, ar);
    return 6.0 * std::sqrt(kPi) * spheroid_volume(1.0, ar) / std::pow(A, 1.5) - nu;
  };
  return bisect(f, 1.0, 1e4);
}

GeneratingCurve peanut_curve(double beta, double q) {
  return GeneratingCurve::analytic(
      [beta, q](double t) {
        const double s = std::sin(t), c = std::cos(t);
        const double g = 1.0 + beta * std::cos(2.0 * t);
        const double dg = -2.0 * beta * std::sin(2.0 * t);
        const double ddg = -4.0 * beta * std::cos(2.0 * t);
        return CurvePoint{s * g, q * c, c * g + s * dg, -q * s, -s * g + 2.0 * c * dg + s * ddg,
                          -q * c};
      },
      "peanut");
}

double peanut_height_for_nu(double nu, double beta) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("peanut reduced volume must lie in (0, 1)");
  const PanelGrid grid = make_panel_grid(32, 16);
  auto f = [&](double q) { return measures(peanut_curve(beta, q), grid).nu - nu; };
  // nu decreases as the body is stretched along the axis
  double lo = 0.5, hi = 1.0;
  while (f(hi) > 0.0 && hi < 1e3) hi *= 2.0;
  if (f(lo) < 0.0) throw std::invalid_argument("reduced volume not reachable by the peanut family");
  return bisect(f, lo, hi);
}

GeneratingCurve preset_curve(const std::string& name, double nu, int n_intervals) {
  GeneratingCurve shape = sphere_curve();
  if (name == "sphere") {
    shape = sphere_curve();
  } else if (name == "spheroid") {
    const double ar = spheroid_aspect_for_nu(nu);
    shape = spheroid_curve(1.0, ar);
  } else if (name == "peanut") {
    shape = peanut_curve(0.3, peanut_height_for_nu(nu, 0.3));
  } else {
    throw std::invalid_argument("unknown shape preset '" + name + "'");
  }
  GeneratingCurve fitted = fit_curve(shape, build_basis(n_intervals, kPi));
  const Measures m = measures(fitted, make_panel_grid(32, 16));
  return fitted.scaled(std::sqrt(4.0 * kPi / m.A));
}

}  // namespace swimopt
