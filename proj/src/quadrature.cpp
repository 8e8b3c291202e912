#include "swimopt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swimopt {

SingularRule::SingularRule(int panel_order, int sub_order, int levels)
    : panel_order_(panel_order), levels_(levels), sub_(gauss_legendre(sub_order)) {
  if (levels < 1) throw std::invalid_argument("SingularRule: levels must be positive");
}

void SingularRule::append_smooth(double a, double b, std::vector<QuadPoint>& out) const {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (Eigen::Index j = 0; j < sub_.x.size(); ++j) out.push_back({c + h * sub_.x[j], h * sub_.w[j]});
}

void SingularRule::append_graded(double lo, double hi, double s0, std::vector<QuadPoint>& out) const {
  const double len = hi - lo;
  if (!(len > 0.0)) return;
  const bool from_lo = std::abs(s0 - lo) <= std::abs(s0 - hi);
  const double d = from_lo ? std::abs(lo - s0) : std::abs(s0 - hi);
  // offsets measured from the end nearest to s0
  auto emit = [&](double o1, double o2) {
    if (from_lo)
      append_smooth(lo + o1, lo + o2, out);
    else
      append_smooth(hi - o2, hi - o1, out);
  };
  if (d < len * std::ldexp(1.0, -levels_)) {
    // singular point at the end: dyadic layers
    double top = len;
    for (int k = 0; k < levels_ && top > 1e-13 * std::max(1.0, std::abs(s0)); ++k) {
      emit(0.5 * top, top);
      top *= 0.5;
    }
    emit(0.0, top);
    return;
  }
  double start = 0.0, step = d;
  while (start < len) {
    const double end = std::min(len, start + step);
    emit(start, end);
    start = end;
    step *= 2.0;
  }
}

void SingularRule::append_points(double a, double b, double s0, std::vector<QuadPoint>& out) const {
  if (!(b > a)) return;
  if (s0 <= a || s0 >= b) {
    append_graded(a, b, s0, out);
    return;
  }
  const double delta = std::min(s0 - a, b - s0);
  double top = delta;
  // below the floor s0 +- u is no longer distinct from s0; the dropped
  // piece is O(floor log floor)
  const double floor = 1e-13 * std::max(1.0, std::abs(s0));
  for (int k = 0; k < levels_ && top > floor; ++k) {
    const double lo = 0.5 * top;
    const double c = 0.5 * (lo + top), h = 0.5 * (top - lo);
    for (Eigen::Index j = 0; j < sub_.x.size(); ++j) {
      const double u = c + h * sub_.x[j];
      out.push_back({s0 + u, h * sub_.w[j]});
      out.push_back({s0 - u, h * sub_.w[j]});
    }
    top = lo;
  }
  if (s0 - a > delta) append_graded(a, s0 - delta, s0, out);
  if (b - s0 > delta) append_graded(s0 + delta, b, s0, out);
}

double SingularRule::integrate(const std::function<double(double)>& f, double a, double b,
                               double s0) const {
  std::vector<QuadPoint> pts;
  append_points(a, b, s0, pts);
  double sum = 0.0;
  for (const auto& p : pts) sum += p.w * f(p.s);
  return sum;
}

SingularRule build_singular_rule(int panel_order) {
  switch (panel_order) {
    case 8:
      return SingularRule(8, 8, 40);
    case 12:
      return SingularRule(12, 10, 40);
    case 16:
      return SingularRule(16, 10, 40);
    default:
      throw std::invalid_argument("unsupported singular rule order " + std::to_string(panel_order) +
                                  " (expected 8, 12 or 16)");
  }
}

}  // namespace swimopt
