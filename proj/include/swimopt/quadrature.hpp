#pragma once

#include <functional>
#include <vector>

#include "swimopt/geometry.hpp"

namespace swimopt {

struct QuadPoint {
  double s = 0.0, w = 0.0;
};

/// Quadrature for integrands with a logarithmic or Cauchy-type singularity.
///
/// Inside the interval the singular point is bracketed by symmetric dyadic
/// layers, so an odd 1/(s - s0) part cancels pairwise and the integral is
/// taken in the principal-value sense. The rest of the interval is graded
/// geometrically towards the singular point: every subinterval is as long
/// as its distance to s0 and gets a Gauss-Legendre rule of `sub_order`.
class SingularRule {
public:
  SingularRule(int panel_order, int sub_order, int levels);

  int panel_order() const noexcept { return panel_order_; }
  int sub_order() const noexcept { return static_cast<int>(sub_.x.size()); }
  int levels() const noexcept { return levels_; }

  /// Append nodes for int_a^b f(s) ds with f singular at s0 (which may lie
  /// inside, at an end of, or outside [a, b]).
  void append_points(double a, double b, double s0, std::vector<QuadPoint>& out) const;

  /// Gauss-Legendre rule of sub_order mapped to [a, b].
  void append_smooth(double a, double b, std::vector<QuadPoint>& out) const;

  double integrate(const std::function<double(double)>& f, double a, double b, double s0) const;

private:
  void append_graded(double lo, double hi, double s0, std::vector<QuadPoint>& out) const;

  int panel_order_;
  int levels_;
  GaussRule sub_;
};

/// panel_order must be 8, 12 or 16.
SingularRule build_singular_rule(int panel_order);

}  // namespace swimopt
