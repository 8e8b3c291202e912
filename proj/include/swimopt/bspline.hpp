#pragma once

#include <array>
#include <span>

namespace swimopt {

/// Quintic cardinal B-spline supported on the integer knots {0, ..., 6},
/// or its derivative of order `deriv` (0..5). Zero outside (0, 6).
double cardinal_bspline(double x, int deriv = 0);

/// Uniform quintic B-spline basis on [0, L].
///
/// The basis has N_L + 5 members. Member k (0-based) is the cardinal spline
/// shifted so that its support covers the cells (k - 5, k + 1) of the
/// rescaled variable x = t N_L / L. Members are not clamped at the domain
/// ends: the first five and the last five are the only ones that do not
/// vanish at t = 0 and t = L respectively, and together they form a
/// partition of unity on [0, L].
class BasisSet {
public:
  static constexpr int kDegree = 5;
  static constexpr int kLocal = 6;  // members that can be nonzero at a point

  BasisSet(int n_intervals, double domain_length);

  int n_intervals() const noexcept { return n_intervals_; }
  double domain_length() const noexcept { return length_; }
  int size() const noexcept { return n_intervals_ + 5; }

  /// The kLocal members that may be nonzero at t: indices first..first+5.
  struct Local {
    int first = 0;
    std::array<double, kLocal> values{};
  };
  Local local(double t, int deriv = 0) const;

  double value(int k, double t, int deriv = 0) const;

  /// Sum of coef[k] * B_k^(deriv)(t).
  double evaluate(std::span<const double> coef, double t, int deriv = 0) const;

private:
  int n_intervals_;
  double length_;
  double scale_;
};

/// Throws std::invalid_argument for a non-positive interval count or length.
BasisSet build_basis(int n_intervals, double domain_length);

}  // namespace swimopt
