#include "swimopt/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swimopt {

namespace {

constexpr double kBinom6[7] = {1, 6, 15, 20, 15, 6, 1};
constexpr double kInvFactorial[6] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0};

}  // namespace

double cardinal_bspline(double x, int deriv) {
  if (deriv < 0 || deriv > 5 || x <= 0.0 || x >= 6.0) return 0.0;
  // Mirror symmetry B(x) = B(6 - x) keeps the truncated-power sum short.
  if (x > 3.0) {
    const double v = cardinal_bspline(6.0 - x, deriv);
    return (deriv % 2 == 0) ? v : -v;
  }
  const int power = 5 - deriv;
  const int last = static_cast<int>(std::floor(x));
  double sum = 0.0;
  for (int j = 0; j <= last; ++j) {
    const double d = x - j;
    double term = 1.0;
    for (int p = 0; p < power; ++p) term *= d;
    sum += ((j % 2 == 0) ? 1.0 : -1.0) * kBinom6[j] * term;
  }
  return sum * kInvFactorial[power];
}

BasisSet::BasisSet(int n_intervals, double domain_length)
    : n_intervals_(n_intervals), length_(domain_length) {
  if (n_intervals < 1) {
    throw std::invalid_argument("BasisSet: need at least one interval, got " +
                                std::to_string(n_intervals));
  }
  if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
    throw std::invalid_argument("BasisSet: domain length must be positive");
  }
  scale_ = n_intervals_ / length_;
}

BasisSet::Local BasisSet::local(double t, int deriv) const {
  const double x = t * scale_;
  const int cell = std::clamp(static_cast<int>(std::floor(x)), 0, n_intervals_ - 1);
  Local out;
  out.first = cell;
  out.values.fill(0.0);
  if (deriv < 0 || deriv > 5) return out;
  const double u = x - cell;
  // N[m] = B_d(u + d - m), raised one degree at a time
  double N[kLocal] = {1.0};
  const int degree = 5 - deriv;
  for (int d = 1; d <= degree; ++d) {
    for (int m = d; m >= 0; --m) {
      const double left = m > 0 ? (u + d - m) * N[m - 1] : 0.0;
      const double right = m < d ? (m + 1 - u) * N[m] : 0.0;
      N[m] = (left + right) / d;
    }
  }
  // k-th derivative of B_5 is the k-th backward difference of B_{5-k}
  double factor = 1.0;
  for (int k = 0; k < deriv; ++k) factor *= scale_;
  for (int m = 0; m < kLocal; ++m) {
    double sum = 0.0, binom = 1.0;
    for (int i = 0; i <= deriv; ++i) {
      const int j = m - deriv + i;
      if (j >= 0 && j <= degree) sum += ((i % 2) ? -binom : binom) * N[j];
      binom = binom * (deriv - i) / (i + 1);
    }
    out.values[m] = factor * sum;
  }
  return out;
}

double BasisSet::value(int k, double t, int deriv) const {
  if (k < 0 || k >= size()) return 0.0;
  return std::pow(scale_, deriv) * cardinal_bspline(t * scale_ - k + 5.0, deriv);
}

double BasisSet::evaluate(std::span<const double> coef, double t, int deriv) const {
  const Local loc = local(t, deriv);
  double sum = 0.0;
  for (int m = 0; m < kLocal; ++m) {
    const int k = loc.first + m;
    if (k < static_cast<int>(coef.size())) sum += coef[k] * loc.values[m];
  }
  return sum;
}

BasisSet build_basis(int n_intervals, double domain_length) {
  return BasisSet(n_intervals, domain_length);
}

}  // namespace swimopt
