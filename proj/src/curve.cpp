#include "swimopt/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swimopt {

namespace {

constexpr double kPi = std::numbers::pi;

void require_curve_basis(const BasisSet& basis) {
  if (basis.n_intervals() <= 10) {
    throw std::invalid_argument("curve basis needs more than 10 intervals, got " +
                                std::to_string(basis.n_intervals()));
  }
  if (std::abs(basis.domain_length() - kPi) > 1e-12) {
    throw std::invalid_argument("curve basis must live on [0, pi]");
  }
}

// Solve coef[idx] from sum_k coef[k] * B_k^(deriv)(t) = 0.
void eliminate(Eigen::VectorXd& coef, const BasisSet& basis, int idx, double t, int deriv) {
  const auto loc = basis.local(t, deriv);
  double pivot = 0.0, rest = 0.0;
  for (int m = 0; m < BasisSet::kLocal; ++m) {
    const int k = loc.first + m;
    if (k >= coef.size()) continue;
    if (k == idx)
      pivot = loc.values[m];
    else
      rest += coef[k] * loc.values[m];
  }
  // the end-supported member at the pole has value 1/120 (or slope -1/24)
  if (std::abs(pivot) < 1e-14) {
    throw GeometryError("singular end-constraint elimination");
  }
  coef[idx] = -rest / pivot;
}

void apply_pole_constraints(Eigen::VectorXd& xr, Eigen::VectorXd& xz, const BasisSet& basis) {
  const int n = static_cast<int>(xr.size());
  eliminate(xr, basis, 0, 0.0, 0);
  eliminate(xr, basis, n - 1, kPi, 0);
  eliminate(xz, basis, 0, 0.0, 1);
  eliminate(xz, basis, n - 1, kPi, 1);
}

// N_m(u) = sum_p table[m][p] u^p for the six members alive on one interval
const std::array<std::array<double, 6>, 6>& power_basis() {
  static const auto table = [] {
    std::array<std::array<double, 6>, 6> N{};
    N[0][0] = 1.0;
    for (int d = 1; d <= 5; ++d) {
      std::array<std::array<double, 6>, 6> next{};
      for (int m = 0; m <= d; ++m) {
        for (int p = 0; p < d; ++p) {
          if (m > 0) {
            next[m][p] += (d - m) * N[m - 1][p];
            next[m][p + 1] += N[m - 1][p];
          }
          if (m < d) {
            next[m][p] += (m + 1) * N[m][p];
            next[m][p + 1] -= N[m][p];
          }
        }
        for (double& v : next[m]) v /= d;
      }
      N = next;
    }
    return N;
  }();
  return table;
}

}  // namespace

void GeneratingCurve::build_cells() {
  const auto& N = power_basis();
  cells_.assign(basis_->n_intervals(), {});
  for (int c = 0; c < basis_->n_intervals(); ++c) {
    for (int m = 0; m < BasisSet::kLocal; ++m) {
      for (int p = 0; p < 6; ++p) {
        cells_[c][p] += xi_R_[c + m] * N[m][p];
        cells_[c][6 + p] += xi_Z_[c + m] * N[m][p];
      }
    }
  }
}

GeneratingCurve GeneratingCurve::from_coefficients(const BasisSet& basis, Eigen::VectorXd xi_R,
                                                   Eigen::VectorXd xi_Z) {
  if (xi_R.size() != basis.size() || xi_Z.size() != basis.size()) {
    throw std::invalid_argument("coefficient vectors must match the basis size");
  }
  GeneratingCurve c;
  c.basis_ = basis;
  c.xi_R_ = std::move(xi_R);
  c.xi_Z_ = std::move(xi_Z);
  c.build_cells();
  return c;
}

GeneratingCurve GeneratingCurve::analytic(Analytic fn, std::string label) {
  GeneratingCurve c;
  c.fn_ = std::make_shared<const Analytic>(std::move(fn));
  c.label_ = std::move(label);
  return c;
}

const BasisSet& GeneratingCurve::basis() const {
  if (!basis_) throw std::logic_error("analytic curve has no spline basis");
  return *basis_;
}

CurvePoint GeneratingCurve::at(double t) const {
  if (fn_) return (*fn_)(t);
  const double scale = basis_->n_intervals() / basis_->domain_length();
  const double x = t * scale;
  const int cell = std::clamp(static_cast<int>(std::floor(x)), 0, basis_->n_intervals() - 1);
  const double u = x - cell;
  const auto& a = cells_[cell];
  // Horner with the first two derivatives; h carries half the second
  auto horner = [u](const double* c, double& f, double& df, double& ddf) {
    f = c[5];
    df = 0.0;
    double h = 0.0;
    for (int p = 4; p >= 0; --p) {
      h = h * u + df;
      df = df * u + f;
      f = f * u + c[p];
    }
    ddf = 2.0 * h;
  };
  CurvePoint p;
  horner(a.data(), p.R, p.dR, p.ddR);
  horner(a.data() + 6, p.Z, p.dZ, p.ddZ);
  p.dR *= scale;
  p.dZ *= scale;
  p.ddR *= scale * scale;
  p.ddZ *= scale * scale;
  return p;
}

GeneratingCurve GeneratingCurve::scaled(double factor) const {
  GeneratingCurve c = *this;
  if (fn_) {
    auto fn = fn_;
    c.fn_ = std::make_shared<const Analytic>([fn, factor](double t) {
      CurvePoint p = (*fn)(t);
      p.R *= factor;
      p.Z *= factor;
      p.dR *= factor;
      p.dZ *= factor;
      p.ddR *= factor;
      p.ddZ *= factor;
      return p;
    });
  } else {
    c.xi_R_ *= factor;
    c.xi_Z_ *= factor;
    c.build_cells();
  }
  return c;
}

GeneratingCurve GeneratingCurve::shifted(double dz) const {
  GeneratingCurve c = *this;
  if (fn_) {
    auto fn = fn_;
    c.fn_ = std::make_shared<const Analytic>([fn, dz](double t) {
      CurvePoint p = (*fn)(t);
      p.Z += dz;
      return p;
    });
  } else {
    // partition of unity on [0, pi]
    c.xi_Z_.array() += dz;
    c.build_cells();
  }
  return c;
}

GeneratingCurve curve_from_free_params(const Eigen::VectorXd& free, const BasisSet& basis) {
  require_curve_basis(basis);
  const int n = basis.size();
  if (free.size() != 2 * n - 4) {
    throw std::invalid_argument("free parameter vector has length " + std::to_string(free.size()) +
                                ", expected " + std::to_string(2 * n - 4));
  }
  if (!free.allFinite()) throw std::invalid_argument("free parameters must be finite");
  Eigen::VectorXd xr = Eigen::VectorXd::Zero(n), xz = Eigen::VectorXd::Zero(n);
  xr.segment(1, n - 2) = free.head(n - 2);
  xz.segment(1, n - 2) = free.tail(n - 2);
  apply_pole_constraints(xr, xz, basis);
  return GeneratingCurve::from_coefficients(basis, std::move(xr), std::move(xz));
}

Eigen::VectorXd free_params(const GeneratingCurve& curve) {
  const int n = curve.n_coefficients();
  if (!curve.is_spline()) throw std::invalid_argument("free_params needs a spline curve");
  Eigen::VectorXd free(2 * n - 4);
  free.head(n - 2) = curve.xi_R().segment(1, n - 2);
  free.tail(n - 2) = curve.xi_Z().segment(1, n - 2);
  return free;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> expand_direction(const Eigen::VectorXd& free,
                                                             const BasisSet& basis) {
  const GeneratingCurve c = curve_from_free_params(free, basis);
  return {c.xi_R(), c.xi_Z()};
}

GeneratingCurve fit_curve(const GeneratingCurve& target, const BasisSet& basis,
                          int samples_per_interval) {
  require_curve_basis(basis);
  const int n = basis.size();
  const int nfree = 2 * n - 4;
  const int ns = basis.n_intervals() * samples_per_interval + 1;

  // The map free -> (R, Z) samples is linear; build it column by column.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * ns, nfree);
  Eigen::VectorXd b(2 * ns);
  std::vector<double> ts(ns);
  for (int i = 0; i < ns; ++i) {
    ts[i] = kPi * i / (ns - 1);
    const CurvePoint p = target.at(ts[i]);
    b[2 * i] = p.R;
    b[2 * i + 1] = p.Z;
  }
  for (int j = 0; j < nfree; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nfree);
    e[j] = 1.0;
    const GeneratingCurve c = curve_from_free_params(e, basis);
    for (int i = 0; i < ns; ++i) {
      const CurvePoint p = c.at(ts[i]);
      A(2 * i, j) = p.R;
      A(2 * i + 1, j) = p.Z;
    }
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  return curve_from_free_params(x, basis);
}

void check_admissible(const GeneratingCurve& curve, const Eigen::VectorXd& t) {
  double rmax = 0.0, rmin = INFINITY;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const CurvePoint p = curve.at(t[i]);
    if (!std::isfinite(p.R) || !std::isfinite(p.Z)) throw GeometryError("non-finite curve point");
    rmax = std::max(rmax, p.R);
    rmin = std::min(rmin, p.R);
    if (std::hypot(p.dR, p.dZ) <= 1e-12) {
      throw GeometryError("vanishing arc-length Jacobian at t = " + std::to_string(t[i]));
    }
  }
  if (!(rmax > 0.0) || rmin <= 1e-8 * rmax) {
    throw GeometryError("curve touches or crosses the symmetry axis");
  }
}

}  // namespace swimopt
