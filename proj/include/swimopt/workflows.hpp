#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swimopt/io.hpp"
#include "swimopt/optimizer.hpp"

namespace swimopt {

OptOptions optimizer_options(const RunConfig& cfg);

/// Drag-minimising shape at nu, started from the prolate spheroid.
OptResult min_drag_preset(double nu, const OptOptions& opts, const SnapshotFn& progress = nullptr);

/// Preset name ("sphere", "spheroid", "peanut", "min-drag") or a t,R,Z csv.
/// A missing file raises std::invalid_argument naming the path.
GeneratingCurve initial_shape(const RunConfig& cfg, const SnapshotFn& progress = nullptr);

/// Analytic against central-difference derivatives along one direction.
struct DirectionCheck {
  std::string name;
  double dE = 0.0, dE_fd = 0.0, dE_rel = 0.0;
  double dD = 0.0, dD_fd = 0.0, dD_rel = 0.0;
};

struct NamedDirection {
  std::string name;
  Eigen::VectorXd free;
};

/// Three deterministic directions towards other shapes (an elongated lump, a
/// vase and a three-bump body) followed by `n_random` Gaussian ones.
std::vector<NamedDirection> validation_directions(const GeneratingCurve& base, int n_random, std::uint64_t seed);

std::vector<DirectionCheck> check_directions(const GeneratingCurve& base, const Discretization& disc,
                                             const std::vector<NamedDirection>& dirs, double eta);

/// Central-difference error against the analytic value for a list of steps.
struct EtaRow {
  double eta = 0.0, err_E = 0.0, err_D = 0.0;
};
std::vector<EtaRow> eta_sweep(const GeneratingCurve& base, const Discretization& disc,
                              const Eigen::VectorXd& dir, const std::vector<double>& etas);

/// One row of the shape comparison table. NaN marks columns not computed.
struct SweepRow {
  double nu0 = 0.0;
  double spheroid_nu = NAN, spheroid_E = NAN, spheroid_drag = NAN;
  double maxeff_nu = NAN, maxeff_E = NAN, maxeff_drag = NAN;
  double mindrag_nu = NAN, mindrag_E = NAN, mindrag_drag = NAN;
  std::string error;
};

/// Slip-optimised spheroid and, if `optimize`, the min-drag shape and the
/// max-efficiency shape started from it. Failures are stored in `error`.
SweepRow sweep_entry(double nu0, const OptOptions& opts, bool optimize);

Table sweep_table(const std::vector<SweepRow>& rows);

}  // namespace swimopt
