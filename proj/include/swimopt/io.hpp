#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swimopt/optimizer.hpp"
#include "swimopt/pipeline.hpp"

namespace swimopt {

/// Everything a CLI run depends on. Parsed from JSON, overridden by flags.
struct RunConfig {
  std::string problem = "max-eff";   // max-eff | min-drag
  double nu = 0.7;
  std::string init = "spheroid";     // sphere | spheroid | peanut | min-drag | path to a t,R,Z csv
  std::string slip = "optimal";      // optimal | sin | none
  Discretization disc;
  double c_tol = 1e-6;
  int max_outer = 20;
  double g_tol = 1e-6;
  int max_iter = 200;
  double sigma0 = 0.0;               // 0: problem default
  std::string output = "out";        // relative to the output root
  std::uint64_t seed = 12345;
  // validate
  double eta = 1e-3;
  int random_directions = 5;
  bool eta_sweep = false;
  // sweep
  std::vector<double> sweep_nu{0.6, 0.7, 0.8, 0.85, 0.9, 0.95, 1.0};
  bool sweep_optimize = false;
  // solve: off-surface velocity grid, 0 disables
  int flow_nr = 0, flow_nz = 0;
  double flow_extent = 3.0;          // in units of the largest body dimension

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Unknown keys are errors. Missing keys keep their defaults.
RunConfig parse_config(const std::string& json_text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
std::string config_to_json(const RunConfig& cfg);
/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// $SWIMOPT_OUTPUT_ROOT if set, else the current directory.
std::filesystem::path output_root();
/// output_root() / cfg.output unless cfg.output is absolute; created on demand.
std::filesystem::path output_dir(const RunConfig& cfg);

/// Header lines written as "# key=value" before the CSV column row.
struct Metadata {
  std::string schema;  // shape | slip | surface | flow | sweep | gradient | snapshots
  std::string config_hash;
  Discretization disc;
  std::vector<std::pair<std::string, std::string>> extra;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const Metadata& meta, const Table& table);
/// Skips "#" lines; throws std::invalid_argument on malformed content and
/// std::runtime_error if the file cannot be opened.
Table read_csv(const std::filesystem::path& path);

/// JSON object with a "meta" block followed by the given numeric fields.
void write_summary(const std::filesystem::path& path, const Metadata& meta,
                   const std::vector<std::pair<std::string, double>>& values);

/// Schema builders.
Table shape_table(const GeneratingCurve& curve, int samples = 201);
Table slip_table(const GeometryCache& geom, const Eigen::VectorXd& slip);
/// t, f_tau, f_n, p and, when `slip` is non-empty, u_S.
Table surface_table(const GeometryCache& geom, const FlowSolution& sol, const Eigen::VectorXd& slip = {});
Table flow_table(const Eigen::Matrix2Xd& points, const Eigen::Matrix2Xd& velocity);
Table gradient_table(const Eigen::VectorXd& dE, const Eigen::VectorXd& dJdrag, const Eigen::VectorXd& dnu);
Table snapshot_table(const std::vector<Snapshot>& snapshots);

/// Least-squares spline fit with the pole conditions to sampled t, R, Z.
GeneratingCurve curve_from_samples(const Table& shape, const BasisSet& basis);

}  // namespace swimopt
