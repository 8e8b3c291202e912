#include "swimopt/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace swimopt {

namespace {

using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void RunConfig::validate() const {
  require(problem == "max-eff" || problem == "min-drag", "problem must be max-eff or min-drag");
  require(nu > 0.0 && nu <= 1.0, "nu must lie in (0, 1]");
  require(slip == "optimal" || slip == "sin" || slip == "none", "slip must be optimal, sin or none");
  require(!init.empty(), "init must name a preset or a csv file");
  disc.validate();
  require(c_tol > 0.0, "c_tol must be positive");
  require(max_outer > 0, "max_outer must be positive");
  require(g_tol > 0.0, "g_tol must be positive");
  require(max_iter > 0, "max_iter must be positive");
  require(sigma0 >= 0.0, "sigma0 must be non-negative");
  require(!output.empty(), "output must not be empty");
  require(eta > 0.0, "eta must be positive");
  require(random_directions >= 0, "random_directions must be non-negative");
  require(!sweep_nu.empty(), "sweep_nu must not be empty");
  for (double v : sweep_nu) require(v > 0.0 && v <= 1.0, "sweep_nu entries must lie in (0, 1]");
  require(flow_nr >= 0 && flow_nz >= 0, "flow grid sizes must be non-negative");
  require(flow_extent > 1.0, "flow_extent must exceed 1");
}

RunConfig parse_config(const std::string& json_text, RunConfig c) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const ordered_json& v = it.value();
    try {
      if (k == "problem") c.problem = v.get<std::string>();
      else if (k == "nu") c.nu = v.get<double>();
      else if (k == "init") c.init = v.get<std::string>();
      else if (k == "slip") c.slip = v.get<std::string>();
      else if (k == "n_intervals") c.disc.n_intervals = v.get<int>();
      else if (k == "n_u") c.disc.n_u = v.get<int>();
      else if (k == "n_panels") c.disc.n_panels = v.get<int>();
      else if (k == "panel_order") c.disc.panel_order = v.get<int>();
      else if (k == "c_tol") c.c_tol = v.get<double>();
      else if (k == "max_outer") c.max_outer = v.get<int>();
      else if (k == "g_tol") c.g_tol = v.get<double>();
      else if (k == "max_iter") c.max_iter = v.get<int>();
      else if (k == "sigma0") c.sigma0 = v.get<double>();
      else if (k == "output") c.output = v.get<std::string>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "eta") c.eta = v.get<double>();
      else if (k == "random_directions") c.random_directions = v.get<int>();
      else if (k == "eta_sweep") c.eta_sweep = v.get<bool>();
      else if (k == "sweep_nu") c.sweep_nu = v.get<std::vector<double>>();
      else if (k == "sweep_optimize") c.sweep_optimize = v.get<bool>();
      else if (k == "flow_nr") c.flow_nr = v.get<int>();
      else if (k == "flow_nz") c.flow_nz = v.get<int>();
      else if (k == "flow_extent") c.flow_extent = v.get<double>();
      else throw std::invalid_argument("unknown config key '" + k + "'");
    } catch (const ordered_json::exception&) {
      throw std::invalid_argument("config key '" + k + "' has the wrong type");
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["problem"] = c.problem;
  j["nu"] = c.nu;
  j["init"] = c.init;
  j["slip"] = c.slip;
  j["n_intervals"] = c.disc.n_intervals;
  j["n_u"] = c.disc.n_u;
  j["n_panels"] = c.disc.n_panels;
  j["panel_order"] = c.disc.panel_order;
  j["c_tol"] = c.c_tol;
  j["max_outer"] = c.max_outer;
  j["g_tol"] = c.g_tol;
  j["max_iter"] = c.max_iter;
  j["sigma0"] = c.sigma0;
  j["output"] = c.output;
  j["seed"] = c.seed;
  j["eta"] = c.eta;
  j["random_directions"] = c.random_directions;
  j["eta_sweep"] = c.eta_sweep;
  j["sweep_nu"] = c.sweep_nu;
  j["sweep_optimize"] = c.sweep_optimize;
  j["flow_nr"] = c.flow_nr;
  j["flow_nz"] = c.flow_nz;
  j["flow_extent"] = c.flow_extent;
  return j.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : config_to_json(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::filesystem::path output_root() {
  const char* env = std::getenv("SWIMOPT_OUTPUT_ROOT");
  if (env && *env) return env;
  return std::filesystem::current_path();
}

std::filesystem::path output_dir(const RunConfig& cfg) {
  std::filesystem::path p(cfg.output);
  if (p.is_relative()) p = output_root() / p;
  std::filesystem::create_directories(p);
  return p;
}

namespace {

void write_header(std::ostream& out, const Metadata& m) {
  out << "# swimopt schema=" << m.schema << " version=1\n";
  out << "# config_hash=" << m.config_hash << "\n";
  out << "# n_intervals=" << m.disc.n_intervals << " n_u=" << m.disc.n_u << " n_panels=" << m.disc.n_panels
      << " panel_order=" << m.disc.panel_order << " nodes=" << m.disc.n_panels * m.disc.panel_order << "\n";
  for (const auto& [k, v] : m.extra) out << "# " << k << "=" << v << "\n";
}

}  // namespace

void write_csv(const std::filesystem::path& path, const Metadata& meta, const Table& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_header(out, meta);
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::invalid_argument("row width does not match the columns");
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt(row[c]);
    out << "\n";
  }
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(t.columns.size()) + " fields");
    }
    std::vector<double> row;
    for (const std::string& s : cells) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str()) {
        throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": not a number '" + s + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw std::invalid_argument(path.string() + ": no header row");
  return t;
}

void write_summary(const std::filesystem::path& path, const Metadata& meta,
                   const std::vector<std::pair<std::string, double>>& values) {
  ordered_json j;
  j["meta"]["schema"] = meta.schema;
  j["meta"]["config_hash"] = meta.config_hash;
  j["meta"]["n_intervals"] = meta.disc.n_intervals;
  j["meta"]["n_u"] = meta.disc.n_u;
  j["meta"]["n_panels"] = meta.disc.n_panels;
  j["meta"]["panel_order"] = meta.disc.panel_order;
  j["meta"]["nodes"] = meta.disc.n_panels * meta.disc.panel_order;
  for (const auto& [k, v] : meta.extra) j["meta"][k] = v;
  for (const auto& [k, v] : values) {
    if (std::isfinite(v)) j[k] = v;
    else j[k] = nullptr;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

Table shape_table(const GeneratingCurve& curve, int samples) {
  Table t{{"t", "R", "Z"}, {}};
  for (int i = 0; i < samples; ++i) {
    const double s = kPi * i / (samples - 1);
    const CurvePoint p = curve.at(s);
    t.rows.push_back({s, p.R, p.Z});
  }
  return t;
}

Table slip_table(const GeometryCache& geom, const Eigen::VectorXd& slip) {
  Table t{{"t", "u_S"}, {}};
  for (int i = 0; i < geom.size(); ++i) t.rows.push_back({geom.grid.t[i], slip[i]});
  return t;
}

Table surface_table(const GeometryCache& geom, const FlowSolution& sol, const Eigen::VectorXd& slip) {
  Table t{{"t", "f_tau", "f_n", "p"}, {}};
  if (slip.size() > 0) t.columns.push_back("u_S");
  for (int i = 0; i < geom.size(); ++i) {
    std::vector<double> row{geom.grid.t[i], sol.f_tau[i], sol.f_n[i], sol.p[i]};
    if (slip.size() > 0) row.push_back(slip[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table flow_table(const Eigen::Matrix2Xd& points, const Eigen::Matrix2Xd& velocity) {
  Table t{{"r", "z", "u_r", "u_z"}, {}};
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    t.rows.push_back({points(0, i), points(1, i), velocity(0, i), velocity(1, i)});
  }
  return t;
}

Table gradient_table(const Eigen::VectorXd& dE, const Eigen::VectorXd& dJdrag, const Eigen::VectorXd& dnu) {
  Table t{{"param_index", "dE", "dJdrag", "dnu"}, {}};
  for (Eigen::Index i = 0; i < dnu.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), dE.size() ? dE[i] : NAN, dJdrag[i], dnu[i]});
  }
  return t;
}

Table snapshot_table(const std::vector<Snapshot>& snapshots) {
  Table t{{"outer", "inner", "objective", "E", "J_drag", "nu", "C", "grad_norm", "lambda", "sigma"}, {}};
  for (const Snapshot& s : snapshots) {
    t.rows.push_back({static_cast<double>(s.outer), static_cast<double>(s.inner), s.objective, s.E, s.J_drag,
                      s.nu, s.C, s.grad_norm, s.lambda, s.sigma});
  }
  return t;
}

GeneratingCurve curve_from_samples(const Table& shape, const BasisSet& basis) {
  auto col = [&](const std::string& name) {
    for (std::size_t c = 0; c < shape.columns.size(); ++c) {
      if (shape.columns[c] == name) return static_cast<int>(c);
    }
    throw std::invalid_argument("shape table lacks column '" + name + "'");
  };
  const int ct = col("t"), cr = col("R"), cz = col("Z");
  const int nfree = 2 * basis.size() - 4;
  const int ns = static_cast<int>(shape.rows.size());
  if (2 * ns < nfree) throw std::invalid_argument("too few shape samples for the spline basis");
  Eigen::MatrixXd A(2 * ns, nfree);
  Eigen::VectorXd b(2 * ns);
  for (int i = 0; i < ns; ++i) {
    const double t = shape.rows[i][ct];
    if (!(t >= 0.0 && t <= kPi)) throw std::invalid_argument("shape samples need t in [0, pi]");
    b[2 * i] = shape.rows[i][cr];
    b[2 * i + 1] = shape.rows[i][cz];
  }
  for (int j = 0; j < nfree; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nfree);
    e[j] = 1.0;
    const GeneratingCurve c = curve_from_free_params(e, basis);
    for (int i = 0; i < ns; ++i) {
      const CurvePoint p = c.at(shape.rows[i][ct]);
      A(2 * i, j) = p.R;
      A(2 * i + 1, j) = p.Z;
    }
  }
  return curve_from_free_params(A.colPivHouseholderQr().solve(b), basis);
}

}  // namespace swimopt
