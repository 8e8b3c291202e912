#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <fstream>

#include "swimopt/io.hpp"
#include "swimopt/shapes.hpp"
#include "swimopt/workflows.hpp"

using namespace swimopt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "swimopt_test_io" / name;
  fs::create_directories(p.parent_path());
  return p;
}

}  // namespace

TEST_CASE("config parsing, defaults and validation") {
  const RunConfig c = parse_config(R"({"problem": "min-drag", "nu": 0.9, "n_panels": 12, "sweep_nu": [0.8, 0.9]})");
  CHECK(c.problem == "min-drag");
  CHECK(c.nu == 0.9);
  CHECK(c.disc.n_panels == 12);
  CHECK(c.sweep_nu.size() == 2);
  CHECK(c.disc.n_u == RunConfig{}.disc.n_u);
  CHECK_THROWS_AS(parse_config(R"({"nu": 1.5})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"colour": "red"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"nu": "high"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"panel_order": 10})"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), std::invalid_argument);
}

TEST_CASE("config JSON round-trips and the hash is stable") {
  RunConfig a;
  a.nu = 0.85;
  a.seed = 99;
  const RunConfig b = parse_config(config_to_json(a));
  CHECK(config_to_json(b) == config_to_json(a));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.validate();
  RunConfig c = a;
  c.nu = 0.86;
  CHECK(config_hash(c) != config_hash(a));
}

TEST_CASE("csv files carry metadata and round-trip") {
  const fs::path p = scratch("table.csv");
  RunConfig cfg;
  Metadata m{"shape", config_hash(cfg), cfg.disc, {{"note", "x"}}};
  Table t{{"t", "R", "Z"}, {{0.0, 0.0, 1.0}, {0.1, 0.099833416646828155, 0.99500416527802582}}};
  write_csv(p, m, t);
  std::ifstream in(p);
  std::string first, second, third;
  std::getline(in, first);
  std::getline(in, second);
  std::getline(in, third);
  CHECK(first.find("schema=shape") != std::string::npos);
  CHECK(second == "# config_hash=" + config_hash(cfg));
  CHECK(third.find("n_intervals=" + std::to_string(cfg.disc.n_intervals)) != std::string::npos);
  const Table r = read_csv(p);
  CHECK(r.columns == t.columns);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[1][1] == t.rows[1][1]);  // 17 significant digits survive exactly
  CHECK_THROWS_AS(read_csv(scratch("missing.csv")), std::runtime_error);
  t.rows.push_back({1.0});
  CHECK_THROWS_AS(write_csv(p, m, t), std::invalid_argument);
}

TEST_CASE("malformed csv content is reported") {
  const fs::path p = scratch("bad.csv");
  std::ofstream(p) << "t,R,Z\n0,1\n";
  CHECK_THROWS_AS(read_csv(p), std::invalid_argument);
  std::ofstream(p) << "t,R,Z\n0,1,abc\n";
  CHECK_THROWS_AS(read_csv(p), std::invalid_argument);
}

TEST_CASE("a written shape is recovered by the spline fit") {
  const Discretization disc;
  const GeneratingCurve c = preset_curve("peanut", 0.75, disc.n_intervals);
  const fs::path p = scratch("shape.csv");
  RunConfig cfg;
  write_csv(p, {"shape", config_hash(cfg), disc, {}}, shape_table(c));
  const GeneratingCurve back = curve_from_samples(read_csv(p), disc.shape_basis());
  CHECK((free_params(back) - free_params(c)).norm() < 1e-10);
  RunConfig ci;
  ci.init = p.string();
  CHECK((free_params(initial_shape(ci)) - free_params(c)).norm() < 1e-10);
  ci.init = (p.parent_path() / "nope.csv").string();
  CHECK_THROWS_WITH_AS(initial_shape(ci), doctest::Contains("nope.csv"), std::invalid_argument);
}

TEST_CASE("output root follows the environment") {
  const fs::path root = scratch("root");
  setenv("SWIMOPT_OUTPUT_ROOT", root.c_str(), 1);
  RunConfig cfg;
  cfg.output = "run1";
  CHECK(output_dir(cfg) == root / "run1");
  CHECK(fs::is_directory(root / "run1"));
  cfg.output = (root / "abs").string();
  CHECK(output_dir(cfg) == root / "abs");
  unsetenv("SWIMOPT_OUTPUT_ROOT");
  CHECK(output_root() == fs::current_path());
}

TEST_CASE("summary JSON writes nulls for missing values") {
  const fs::path p = scratch("summary.json");
  RunConfig cfg;
  write_summary(p, {"summary", config_hash(cfg), cfg.disc, {}}, {{"E", 0.5}, {"U", NAN}});
  std::ifstream in(p);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"U\": null") != std::string::npos);
  CHECK(text.find("\"config_hash\": \"" + config_hash(cfg) + "\"") != std::string::npos);
}

TEST_CASE("validation directions are deterministic") {
  const Discretization disc;
  const GeneratingCurve c = preset_curve("peanut", 0.7, disc.n_intervals);
  const auto a = validation_directions(c, 5, 7), b = validation_directions(c, 5, 7), d = validation_directions(c, 5, 8);
  REQUIRE(a.size() == 8);
  CHECK(a[0].name == "long-lump");
  CHECK((a[6].free - b[6].free).norm() == 0.0);
  CHECK((a[6].free - d[6].free).norm() > 0.0);
}
