#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "efimov/app.hpp"
#include "efimov/diagnostics.hpp"

using namespace efimov;
using nlohmann::json;

namespace {
std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("efimov_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("defaults and normalization") {
  const auto c = parse_config(json{{"m", 3}, {"phi", "one"}});
  CHECK(c.grid_n == 20);
  CHECK(c.shift == doctest::Approx(kPi / 20));
  CHECK_FALSE(c.mu.has_value());
  CHECK(c.normalized["mu"] == "mu0");
  CHECK(c.normalized["limit"]["c"] == "paper-n");
  CHECK(c.hash.size() == 16);
  // explicit defaults and a preset spelled out give the same hash
  const auto d = parse_config(json{{"phi", json::array({{{"k", {0, 0, 0}}, {"c", 1.0}}})},
                                   {"m", 3},
                                   {"grid", {{"N", 20}}}});
  CHECK(d.hash == c.hash);
  CHECK(parse_config(json{{"m", 3}, {"phi", "one"}, {"mu", 0.02}}).hash != c.hash);
}

TEST_CASE("schema errors name the field") {
  auto msg = [](const json& j) {
    try {
      parse_config(j);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg({{"m", 3}, {"phi", "one"}, {"extra", 1}}).find("'extra'") != std::string::npos);
  CHECK(msg({{"m", 3}, {"phi", "nope"}}).find("'phi'") != std::string::npos);
  CHECK(msg({{"m", 3}, {"phi", "one"}, {"z_list", {-0.1, 0.2}}}).find("z must be negative") !=
        std::string::npos);
  CHECK(msg({{"m", 3}, {"phi", "one"}, {"grid", {{"N_list", {16, 32, 24}}}}}).find("grid.N_list") !=
        std::string::npos);
  CHECK(msg({{"m", 3}, {"phi", "one"}, {"mu", "big"}}).find("'mu'") != std::string::npos);
  CHECK(msg({{"phi", "one"}}).find("'m'") != std::string::npos);
  CHECK(msg({{"m", 3}, {"phi", "one"}, {"policy", {{"speed", 1}}}}).find("policy.speed") !=
        std::string::npos);
}

TEST_CASE("small m warns about the single-minimum regime") {
  WarningCapture cap;
  const auto c = parse_config(json{{"m", 1}, {"phi", "one"}});
  CHECK(cap.contains("n=1 regime"));
  CHECK(c.order().n1_regime());
}

TEST_CASE("minima command writes a framed JSON record") {
  const auto dir = scratch("minima");
  const auto c = parse_config(json{{"m", 3}, {"phi", "half_plus_cos1"}});
  std::ostringstream log;
  CommandOptions opt;
  opt.out_dir = dir.string();
  opt.timestamp = "2026-01-01T00:00:00Z";
  CHECK(run_command("minima", c, opt, log) == kExitOk);
  std::ifstream in(dir / "minima.json");
  const json rec = json::parse(in);
  CHECK(rec["schema_version"] == kSchemaVersion);
  CHECK(rec["command"] == "minima");
  CHECK(rec["config_hash"] == c.hash);
  CHECK(rec["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK(rec["payload"]["n_bold"] == 9);
  CHECK(rec["payload"]["points_per_torus"] == 27);
}

TEST_CASE("CSV outputs carry the hash line and full precision") {
  const auto dir = scratch("scan");
  const auto c = parse_config(json{{"m", 3}, {"phi", "one"}, {"mu", 0.01}, {"z_list", {-0.25}},
                                   {"grid", {{"N", 6}}}, {"scan", {{"samples", 2}}}});
  std::ostringstream log;
  CommandOptions opt;
  opt.out_dir = dir.string();
  CHECK(run_command("delta-scan", c, opt, log) == kExitOk);
  std::ifstream in(dir / "delta_scan.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "# config_hash: " + c.hash);
  std::getline(in, line);
  CHECK(line == "p1,p2,p3,z,delta");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("oracle-check passes and unknown commands are usage errors") {
  const auto dir = scratch("oracle");
  const auto c = parse_config(json{{"m", 3}, {"phi", "one"}});
  std::ostringstream log;
  CommandOptions opt;
  opt.out_dir = dir.string();
  CHECK(run_command("oracle-check", c, opt, log) == kExitOk);
  CHECK(run_command("frobnicate", c, opt, log) == kExitUsage);
}

TEST_CASE("config hash is FNV-1a of the compact dump") {
  CHECK(config_hash(json::object()) == "08f44b07b5901a25");  // FNV-1a 64 of "{}"
}
