#pragma once

// Batch front end: run configuration, result files and command dispatch.

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "efimov/bs.hpp"
#include "efimov/torus.hpp"

namespace efimov {

inline constexpr const char* kSchemaVersion = "1";

struct LimitBlock {
  std::optional<double> c;  // empty means "paper-n": n_bold / (sqrt3 pi^2)
  std::vector<double> r_list;
  int l_max = 8;
  int m = 400;
};

struct RunConfig {
  int m = 3;
  std::vector<CosineTerm> phi_terms;
  std::optional<double> mu;  // empty means "mu0"
  int grid_n = 20;
  double shift = 0.0;
  std::vector<int> n_list{16, 24, 32, 48};
  std::vector<double> z_list;
  GridPolicy policy;
  LimitBlock limit;
  double delta = 0.6;
  int scan_samples = 12;
  int branch_samples = 8;
  int oracle_n = 4;
  std::vector<double> oracle_mu_factors{0.8, 1.0, 1.2};
  std::vector<double> oracle_z{-0.5, -0.1, -0.02};
  std::string output_dir = ".";
  std::uint64_t seed = 20261015;

  nlohmann::json normalized;  // every field, defaults filled, canonical phi
  std::string hash;

  LatticeOrder order() const;
  CosineSeries phi() const;
};

/// Validates a parsed document and fills defaults. Schema violations throw
/// std::invalid_argument naming the field; m < 3 warns "n=1 regime".
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// FNV-1a 64 of the normalized configuration, as 16 hex digits.
std::string config_hash(const nlohmann::json& normalized);

/// mu of the configuration, resolving "mu0" through a per-process cache keyed
/// by (m, phi, N_list).
double resolve_mu(const RunConfig& config);

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitVerifyFailed = 2,
  kExitUsage = 64,
};

const std::vector<std::string>& command_names();

struct CommandOptions {
  std::optional<std::string> out_dir;   // overrides config.output_dir
  std::optional<std::string> baseline;  // verify: earlier verify.json to compare with
  std::optional<std::string> timestamp; // fixed timestamp (tests)
};

/// Runs one command, writing its files and a short report to `log`.
/// Returns an ExitCode; unknown names give kExitUsage.
int run_command(const std::string& name, const RunConfig& config, const CommandOptions& options,
                std::ostream& log);

}  // namespace efimov
