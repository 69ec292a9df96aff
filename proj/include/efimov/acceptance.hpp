#pragma once

// The acceptance suite: one check per criterion, each with a measured value,
// a pass/fail verdict and a runtime budget. Shared by the acceptance test
// binary and the `verify` command.

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "efimov/bs.hpp"

namespace efimov {

enum class Status { kPass, kFail, kNotRun };

std::string to_string(Status s);

struct CriterionResult {
  int id = 0;
  std::string title;
  Status status = Status::kNotRun;
  std::string measured;   // one-line summary of the measured values
  nlohmann::json values;  // the same, structured
  double seconds = 0.0;
  double budget = 0.0;
};

struct AcceptanceOptions {
  std::optional<double> mu_override;  // replaces mu0 of the phi = 1 model
  std::vector<double> z_window;       // curve energies; empty skips criterion 10
  std::vector<int> n_list{16, 24, 32, 48};
  GridPolicy policy;
  std::uint64_t seed = 20261015;
  std::vector<int> only;  // criterion ids to run; empty runs all

  static std::vector<double> default_window();
};

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion  4 PASS  mu0 convergence | ... | 0.41 s (budget 60 s)".
std::string format_line(const CriterionResult& r);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace efimov
