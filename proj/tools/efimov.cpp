// Command-line front end.
//
//   efimov <command> --config <path> [--out <dir>] [--baseline <verify.json>]
//
// EFIMOV_THREADS sets the OpenMP thread count.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "efimov/app.hpp"

namespace {

std::string usage() {
  std::string s = "usage: efimov <command> --config <path> [--out <dir>] [--baseline <file>]\ncommands:";
  for (const auto& c : efimov::command_names()) s += " " + c;
  return s + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("EFIMOV_THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) omp_set_num_threads(n);
  }

  CLI::App app{"Discrete three-particle model: spectra, counts and acceptance checks"};
  app.set_help_flag("-h,--help");
  std::string command, config_path, out_dir, baseline;
  app.add_option("command", command, "command to run")->required();
  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--baseline", baseline, "verify: earlier verify.json to compare against");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << usage();
    return efimov::kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << usage();
    return efimov::kExitUsage;
  }

  const auto& names = efimov::command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    std::cerr << "unknown command '" << command << "'\n" << usage();
    return efimov::kExitUsage;
  }

  try {
    const auto config = efimov::load_config(config_path);
    efimov::CommandOptions opts;
    if (!out_dir.empty()) opts.out_dir = out_dir;
    if (!baseline.empty()) opts.baseline = baseline;
    return efimov::run_command(command, config, opts, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return efimov::kExitError;
  }
}
