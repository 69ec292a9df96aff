// Runs every acceptance criterion and prints one pass/fail line per
// criterion. Exit status 0 iff all pass.
//
//   acceptance [--only 1,4,7]

#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include "efimov/acceptance.hpp"
#include "efimov/diagnostics.hpp"

int main(int argc, char** argv) {
  efimov::AcceptanceOptions opt;
  opt.z_window = efimov::AcceptanceOptions::default_window();
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0) {
      std::stringstream ss(argv[i + 1]);
      std::string tok;
      while (std::getline(ss, tok, ',')) opt.only.push_back(std::stoi(tok));
    }

  efimov::WarningCapture quiet;  // warnings are folded into the measured values
  const auto results = efimov::run_acceptance(opt, [](const efimov::CriterionResult& r) {
    std::printf("%s\n", efimov::format_line(r).c_str());
    std::fflush(stdout);
  });
  int passed = 0;
  for (const auto& r : results) passed += r.status == efimov::Status::kPass;
  std::printf("acceptance: %d/%zu criteria passed\n", passed, results.size());
  return efimov::all_passed(results) ? 0 : 1;
}
