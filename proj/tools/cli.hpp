#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nlsmooth::cli {

inline constexpr const char* kOutputDirEnv = "NLSMOOTH_OUTPUT_DIR";

// Exit codes: 0 success, 1 invalid input or usage, 2 numerical failure (including failed checks).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

struct CheckLine {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string measured;
};

// Suites: jump-relation, kernel-derivative, blowup, cascade, closed-forms, all.
std::vector<CheckLine> run_suite(const std::string& suite);
std::vector<std::string> suite_names();

}  // namespace nlsmooth::cli
