// Runs every criterion on the shipped fixtures with the default configuration
// and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "ldl/verify/suite.hpp"

int main(int argc, char** argv) {
  ldl::verify::SuiteConfig config;
  config.fixture_dir = argc > 1 ? argv[1] : LDL_FIXTURE_DIR;
  if (const char* budget = std::getenv("LDL_BUDGET")) ldl::verify::apply_budget(config, budget);
  const auto results = ldl::verify::run_suite(config);
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s (%zu checks, %.2fs) %s\n", r.status == ldl::verify::Status::Pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.checks, r.seconds, r.summary.c_str());
    for (const auto& i : r.issues) std::printf("    %s: %s\n", i.instance.c_str(), i.detail.c_str());
  }
  const int code = ldl::verify::suite_exit_code(results);
  std::cout << (code == 0 ? "all criteria passed" : "some criteria did not pass") << " (seed " << config.seed << ")\n";
  return code;
}
