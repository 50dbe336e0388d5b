#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ldl/formula.hpp"
#include "ldl/order.hpp"

namespace ldl::verify {

struct SuiteConfig {
  /// Formula-size bound of the quantified universes.
  std::size_t k = 6;
  std::size_t max_states = 100'000;
  /// Largest number of candidate maps or tables enumerated for one pair.
  std::size_t max_maps = 1'000'000;
  std::size_t max_universe = 2'000'000;
  std::size_t depth = 8;
  std::size_t node_budget = 2'000'000;
  std::uint64_t seed = 1;
  std::size_t sequent_samples = 10'000;
  std::size_t flatten_samples = 1'000;
  /// Bound on every exhaustively enumerated or fixture poset.
  std::size_t max_poset_size = 5;
  std::string fixture_dir;
  /// Criteria to run (1-8); empty means all.
  std::vector<int> criteria;
  bool parallel = true;
};

enum class Status : std::uint8_t { Pass, Fail, Budget, UniverseTooSmall, Error };
std::string_view status_name(Status s);

struct Issue {
  std::string instance;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string claim;
  Status status = Status::Pass;
  std::size_t checks = 0;
  double seconds = 0;
  std::string summary;
  /// Failures (or budget notes), at most ten.
  std::vector<Issue> issues;
};

struct Fixtures {
  std::vector<std::pair<std::string, DisjunctiveBasis>> bases;
  std::vector<std::pair<std::string, FinitePoset>> domains;
};

/// `<dir>/bases/*.dsb` and `<dir>/domains/*.pos`, sorted by name. Throws
/// InputError.
Fixtures load_fixtures(const std::string& dir);

/// Parses `LDL_BUDGET`: either one number (used for states, maps and universe)
/// or `states=N,maps=N,universe=N` with any subset of the keys. Throws
/// InputError.
void apply_budget(SuiteConfig& config, std::string_view spec);

CriterionResult run_criterion(int id, const SuiteConfig& config, const Fixtures& fixtures);
/// Runs the selected criteria (concurrently if configured) and returns them in
/// criterion order.
std::vector<CriterionResult> run_suite(const SuiteConfig& config);

/// 0 if everything passed, 1 on any failure or error, 3 if the only
/// shortfalls are budget or universe-size statuses.
int suite_exit_code(const std::vector<CriterionResult>& results);

/// `criterion N [STATUS] name: summary (checks, seconds)` lines plus indented
/// issues.
std::string report_text(const std::vector<CriterionResult>& results, const SuiteConfig& config);
std::string report_json(const std::vector<CriterionResult>& results, const SuiteConfig& config);

}  // namespace ldl::verify
