#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cantor {

// One verification criterion of the shipped battery. `fatal` criteria gate the
// overall verdict; diagnostic ones (the counting-slope fit) only log.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool fatal = true;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteResult {
  std::vector<CriterionResult> results;
  bool all_pass = true;  // over fatal criteria
};

const std::vector<std::string>& acceptance_suite_names();

// Runs the named suites (empty = all) in fixed order, printing one line per
// criterion to `log` as it completes. Unknown names error with "unknown-suite".
// `timing` controls the per-line wall-clock suffix; without it the log is
// byte-identical across runs.
SuiteResult run_acceptance(const std::vector<std::string>& suites, uint64_t seed, int jobs,
                           std::ostream& log, bool timing = true);

}  // namespace cantor
