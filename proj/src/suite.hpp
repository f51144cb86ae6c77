#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffc {

// The property-based verification suite: one entry per acceptance criterion,
// runnable from both the CLI (`suite`) and the test harness.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

struct SuiteOptions {
  int max_rank = 5;       // criteria parameterized over n run up to min(their n, max_rank)
  std::uint64_t seed = 20250809;
  int bound = 40;         // loop-search bound for the Example 6.8 criterion
};

std::vector<CriterionResult> run_suite(const SuiteOptions& opt);
std::string suite_text(const std::vector<CriterionResult>& results, bool with_timing);
std::string suite_json(const std::vector<CriterionResult>& results, bool with_timing);
bool suite_all_pass(const std::vector<CriterionResult>& results);

}  // namespace ffc
