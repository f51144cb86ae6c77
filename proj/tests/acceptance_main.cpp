// Acceptance runner: executes every criterion of the verification suite at
// full rank and prints one pass/fail line per criterion.

#include <cstdlib>
#include <iostream>

#include "suite.hpp"

int main(int argc, char** argv) {
  ffc::SuiteOptions opt;
  opt.max_rank = 5;
  if (argc > 1) opt.max_rank = std::atoi(argv[1]);
  if (argc > 2) opt.seed = static_cast<std::uint64_t>(std::atoll(argv[2]));
  auto results = ffc::run_suite(opt);
  std::cout << ffc::suite_text(results, true);
  return ffc::suite_all_pass(results) ? 0 : 1;
}
