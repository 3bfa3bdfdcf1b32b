#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cubecalc/chain.hpp"
#include "cubecalc/json_io.hpp"

namespace cubecalc {

struct SuiteReport {
  std::string suite;
  std::string anchor;  // the construction being checked
  std::uint64_t seed = 0;
  int trials = 0;
  std::size_t cases = 0;
  bool passed = true;
  Json counterexample;  // null when passed
};

Json to_json(const SuiteReport& r);

std::vector<std::string> suite_names();
// Throws InputError for an unknown suite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials,
                      Ring ring = Ring::rationals);

// Worker threads for seeded suites: CUBECALC_THREADS, else the hardware count.
unsigned thread_count();

struct TrialOutcome {
  bool passed = true;
  std::size_t cases = 1;
  Json detail;  // serialized counterexample when the trial failed
};

// Runs trial(i) for i in [0, trials) on worker threads. The reported
// counterexample is the failing trial with the smallest index, so the result
// does not depend on scheduling.
SuiteReport run_trials(const std::string& suite, const std::string& anchor, std::uint64_t seed,
                       int trials, const std::function<TrialOutcome(int)>& trial);

}  // namespace cubecalc
