#pragma once

// One-shot reproduction suite: runs the ten headline checks against their
// published values and reports measured-vs-expected for each.

#include <string>
#include <vector>

#include <json.hpp>

#include "sepcert/bloch_opt.hpp"

namespace sepcert {

struct SuiteOptions {
  int resolution = 17;  // odd so theta = pi/2 lands on the oracle grids
  std::uint64_t seed = 0;
  OptimizerOptions optimizer;  // seed is overwritten with the suite seed
};

struct CriterionResult {
  int index = 0;
  std::string title;
  bool pass = false;
  std::string measured;  // "measured vs expected" one-liner
  std::string note;      // analysis when the check is red
  double seconds = 0.0;
};

struct SuiteReport {
  int resolution = 0;
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

SuiteReport run_reproduction_suite(const SuiteOptions& opts = {});

/// Human-readable pass/fail table, one line per criterion.
std::string format_suite_report(const SuiteReport& r);

nlohmann::json suite_report_to_json(const SuiteReport& r);

}  // namespace sepcert
