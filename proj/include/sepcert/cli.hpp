#pragma once

// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests can drive it directly.

#include <string>
#include <vector>

namespace sepcert {

/// Exit codes: 0 separable/verified/pass, 1 entangled/violation,
/// 2 inconclusive, 3 malformed input.
struct CommandResult {
  int exit_code = 0;
  std::string report;
};

CommandResult run_cli(std::vector<std::string> args);

}  // namespace sepcert
