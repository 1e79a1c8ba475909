#pragma once

// Named invariant checks aggregated by the `verify` subcommand: operator
// algebra, Hamiltonian structure, ordering counts, interference cancellations,
// engine-vs-closed-form agreement, and the evolution cross-check.

#include <string>
#include <vector>

#include "cotunnel/config_io.hpp"

namespace cotunnel {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_verification(const ParsedConfig& config);

}  // namespace cotunnel
