#pragma once

// CLI subcommand bodies, kept separate from argument parsing so tests can
// drive them against in-memory streams.  All numeric CSV fields use the
// format_g9 convention; row order is deterministic regardless of the worker
// count.

#include <iosfwd>
#include <string>

#include "cotunnel/config_io.hpp"

namespace cotunnel {

struct SweepSpec {
  std::string parameter;  // one of U, E_L, Delta_L, Delta_R
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;  // >= 2
};

// Runs the invariant suite, printing one PASS/FAIL line per check.
// Returns 0 when all checks pass, 1 otherwise.
int run_verify(const ParsedConfig& config, std::ostream& out);

// Per-path engine vs closed-form table plus a TOTAL row.
void run_paths(const ParsedConfig& config, SpinPair spins, std::ostream& out);

// One row per swept value; invalid points are skipped with a reason on `log`.
void run_sweep(const ParsedConfig& config, const SweepSpec& spec, std::ostream& out,
               std::ostream& log, int workers);

// Time series of transition probabilities plus a fitted-coefficient footer.
void run_evolve(const ParsedConfig& config, SpinPair spins, double t_max, int steps,
                std::ostream& out);

}  // namespace cotunnel
