#pragma once

#include "lgt/config.hpp"
#include "lgt/observables.hpp"

namespace lgt {

// Executes one job and writes results.jsonl + summary.csv (plus
// invariants.txt for validate) into cfg.output_dir.  Returns the process
// exit code: 0 success, 3 when validate finds a failing invariant.
// Config/solver errors propagate as exceptions for the caller to map
// (config_error -> 1, convergence_error -> 2, internal_error -> 3).
int run_job(const RunConfig& cfg);

// One line of the validate report.
struct InvariantCheck {
  std::string name;
  double bound;      // tolerance (or detection threshold)
  bool at_least;     // true: pass iff measured >= bound (detection checks)
  double measured;
  bool pass;
};

// The full invariant suite for the configured system (also used by tests).
std::vector<InvariantCheck> run_invariant_suite(const RunConfig& cfg);

}  // namespace lgt
