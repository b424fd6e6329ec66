#pragma once

#include <string>

#include "lgt/solver.hpp"

namespace lgt {

enum class Job { spectrum, evolve, observables, validate };

std::string job_name(Job j);
Job job_from_name(const std::string& name);

// Full description of one batch run.  The serialized form is flat
// `key = value` text; parse(serialize(c)) == c.
struct RunConfig {
  Job job = Job::validate;
  GroupSpec group = GroupSpec::cyclic(2);
  LatticeGeom geom{2, {2, 2}, Boundary::periodic};
  MatterSpec matter;
  Couplings couplings;

  EvolveMethod method = EvolveMethod::trotter2;
  double dt = 0.1;
  double total_time = 1.0;
  std::int64_t dense_cap = 4096;

  std::string initial_state = "vacuum";  // vacuum | ground
  int spectrum_count = 1;
  std::vector<int> charges;              // per site; empty = all zero
  std::string output_dir = "out";
  std::uint64_t seed = 42;
  bool deterministic = false;
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Parses flat key-value text.  Unknown keys, duplicate keys, malformed
// values, and keys that do not apply to the declared group/geometry are
// all errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Cross-field rules that do not need the state space built.
void validate_config(const RunConfig& cfg);

}  // namespace lgt
