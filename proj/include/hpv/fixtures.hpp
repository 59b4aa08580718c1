#pragma once

#include "hpv/instance_io.hpp"
#include "hpv/stochastic.hpp"

#include <string>
#include <vector>

namespace hpv {

/// The worked tables shipped with the engine. hp-example is the four-state
/// instance every theorem demo runs on; thompson and unique-best-tie are the
/// counterexample tables; atd-demo carries the six-state ability/diversity
/// groups.
struct Fixture {
  std::string name;
  Instance instance;

  // atd-demo only: how to slice the agent table into the two groups.
  bool has_atd_groups = false;
  AbilityGroupSpec ability_spec;
  DiversityGroupSpec diversity_spec;  // bad_agent indexes the diversity slice
  int ability_size = 0;               // leading agents; the rest are the diversity group
};

std::vector<std::string> fixture_names();
const std::string& fixture_text(const std::string& name);  // instance-table source
Fixture load_fixture(const std::string& name);             // throws ValidationError on unknown

AgentSet fixture_ability_group(const Fixture& f);
AgentSet fixture_diversity_group(const Fixture& f);

/// One machine-checked claim about a fixture.
struct FactResult {
  std::string fact;
  bool pass = false;
};

// Re-derives every expected fact for the fixture; all must pass on the
// shipped tables.
std::vector<FactResult> verify_fixture(const Fixture& fixture);

}  // namespace hpv
