#pragma once

#include "hpv/landscape.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hpv {

/// The machine-checkable hypotheses of the framework. UniqueSolution and
/// Injectivity are landscape-level; the rest involve the agent pool.
enum class Assumption {
  UniqueSolution,
  Injectivity,
  Ability,
  Idempotence,
  Difficulty,
  Diversity,
  UniqueBest,
};

std::string_view assumption_name(Assumption a);

/// Concrete evidence for a failed check: the states and/or agents involved.
struct Witness {
  std::vector<std::string> agent_ids;
  std::vector<std::string> states;
  std::string detail;
};

struct Verdict {
  bool holds = false;
  std::optional<Witness> witness;  // present exactly when the check fails
};

struct AssumptionReport {
  Verdict unique_solution;
  Verdict injectivity;
  Verdict ability;      // V(phi(x)) >= V(x) everywhere and phi(x*) = x*
  Verdict idempotence;  // phi(phi(x)) = phi(x) everywhere
  Verdict difficulty;   // every agent misses the optimum for some input
  Verdict diversity;    // every non-optimal state is moved by some agent
  Verdict unique_best;  // exactly one argmax of expected performance

  std::vector<std::string> best_agents;  // singleton iff unique_best holds
  std::vector<Rat> agent_values;         // expected performance, input order

  const Verdict& verdict(Assumption a) const;
  bool all_hold() const;
  // First failing assumption in declaration order, if any.
  std::optional<Assumption> first_failure() const;
};

// Pure: identical inputs yield identical reports.
AssumptionReport check_assumptions(const Landscape& landscape, const AgentSet& agents);

}  // namespace hpv
