#pragma once

#include "hpv/landscape.hpp"

#include <set>
#include <vector>

namespace hpv {

/// Filters applied while enumerating total self-maps of a small landscape.
struct AgentPredicates {
  bool ability = false;
  bool idempotent = false;
  bool fixes_optimum = false;
};

// Every total self-map on the landscape satisfying the predicates, in
// lexicographic map order, with generated ids. Bounded to |X| <= bound.
std::vector<Agent> enumerate_agents(const Landscape& landscape, AgentPredicates require,
                                    int bound = 5);

// Endpoint set over *all* maximal improving sequences from `start` (every
// scheduler choice explored). Under the full assumption set this is exactly
// {optimum}; the deliberation engine's endpoint always belongs to this set.
std::set<StateId> exhaustive_endpoints(const Landscape& landscape, const AgentSet& agents,
                                       StateId start, int bound = 5);

// Best achievable expected value over all schedulers: per start the maximum
// value in the exhaustive endpoint set, weighted by the start distribution.
Rat best_case_group_value(const Landscape& landscape, const AgentSet& agents, int bound = 5);

}  // namespace hpv
