#pragma once

#include "hpv/assumptions.hpp"
#include "hpv/landscape.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hpv {

/// How the scheduler breaks ties when several agents can act. The paper
/// leaves selection order open; the endpoint is order-invariant exactly when
/// the full assumption set holds.
enum class PolicyKind { LowestIndexFirst, RoundRobin, SeededRandom };

struct SchedulerPolicy {
  PolicyKind kind = PolicyKind::LowestIndexFirst;
  std::uint64_t seed = 0;  // SeededRandom only
};

enum class StopReason { CommonFixedPoint, StepCap };

struct TraceStep {
  int agent;  // index into the deliberating AgentSet
  StateId from;
  StateId to;
};

/// One in-series deliberation run. Steps chain, every step strictly improves
/// the value, and the endpoint is fixed for the whole group unless the step
/// cap was hit.
struct DeliberationTrace {
  StateId start = -1;
  StateId endpoint = -1;
  std::vector<TraceStep> steps;
  StopReason stop_reason = StopReason::CommonFixedPoint;
};

// |X| * |agents| + 1; generous since value-increasing chains stop within
// |X| - 1 steps.
int default_step_cap(const Landscape& landscape, const AgentSet& agents);

/// Runs the deliberation relay from `start`: at each turn an agent whose
/// move strictly improves the current value acts (chosen by `policy`), and
/// the run stops when no agent can improve further, i.e. the group is stuck
/// at a common local optimum. On instances satisfying injectivity + ability
/// this is exactly the "turn must change the state, stop at unanimity" relay,
/// since a change and a strict improvement coincide there.
DeliberationTrace relay_deliberate(const Landscape& landscape, const AgentSet& agents,
                                   StateId start, const SchedulerPolicy& policy,
                                   int step_cap);

inline DeliberationTrace relay_deliberate(const Landscape& landscape, const AgentSet& agents,
                                          StateId start, const SchedulerPolicy& policy = {}) {
  return relay_deliberate(landscape, agents, start, policy, default_step_cap(landscape, agents));
}

/// The group considered as one operator: endpoint of the relay from every
/// start, plus its expected value under the start distribution.
struct GroupOutcome {
  std::vector<StateId> endpoint;  // indexed by start state
  Rat expected_value;

  bool solves_all(const Landscape& l) const {
    for (StateId e : endpoint)
      if (e != l.optimum()) return false;
    return true;
  }
};

GroupOutcome group_operator(const Landscape& landscape, const AgentSet& agents,
                            const SchedulerPolicy& policy = {});

/// Endpoint map of k clones of one agent deliberating together. Requires an
/// idempotent agent (throws NotApplicableError with a witness state
/// otherwise); the result never depends on k.
GroupOutcome compose_clones(const Landscape& landscape, const Agent& agent, int copies,
                            const SchedulerPolicy& policy = {});

/// Executable form of the basic theorem: where the best agent fails, that the
/// full pool reaches the optimum from every start, and a small subset whose
/// group value strictly beats the best agent's.
struct TheoremVerdict {
  bool applicable = false;
  std::optional<Assumption> failed_assumption;  // when not applicable
  std::optional<Witness> failure_witness;

  std::string best_agent;
  Rat best_agent_value;
  std::string best_agent_failure_state;  // some state the best agent cannot solve
  bool group_solves_all = false;
  std::vector<std::string> outperforming_subset;  // greedily grown, then pruned
  Rat subset_value;
};

TheoremVerdict verify_basic_theorem(const Landscape& landscape, const AgentSet& agents,
                                    const SchedulerPolicy& policy = {});

}  // namespace hpv
