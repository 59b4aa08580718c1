#include "hpv/deliberation.hpp"

#include "hpv/rng.hpp"

#include <algorithm>

namespace hpv {

int default_step_cap(const Landscape& landscape, const AgentSet& agents) {
  return landscape.size() * agents.size() + 1;
}

namespace {

std::vector<int> improvers(const Landscape& l, const AgentSet& agents, StateId x) {
  std::vector<int> out;
  for (int i = 0; i < agents.size(); ++i) {
    StateId y = agents[i].apply(x);
    if (y != x && l.value(y) > l.value(x)) out.push_back(i);
  }
  return out;
}

// Picks the acting agent among those able to improve the current state.
class Scheduler {
 public:
  Scheduler(const SchedulerPolicy& policy, StateId start)
      : policy_(policy), stream_(policy.seed, "relay", static_cast<std::uint64_t>(start)) {}

  int choose(const std::vector<int>& candidates, int n_agents) {
    switch (policy_.kind) {
      case PolicyKind::LowestIndexFirst:
        return candidates.front();
      case PolicyKind::RoundRobin: {
        // Next candidate at or after the rotating cursor.
        for (int offset = 0; offset < n_agents; ++offset) {
          int idx = (cursor_ + offset) % n_agents;
          if (std::find(candidates.begin(), candidates.end(), idx) != candidates.end()) {
            cursor_ = (idx + 1) % n_agents;
            return idx;
          }
        }
        return candidates.front();
      }
      case PolicyKind::SeededRandom:
        return candidates[stream_.below(candidates.size())];
    }
    return candidates.front();
  }

 private:
  SchedulerPolicy policy_;
  Stream stream_;
  int cursor_ = 0;
};

}  // namespace

DeliberationTrace relay_deliberate(const Landscape& landscape, const AgentSet& agents,
                                   StateId start, const SchedulerPolicy& policy,
                                   int step_cap) {
  if (agents.size() == 0) throw ValidationError("relay: empty agent set");
  if (start < 0 || start >= landscape.size())
    throw ValidationError("relay: start state outside the landscape");

  DeliberationTrace trace;
  trace.start = start;
  Scheduler scheduler(policy, start);

  StateId current = start;
  while (true) {
    auto candidates = improvers(landscape, agents, current);
    if (candidates.empty()) {
      trace.stop_reason = StopReason::CommonFixedPoint;
      break;
    }
    if (static_cast<int>(trace.steps.size()) >= step_cap) {
      trace.stop_reason = StopReason::StepCap;
      break;
    }
    int actor = scheduler.choose(candidates, agents.size());
    StateId next = agents[actor].apply(current);
    trace.steps.push_back({actor, current, next});
    current = next;
  }
  trace.endpoint = current;
  return trace;
}

GroupOutcome group_operator(const Landscape& landscape, const AgentSet& agents,
                            const SchedulerPolicy& policy) {
  GroupOutcome out;
  out.endpoint.resize(landscape.size());
  out.expected_value = 0;
  for (StateId x = 0; x < landscape.size(); ++x) {
    out.endpoint[x] = relay_deliberate(landscape, agents, x, policy).endpoint;
    out.expected_value += landscape.value(out.endpoint[x]) * landscape.start_prob(x);
  }
  return out;
}

GroupOutcome compose_clones(const Landscape& landscape, const Agent& agent, int copies,
                            const SchedulerPolicy& policy) {
  if (copies < 1) throw ValidationError("compose_clones: copies must be positive");
  for (StateId x = 0; x < landscape.size(); ++x)
    if (agent.apply(agent.apply(x)) != agent.apply(x))
      throw NotApplicableError("compose_clones: agent '" + agent.id +
                               "' is not idempotent (witness state '" + landscape.label(x) +
                               "')");

  // Distinct ids per clone; the endpoint map cannot depend on which clone acts.
  std::vector<Agent> clones;
  clones.reserve(copies);
  for (int i = 0; i < copies; ++i)
    clones.push_back(Agent{agent.id + "#" + std::to_string(i + 1), agent.map});
  return group_operator(landscape, make_agent_set(landscape, std::move(clones)), policy);
}

namespace {

Rat subset_value(const Landscape& l, const AgentSet& all, const std::vector<int>& member_idx,
                 const SchedulerPolicy& policy) {
  std::vector<Agent> members;
  for (int i : member_idx) members.push_back(all[i]);
  return group_operator(l, make_agent_set(l, std::move(members)), policy).expected_value;
}

}  // namespace

TheoremVerdict verify_basic_theorem(const Landscape& landscape, const AgentSet& agents,
                                    const SchedulerPolicy& policy) {
  TheoremVerdict v;
  AssumptionReport report = check_assumptions(landscape, agents);
  if (auto failed = report.first_failure()) {
    v.applicable = false;
    v.failed_assumption = *failed;
    v.failure_witness = report.verdict(*failed).witness;
    return v;
  }
  v.applicable = true;

  int best = static_cast<int>(
      std::max_element(report.agent_values.begin(), report.agent_values.end()) -
      report.agent_values.begin());
  v.best_agent = agents[best].id;
  v.best_agent_value = report.agent_values[best];

  // Corollary-style witness: a state from which the best agent alone misses
  // the optimum. Difficulty guarantees one exists.
  for (StateId x = 0; x < landscape.size(); ++x) {
    if (agents[best].apply(x) != landscape.optimum()) {
      v.best_agent_failure_state = landscape.label(x);
      break;
    }
  }

  v.group_solves_all = group_operator(landscape, agents, policy).solves_all(landscape);

  // Greedy growth from the best agent, then pruning, for a small subset that
  // strictly outperforms it.
  std::vector<int> chosen = {best};
  Rat current = v.best_agent_value;
  std::vector<bool> in_set(agents.size(), false);
  in_set[best] = true;
  while (current <= v.best_agent_value) {
    int pick = -1;
    Rat pick_value = current;
    for (int i = 0; i < agents.size(); ++i) {
      if (in_set[i]) continue;
      std::vector<int> trial = chosen;
      trial.push_back(i);
      Rat value = subset_value(landscape, agents, trial, policy);
      if (pick == -1 || value > pick_value) {
        pick = i;
        pick_value = value;
      }
    }
    if (pick == -1) break;  // everyone added
    chosen.push_back(pick);
    in_set[pick] = true;
    current = pick_value;
  }

  for (std::size_t i = 0; i < chosen.size();) {
    std::vector<int> trial = chosen;
    trial.erase(trial.begin() + i);
    if (!trial.empty() &&
        subset_value(landscape, agents, trial, policy) > v.best_agent_value) {
      chosen = trial;
    } else {
      ++i;
    }
  }

  std::sort(chosen.begin(), chosen.end());
  for (int i : chosen) v.outperforming_subset.push_back(agents[i].id);
  v.subset_value = subset_value(landscape, agents, chosen, policy);
  return v;
}

}  // namespace hpv
