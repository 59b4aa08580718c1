#include "hpv/oracle.hpp"

#include <functional>

namespace hpv {

namespace {

bool satisfies(const Landscape& l, const std::vector<StateId>& map,
               const AgentPredicates& require) {
  if (require.ability) {
    for (StateId x = 0; x < l.size(); ++x)
      if (l.value(map[x]) < l.value(x)) return false;
    if (map[l.optimum()] != l.optimum()) return false;
  }
  if (require.idempotent) {
    for (StateId x = 0; x < l.size(); ++x)
      if (map[map[x]] != map[x]) return false;
  }
  if (require.fixes_optimum && map[l.optimum()] != l.optimum()) return false;
  return true;
}

}  // namespace

std::vector<Agent> enumerate_agents(const Landscape& l, AgentPredicates require, int bound) {
  if (l.size() > bound)
    throw ValidationError("enumerate_agents: landscape exceeds the exhaustive bound");

  std::vector<Agent> out;
  std::vector<StateId> map(l.size(), 0);
  const int n = l.size();
  while (true) {
    if (satisfies(l, map, require)) {
      Agent a;
      a.id = "g" + std::to_string(out.size() + 1);
      a.map = map;
      out.push_back(std::move(a));
    }
    int pos = n - 1;
    while (pos >= 0 && map[pos] == n - 1) map[pos--] = 0;
    if (pos < 0) break;
    ++map[pos];
  }
  return out;
}

std::set<StateId> exhaustive_endpoints(const Landscape& l, const AgentSet& agents,
                                       StateId start, int bound) {
  if (l.size() > bound)
    throw ValidationError("exhaustive_endpoints: landscape exceeds the exhaustive bound");
  if (start < 0 || start >= l.size())
    throw ValidationError("exhaustive_endpoints: start outside the landscape");

  // Values strictly ascend along improving moves, so the recursion is a DAG
  // walk and memoization is sound.
  std::vector<std::set<StateId>> memo(l.size());
  std::vector<bool> done(l.size(), false);
  std::function<const std::set<StateId>&(StateId)> visit =
      [&](StateId x) -> const std::set<StateId>& {
    if (done[x]) return memo[x];
    std::set<StateId> result;
    bool moved = false;
    for (const auto& agent : agents.agents) {
      StateId y = agent.apply(x);
      if (y != x && l.value(y) > l.value(x)) {
        moved = true;
        const auto& sub = visit(y);
        result.insert(sub.begin(), sub.end());
      }
    }
    if (!moved) result.insert(x);
    memo[x] = std::move(result);
    done[x] = true;
    return memo[x];
  };
  return visit(start);
}

Rat best_case_group_value(const Landscape& l, const AgentSet& agents, int bound) {
  Rat total = 0;
  for (StateId x = 0; x < l.size(); ++x) {
    Rat best = l.value(x);
    for (StateId e : exhaustive_endpoints(l, agents, x, bound))
      if (l.value(e) > best) best = l.value(e);
    total += best * l.start_prob(x);
  }
  return total;
}

}  // namespace hpv
