#include "hpv/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace hpv {

SelectionFamily SelectionFamily::uniform(int n_states, int n_agents) {
  SelectionFamily f;
  f.weights.assign(n_states, std::vector<Rat>(n_agents, Rat(1, n_agents)));
  return f;
}

void SelectionFamily::validate(int n_states, int n_agents) const {
  if (static_cast<int>(weights.size()) != n_states)
    throw ValidationError("selection family: one distribution per state required");
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != n_agents)
      throw ValidationError("selection family: distribution size does not match the group");
    Rat total = 0;
    for (const auto& w : row) {
      if (w <= 0) throw ValidationError("selection family: full support required");
      total += w;
    }
    if (total != 1) throw ValidationError("selection family: distribution does not sum to 1");
  }
}

StateId regressed_state(const Landscape& l, const DiversityGroupSpec& spec) {
  if (spec.bad_state < 0 || spec.bad_state >= l.size())
    throw ValidationError("diversity group: bad state outside the landscape");
  if (spec.bad_state == l.optimum())
    throw ValidationError("diversity group: bad state cannot be the optimum");
  StateId below = -1;
  for (StateId s = 0; s < l.size(); ++s) {
    if (l.value(s) >= l.value(spec.bad_state)) continue;
    if (below == -1 || l.value(s) > l.value(below)) below = s;
  }
  if (below == -1)
    throw ValidationError("diversity group: no state below the bad state to regress to");
  return below;
}

AgentSet build_ability_group(const Landscape& l, const AbilityGroupSpec& spec, int size,
                             const std::string& id_prefix) {
  if (size < 2)
    throw ValidationError(
        "ability group: size must be at least 2 (a unique deviator per state needs "
        "someone to deviate from)");

  std::vector<bool> in_ck(l.size(), false);
  for (StateId s : spec.ck_set) {
    if (s < 0 || s >= l.size())
      throw ValidationError("ability group: ck state outside the landscape");
    in_ck[s] = true;
  }
  if (!in_ck[l.optimum()])
    throw ValidationError("ability group: ck set must contain the optimum");

  // Deviator per non-ck state: as specified, or round-robin.
  std::vector<int> deviator(l.size(), -1);
  int cursor = 0;
  for (StateId s = 0; s < l.size(); ++s) {
    if (in_ck[s]) continue;
    int d = spec.deviator.empty() ? cursor++ % size : spec.deviator[s];
    if (d < 0 || d >= size)
      throw ValidationError("ability group: deviator assignment outside the group");
    deviator[s] = d;
  }
  if (!spec.deviator.empty() && static_cast<int>(spec.deviator.size()) != l.size())
    throw ValidationError("ability group: deviator table must cover every state");

  // Load bound: deviations per agent <= |X|/size + 1.
  const Rat load_bound = Rat(l.size(), size) + 1;
  std::vector<int> load(size, 0);
  for (StateId s = 0; s < l.size(); ++s)
    if (deviator[s] >= 0) ++load[deviator[s]];
  for (int a = 0; a < size; ++a)
    if (Rat(load[a]) > load_bound)
      throw ValidationError("ability group: deviator load of agent " + std::to_string(a) +
                            " exceeds |X|/size + 1");

  std::vector<Agent> agents(size);
  for (int a = 0; a < size; ++a) {
    agents[a].id = id_prefix + std::to_string(a + 1);
    agents[a].map.resize(l.size());
  }
  for (StateId s = 0; s < l.size(); ++s) {
    if (in_ck[s]) {
      for (int a = 0; a < size; ++a) agents[a].map[s] = l.optimum();
      continue;
    }
    auto up = l.improving_states(s);  // non-empty: s is not the optimum
    for (int a = 0; a < size; ++a) agents[a].map[s] = (a == deviator[s]) ? up.front() : s;
  }
  return make_agent_set(l, std::move(agents));
}

AgentSet build_diversity_group(const Landscape& l, const DiversityGroupSpec& spec, int size,
                               const std::string& id_prefix) {
  if (l.size() < 3)
    throw ValidationError("diversity group: needs at least 3 states for a regressed state");
  if (size < 2) throw ValidationError("diversity group: size must be at least 2");
  if (spec.bad_agent < 0 || spec.bad_agent >= size)
    throw ValidationError("diversity group: bad agent outside the group");
  const StateId x0 = spec.bad_state;
  const StateId regressed = regressed_state(l, spec);

  int worst_cover = 0;
  for (StateId s = 0; s < l.size(); ++s) {
    if (s == x0 || s == l.optimum()) continue;
    worst_cover = std::max(worst_cover, static_cast<int>(l.improving_states(s).size()));
  }
  if (worst_cover > size)
    throw ValidationError("diversity group: size " + std::to_string(size) +
                          " cannot cover " + std::to_string(worst_cover) +
                          " improving states of some input");

  std::vector<Agent> agents(size);
  for (int a = 0; a < size; ++a) {
    agents[a].id = id_prefix + std::to_string(a + 1);
    agents[a].map.resize(l.size());
  }
  for (StateId s = 0; s < l.size(); ++s) {
    if (s == l.optimum()) {
      for (int a = 0; a < size; ++a) agents[a].map[s] = s;
    } else if (s == x0) {
      for (int a = 0; a < size; ++a) agents[a].map[s] = (a == spec.bad_agent) ? regressed : s;
    } else {
      // Cover the improving states exactly, assigning the bad agent last so a
      // different agent holds the regressed -> bad-state edge of the
      // disagreement cycle.
      auto up = l.improving_states(s);
      std::vector<int> order;
      for (int a = 0; a < size; ++a)
        if (a != spec.bad_agent) order.push_back(a);
      order.push_back(spec.bad_agent);
      for (int a = 0; a < size; ++a) agents[a].map[s] = s;
      for (std::size_t k = 0; k < up.size(); ++k) agents[order[k]].map[s] = up[k];
    }
  }
  return make_agent_set(l, std::move(agents));
}

GroupCheck check_ability_group(const Landscape& l, const AgentSet& group,
                               const AbilityGroupSpec& spec) {
  std::vector<bool> in_ck(l.size(), false);
  for (StateId s : spec.ck_set) in_ck[s] = true;
  if (!in_ck[l.optimum()]) return {false, "ck set does not contain the optimum"};

  for (const auto& agent : group.agents)
    for (StateId s = 0; s < l.size(); ++s)
      if (l.value(agent.apply(s)) < l.value(s))
        return {false, "agent " + agent.id + " degrades state " + l.label(s)};

  for (StateId s = 0; s < l.size(); ++s) {
    if (in_ck[s]) {
      for (const auto& agent : group.agents)
        if (agent.apply(s) != l.optimum())
          return {false, "agent " + agent.id + " does not return the optimum on ck state " +
                             l.label(s)};
    } else {
      // Exactly one distinct answer; the remaining agents must agree.
      std::map<StateId, int> outputs;
      for (const auto& agent : group.agents) ++outputs[agent.apply(s)];
      if (outputs.size() != 2)
        return {false, "state " + l.label(s) + " does not have exactly one deviating answer"};
      int minority = std::min(outputs.begin()->second, std::next(outputs.begin())->second);
      if (minority != 1)
        return {false, "state " + l.label(s) + " has more than one deviating agent"};
      bool moved = false;
      for (const auto& agent : group.agents)
        if (agent.apply(s) != s) moved = true;
      if (!moved) return {false, "no agent moves non-ck state " + l.label(s)};
    }
  }

  const Rat load_bound = Rat(l.size(), group.size()) + 1;
  for (const auto& agent : group.agents) {
    int deviations = 0;
    for (StateId s = 0; s < l.size(); ++s) {
      if (in_ck[s]) continue;
      // The deviator at s is the agent whose answer differs from the majority.
      std::map<StateId, int> outputs;
      for (const auto& other : group.agents) ++outputs[other.apply(s)];
      StateId majority = outputs.begin()->second > std::next(outputs.begin())->second
                             ? outputs.begin()->first
                             : std::next(outputs.begin())->first;
      if (agent.apply(s) != majority) ++deviations;
    }
    if (Rat(deviations) > load_bound)
      return {false, "agent " + agent.id + " deviates on more than |X|/size + 1 states"};
  }
  return {true, ""};
}

GroupCheck check_diversity_group(const Landscape& l, const AgentSet& group,
                                 const DiversityGroupSpec& spec) {
  const StateId x0 = spec.bad_state;
  if (x0 < 0 || x0 >= l.size() || x0 == l.optimum())
    return {false, "bad state must be a non-optimal state"};
  const StateId regressed = regressed_state(l, spec);
  const std::string& bad_id = group[spec.bad_agent].id;

  // Exactly one value-decreasing (agent, state) pair, and it is the spec one.
  int violations = 0;
  for (int a = 0; a < group.size(); ++a)
    for (StateId s = 0; s < l.size(); ++s)
      if (l.value(group[a].apply(s)) < l.value(s)) {
        ++violations;
        if (a != spec.bad_agent || s != x0)
          return {false, "unexpected ability violation by " + group[a].id + " at " + l.label(s)};
      }
  if (violations != 1) return {false, "expected exactly one ability violation, found " +
                                          std::to_string(violations)};
  if (group[spec.bad_agent].apply(x0) != regressed)
    return {false, bad_id + " does not regress " + l.label(x0) + " to " + l.label(regressed)};

  for (const auto& agent : group.agents)
    if (agent.apply(l.optimum()) != l.optimum())
      return {false, "agent " + agent.id + " does not fix the optimum"};

  // Full diversity with ability: off {x0, optimum}, the movers' outputs are
  // exactly the improving states.
  for (StateId s = 0; s < l.size(); ++s) {
    if (s == x0 || s == l.optimum()) continue;
    auto up = l.improving_states(s);
    std::set<StateId> required(up.begin(), up.end());
    std::set<StateId> outputs;
    for (const auto& agent : group.agents) {
      StateId y = agent.apply(s);
      if (y != s) outputs.insert(y);
    }
    if (outputs != required)
      return {false, "movers at " + l.label(s) + " do not cover exactly the improving states"};
  }

  // The disagreement cycle needs a non-bad agent proposing x0 from the
  // regressed state.
  bool cycle_possible = false;
  for (int a = 0; a < group.size(); ++a)
    if (a != spec.bad_agent && group[a].apply(regressed) == x0) cycle_possible = true;
  if (!cycle_possible)
    return {false, "no agent other than " + bad_id + " maps " + l.label(regressed) + " to " +
                       l.label(x0) + "; the disagreement cycle is unreachable"};

  return {true, ""};
}

StochasticTrace stochastic_deliberate(const Landscape& l, const AgentSet& group,
                                      const SelectionFamily& family, StateId start,
                                      Stream& stream, long step_cap) {
  family.validate(l.size(), group.size());
  if (start < 0 || start >= l.size())
    throw ValidationError("stochastic deliberation: start outside the landscape");

  std::vector<WeightedPicker> pickers;
  pickers.reserve(l.size());
  for (StateId s = 0; s < l.size(); ++s) pickers.emplace_back(family.weights[s]);

  std::vector<bool> all_fixed(l.size(), true);
  for (StateId s = 0; s < l.size(); ++s)
    for (const auto& agent : group.agents)
      if (agent.apply(s) != s) all_fixed[s] = false;

  StochasticTrace trace;
  trace.start = start;
  StateId prev = start;   // previous state; prev == current encodes "no armed move"
  int prev_agent = -1;
  StateId current = start;

  while (true) {
    if (all_fixed[current]) {
      trace.stop_reason = StochasticStop::CommonFixedPoint;
      trace.endpoint = current;
      return trace;
    }
    if (trace.proposals >= step_cap) {
      trace.stop_reason = StochasticStop::StepCap;
      trace.endpoint = current;
      return trace;
    }
    int speaker = pickers[current](stream);
    StateId proposal = group[speaker].apply(current);
    ++trace.proposals;
    if (prev != current && proposal == prev && speaker != prev_agent) {
      // One agent's real move undone by a different agent: disagreement; the
      // pre-cycle state is the group solution.
      trace.stop_reason = StochasticStop::Disagreement;
      trace.endpoint = prev;
      return trace;
    }
    prev = current;
    prev_agent = speaker;
    current = proposal;
  }
}

namespace {

// Chain node: current state plus the memory needed for disagreement
// detection. armed == false collapses all "previous proposal kept the state"
// histories.
struct Node {
  StateId current;
  bool armed;
  StateId prev;    // meaningful only when armed
  int prev_agent;  // meaningful only when armed

  bool operator<(const Node& o) const {
    return std::tie(current, armed, prev, prev_agent) <
           std::tie(o.current, o.armed, o.prev, o.prev_agent);
  }
};

Node unarmed(StateId s) { return Node{s, false, -1, -1}; }

}  // namespace

AbsorptionResult absorption_expected_value(const Landscape& l, const AgentSet& group,
                                           const SelectionFamily& family) {
  family.validate(l.size(), group.size());

  std::vector<bool> all_fixed(l.size(), true);
  for (StateId s = 0; s < l.size(); ++s)
    for (const auto& agent : group.agents)
      if (agent.apply(s) != s) all_fixed[s] = false;

  // Explore the reachable transient nodes from all starts.
  std::map<Node, int> index;
  std::vector<Node> nodes;
  std::queue<Node> frontier;
  auto intern = [&](const Node& n) {
    auto [it, fresh] = index.emplace(n, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(n);
      frontier.push(n);
    }
    return it->second;
  };
  for (StateId s = 0; s < l.size(); ++s)
    if (!all_fixed[s]) intern(unarmed(s));

  struct Transition {
    int to = -1;       // transient target, or -1 when absorbing
    Rat weight;
    Rat absorb_value;  // V of the absorbed solution when to == -1
  };
  std::vector<std::vector<Transition>> outgoing;

  while (!frontier.empty()) {
    Node n = frontier.front();
    frontier.pop();
    std::vector<Transition> row;
    for (int a = 0; a < group.size(); ++a) {
      const Rat& w = family.weights[n.current][a];
      StateId proposal = group[a].apply(n.current);
      if (n.armed && proposal == n.prev && a != n.prev_agent) {
        row.push_back({-1, w, l.value(n.prev)});  // disagreement
        continue;
      }
      Node next{proposal, proposal != n.current, n.current, a};
      if (!next.armed) next = unarmed(proposal);
      if (all_fixed[proposal]) {
        row.push_back({-1, w, l.value(proposal)});  // unanimity at the target
        continue;
      }
      row.push_back({intern(next), w, Rat(0)});
    }
    outgoing.push_back(std::move(row));
  }

  const int n_nodes = static_cast<int>(nodes.size());

  // Model validation: every transient node must reach absorption.
  {
    std::vector<bool> reaches(n_nodes, false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n_nodes; ++i) {
        if (reaches[i]) continue;
        for (const auto& t : outgoing[i]) {
          if (t.to == -1 || reaches[t.to]) {
            reaches[i] = true;
            changed = true;
            break;
          }
        }
      }
    }
    for (int i = 0; i < n_nodes; ++i)
      if (!reaches[i])
        throw InternalError(
            "absorption: a reachable deliberation history can never terminate "
            "(model-validation failure at state " +
            l.label(nodes[i].current) + ")");
  }

  // Solve (I - Q) h = r by Gaussian elimination over exact rationals.
  std::vector<std::vector<Rat>> m(n_nodes, std::vector<Rat>(n_nodes + 1, Rat(0)));
  for (int i = 0; i < n_nodes; ++i) {
    m[i][i] = 1;
    for (const auto& t : outgoing[i]) {
      if (t.to == -1)
        m[i][n_nodes] += t.weight * t.absorb_value;
      else
        m[i][t.to] -= t.weight;
    }
  }
  for (int col = 0; col < n_nodes; ++col) {
    int pivot = -1;
    for (int row = col; row < n_nodes; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot == -1) throw InternalError("absorption: singular transient system");
    std::swap(m[col], m[pivot]);
    const Rat inv = 1 / m[col][col];
    for (int j = col; j <= n_nodes; ++j) m[col][j] *= inv;
    for (int row = 0; row < n_nodes; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rat factor = m[row][col];
      for (int j = col; j <= n_nodes; ++j) m[row][j] -= factor * m[col][j];
    }
  }

  AbsorptionResult result;
  result.per_start.resize(l.size());
  result.nu_average = 0;
  for (StateId s = 0; s < l.size(); ++s) {
    Rat value = all_fixed[s] ? l.value(s) : m[index.at(unarmed(s))][n_nodes];
    result.per_start[s] = value;
    result.nu_average += value * l.start_prob(s);
  }
  return result;
}

AtdReport atd_experiment(const Landscape& l, const AgentSet& ability_group,
                         const AgentSet& diversity_group, const SelectionFamily& family_a,
                         const SelectionFamily& family_d, long trials_per_start,
                         std::uint64_t seed, ExecMode mode) {
  if (trials_per_start < 0) throw ValidationError("atd_experiment: negative trial count");

  auto run_group = [&](const AgentSet& group, const SelectionFamily& family,
                       std::string_view purpose) {
    AtdGroupReport report;
    report.exact = absorption_expected_value(l, group, family);
    report.starts.resize(l.size());
    report.all_within_3se = true;

    for (StateId s = 0; s < l.size(); ++s) {
      StartAgreement agree;
      agree.exact = report.exact.per_start[s];
      if (trials_per_start > 0) {
        std::vector<double> values(trials_per_start);
        run_indexed(trials_per_start, mode, [&](long t) {
          Stream stream(seed, purpose,
                        static_cast<std::uint64_t>(s) * trials_per_start + t);
          StochasticTrace trace = stochastic_deliberate(l, group, family, s, stream);
          if (trace.stop_reason == StochasticStop::StepCap)
            throw InternalError("atd_experiment: step cap hit; chain failed to absorb");
          values[t] = to_double(l.value(trace.endpoint));
        });
        double sum = 0;
        for (double v : values) sum += v;
        agree.mc_mean = sum / static_cast<double>(trials_per_start);
        double sq = 0;
        for (double v : values) sq += (v - agree.mc_mean) * (v - agree.mc_mean);
        double variance =
            trials_per_start > 1 ? sq / static_cast<double>(trials_per_start - 1) : 0.0;
        agree.mc_stderr = std::sqrt(variance / static_cast<double>(trials_per_start));
        double gap = std::abs(agree.mc_mean - to_double(agree.exact));
        agree.within_3se = gap <= std::max(3.0 * agree.mc_stderr, 1e-12);
      } else {
        agree.mc_mean = to_double(agree.exact);
        agree.within_3se = true;
      }
      if (!agree.within_3se) report.all_within_3se = false;
      report.starts[s] = std::move(agree);
    }
    return report;
  };

  AtdReport report;
  report.trials_per_start = trials_per_start;
  report.ability = run_group(ability_group, family_a, "atd-ability");
  report.diversity = run_group(diversity_group, family_d, "atd-diversity");
  report.ability_reaches_one = report.ability.exact.nu_average == 1;
  report.diversity_below_one = report.diversity.exact.nu_average < 1;
  report.ability_wins =
      report.ability.exact.nu_average > report.diversity.exact.nu_average;
  report.mc_consistent = report.ability.all_within_3se && report.diversity.all_within_3se;
  return report;
}

}  // namespace hpv
