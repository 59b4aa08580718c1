#include "hpv/sampling.hpp"

#include <algorithm>
#include <set>

namespace hpv {

SamplingSpec SamplingSpec::uniform(int n_agents, std::uint64_t seed) {
  SamplingSpec s;
  s.draw_dist.assign(n_agents, Rat(1, n_agents));
  s.seed = seed;
  return s;
}

void SamplingSpec::validate(int n_agents) const {
  if (static_cast<int>(draw_dist.size()) != n_agents)
    throw ValidationError("sampling: distribution size does not match the agent pool");
  Rat total = 0;
  for (const auto& p : draw_dist) {
    if (p <= 0) throw ValidationError("sampling: distribution must have full support");
    total += p;
  }
  if (total != 1) throw ValidationError("sampling: distribution does not sum to 1");
  if (draw_cap < 1) throw ValidationError("sampling: draw cap must be positive");
}

void StoppingRule::validate(int n_agents) const {
  if (target.empty()) throw ValidationError("stopping rule: empty target");
  std::set<int> seen;
  for (int i : target) {
    if (i < 0 || i >= n_agents)
      throw ValidationError("stopping rule: target index outside the pool");
    if (!seen.insert(i).second) throw ValidationError("stopping rule: duplicate target index");
  }
  if (variant == StopVariant::AllOfPool && static_cast<int>(target.size()) != n_agents)
    throw ValidationError("stopping rule: variant 1 must target the whole pool");
  if (variant == StopVariant::WitnessPair && target.size() != 2)
    throw ValidationError("stopping rule: variant 3 targets exactly two agents");
}

StoppingRule make_stopping_rule(StopVariant variant, const Landscape& landscape,
                                const AgentSet& agents, const SchedulerPolicy& policy) {
  StoppingRule rule;
  rule.variant = variant;
  if (variant == StopVariant::AllOfPool) {
    for (int i = 0; i < agents.size(); ++i) rule.target.push_back(i);
    return rule;
  }

  AssumptionReport report = check_assumptions(landscape, agents);
  if (auto failed = report.first_failure())
    throw NotApplicableError("stopping rule: assumption '" +
                             std::string(assumption_name(*failed)) + "' fails");

  if (variant == StopVariant::OutperformSet) {
    TheoremVerdict v = verify_basic_theorem(landscape, agents, policy);
    for (const auto& id : v.outperforming_subset) rule.target.push_back(*agents.index_of(id));
    std::sort(rule.target.begin(), rule.target.end());
    return rule;
  }

  // Witness pair: a state the best agent cannot solve, and the first agent
  // that strictly improves the best agent's answer there.
  int best = 0;
  for (int i = 1; i < agents.size(); ++i)
    if (report.agent_values[i] > report.agent_values[best]) best = i;
  for (StateId x = 0; x < landscape.size(); ++x) {
    StateId y = agents[best].apply(x);
    if (y == landscape.optimum()) continue;
    for (int i = 0; i < agents.size(); ++i) {
      StateId z = agents[i].apply(y);
      if (z != y && landscape.value(z) > landscape.value(y)) {
        rule.target = {std::min(best, i), std::max(best, i)};
        return rule;
      }
    }
  }
  throw InternalError("witness pair: not found although assumptions hold");
}

SampleStats draw_random_group(const AgentSet& agents, const SamplingSpec& spec,
                              const StoppingRule& rule, Stream& stream) {
  spec.validate(agents.size());
  rule.validate(agents.size());

  std::vector<bool> wanted(agents.size(), false);
  for (int i : rule.target) wanted[i] = true;
  int missing = static_cast<int>(rule.target.size());

  WeightedPicker pick(spec.draw_dist);
  SampleStats stats;
  std::vector<std::int64_t> counts(agents.size(), 0);
  while (missing > 0) {
    if (static_cast<std::int64_t>(stats.draws.size()) >= spec.draw_cap) {
      stats.truncated = true;
      break;
    }
    int drawn = pick(stream);
    stats.draws.push_back(drawn);
    ++counts[drawn];
    if (wanted[drawn]) {
      wanted[drawn] = false;
      --missing;
    }
  }
  stats.n1 = static_cast<std::int64_t>(stats.draws.size());
  for (int i = 0; i < agents.size(); ++i)
    stats.empirical_freq.push_back(stats.n1 > 0 ? Rat(counts[i], stats.n1) : Rat(0));
  return stats;
}

CloneGroup best_clone_group(const Landscape& landscape, const AgentSet& agents, int n1,
                            const SchedulerPolicy& policy) {
  if (n1 < 1) throw ValidationError("best_clone_group: n1 must be positive");
  AssumptionReport report = check_assumptions(landscape, agents);
  if (!report.unique_best.holds) {
    std::string ids;
    for (const auto& id : report.best_agents) ids += (ids.empty() ? "" : ", ") + id;
    throw NotApplicableError("best_clone_group: best agent is not unique (tie: " + ids + ")");
  }
  CloneGroup g;
  g.agent_index = *agents.index_of(report.best_agents.front());
  g.copies = n1;
  g.outcome = compose_clones(landscape, agents[g.agent_index], n1, policy);
  return g;
}

Rat expected_stopping_time(const SamplingSpec& spec, const StoppingRule& rule) {
  spec.validate(static_cast<int>(spec.draw_dist.size()));
  rule.validate(static_cast<int>(spec.draw_dist.size()));
  const auto& target = rule.target;
  if (target.size() > 25)
    throw ValidationError("expected_stopping_time: target too large for inclusion-exclusion");

  // E[N1] = sum over non-empty S subseteq target of (-1)^{|S|+1} / mu(S).
  Rat expectation = 0;
  const std::uint32_t subsets = 1u << target.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    Rat mass = 0;
    int bits = 0;
    for (std::size_t j = 0; j < target.size(); ++j)
      if (mask & (1u << j)) {
        mass += spec.draw_dist[target[j]];
        ++bits;
      }
    Rat term = 1 / mass;
    expectation += (bits % 2 == 1) ? term : -term;
  }
  return expectation;
}

HpExperimentReport hp_experiment(const Landscape& landscape, const AgentSet& agents,
                                 const SamplingSpec& spec, const StoppingRule& rule,
                                 long trials, const SchedulerPolicy& policy, ExecMode mode,
                                 bool faithful) {
  AssumptionReport report = check_assumptions(landscape, agents);
  if (auto failed = report.first_failure())
    throw NotApplicableError("hp_experiment: assumption '" +
                             std::string(assumption_name(*failed)) +
                             "' fails; the theorem is out of range");
  spec.validate(agents.size());
  rule.validate(agents.size());
  if (trials < 0) throw ValidationError("hp_experiment: negative trial count");

  int best = 0;
  for (int i = 1; i < agents.size(); ++i)
    if (report.agent_values[i] > report.agent_values[best]) best = i;
  const Rat best_ev = report.agent_values[best];

  HpExperimentReport out;
  out.trials.resize(trials);
  out.oracle_n1 = expected_stopping_time(spec, rule);

  run_indexed(trials, mode, [&](long t) {
    Stream stream(spec.seed, "hp-trial", static_cast<std::uint64_t>(t));
    SampleStats stats = draw_random_group(agents, spec, rule, stream);

    HpTrial trial;
    trial.n1 = stats.n1;
    trial.truncated = stats.truncated;
    std::set<int> members(stats.draws.begin(), stats.draws.end());
    trial.dedup_size = static_cast<int>(members.size());
    trial.contains_best = members.count(best) > 0;

    std::vector<Agent> group;
    for (int i : members) group.push_back(agents[i]);
    AgentSet random_group = make_agent_set(landscape, std::move(group));

    trial.unanimous = true;
    GroupOutcome outcome;
    outcome.endpoint.resize(landscape.size());
    outcome.expected_value = 0;
    for (StateId x = 0; x < landscape.size(); ++x) {
      DeliberationTrace trace = relay_deliberate(landscape, random_group, x, policy);
      outcome.endpoint[x] = trace.endpoint;
      outcome.expected_value += landscape.value(trace.endpoint) * landscape.start_prob(x);
      if (trace.stop_reason != StopReason::CommonFixedPoint) trial.unanimous = false;
    }
    trial.random_ev = outcome.expected_value;
    trial.best_ev = best_ev;
    trial.solves_all = outcome.solves_all(landscape);

    if (faithful) {
      // Second event: an independent stream drawn until it contains n1 copies
      // of the best agent; its best-n1 members are then exactly those clones.
      Stream second(spec.seed, "hp-trial-pool", static_cast<std::uint64_t>(t));
      WeightedPicker pick(spec.draw_dist);
      std::int64_t copies = 0;
      std::int64_t n = 0;
      while (copies < trial.n1 && n < spec.draw_cap) {
        if (pick(second) == best) ++copies;
        ++n;
      }
      trial.faithful_pool = n;
    }

    out.trials[t] = std::move(trial);
  });

  long outperform = 0, solve_all = 0;
  double n1_sum = 0;
  out.certificate = trials > 0;
  for (const auto& t : out.trials) {
    if (t.random_ev > t.best_ev) ++outperform;
    if (t.solves_all) ++solve_all;
    n1_sum += static_cast<double>(t.n1);
    if (t.truncated) out.certificate = false;
  }
  out.outperform_fraction = trials > 0 ? Rat(outperform, trials) : Rat(0);
  out.solve_all_fraction = trials > 0 ? Rat(solve_all, trials) : Rat(0);
  out.mean_n1 = trials > 0 ? n1_sum / static_cast<double>(trials) : 0.0;
  return out;
}

}  // namespace hpv
