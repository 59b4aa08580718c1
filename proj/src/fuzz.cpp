#include "hpv/fuzz.hpp"

#include "hpv/assumptions.hpp"
#include "hpv/deliberation.hpp"
#include "hpv/oracle.hpp"

#include <algorithm>
#include <set>

namespace hpv {

std::string_view drop_mode_name(DropMode mode) {
  switch (mode) {
    case DropMode::Nothing: return "nothing";
    case DropMode::Injectivity: return "injectivity";
    case DropMode::UniqueBest: return "unique-best";
    case DropMode::CloneIdempotenceAlternative: return "clone-idempotence-alternative";
    case DropMode::NoRepetitionSelection: return "no-repetition-selection";
  }
  return "?";
}

std::optional<DropMode> parse_drop_mode(std::string_view name) {
  for (DropMode m : {DropMode::Nothing, DropMode::Injectivity, DropMode::UniqueBest,
                     DropMode::CloneIdempotenceAlternative, DropMode::NoRepetitionSelection})
    if (drop_mode_name(m) == name) return m;
  return std::nullopt;
}

StateId iterate_to_fixpoint(const Landscape& l, const Agent& agent, StateId start) {
  StateId current = start;
  for (int guard = 0; guard <= l.size(); ++guard) {
    StateId next = agent.apply(current);
    if (next == current) return current;
    current = next;
  }
  // Possible only when the agent cycles, which ability on an injective
  // landscape rules out.
  throw NotApplicableError("iterate_to_fixpoint: agent '" + agent.id + "' cycles from '" +
                           l.label(start) + "'");
}

StateId parallel_clones_best(const Landscape& l, const Agent& agent, StateId start,
                             int copies) {
  StateId best = agent.apply(start);
  StateId current = best;
  for (int k = 1; k < copies; ++k) {
    current = agent.apply(current);
    if (l.value(current) > l.value(best)) best = current;
  }
  return best;
}

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

}  // namespace

Rat subset_coverage_probability(const std::vector<int>& pool_counts,
                                const std::vector<int>& target, int n1) {
  int pool_size = 0;
  for (int c : pool_counts) pool_size += c;
  if (n1 < 0 || n1 > pool_size)
    throw ValidationError("subset_coverage_probability: n1 outside the pool size");
  if (target.size() > 25)
    throw ValidationError("subset_coverage_probability: target too large");

  const BigInt total = binomial(pool_size, n1);
  if (total == 0) return Rat(0);
  BigInt covered = 0;
  const std::uint32_t subsets = 1u << target.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    int removed = 0;
    int bits = 0;
    for (std::size_t j = 0; j < target.size(); ++j)
      if (mask & (1u << j)) {
        removed += pool_counts[target[j]];
        ++bits;
      }
    BigInt ways = binomial(pool_size - removed, n1);
    covered += (bits % 2 == 0) ? ways : -ways;
  }
  return Rat(covered, total);
}

namespace {

constexpr int kValueGrid = 24;  // values are sampled on the grid k/24

// Landscape with 3..5 states on ascending values; when merging, one adjacent
// non-optimal pair shares a value (injectivity drops, everything else stays).
Landscape gen_landscape(Stream& stream, bool merge_values) {
  const int n = 3 + static_cast<int>(stream.below(3));
  std::set<int> numerators;
  while (static_cast<int>(numerators.size()) < n - 1)
    numerators.insert(1 + static_cast<int>(stream.below(kValueGrid - 1)));

  std::vector<Rat> values;
  for (int k : numerators) values.push_back(Rat(k, kValueGrid));
  std::sort(values.begin(), values.end());
  if (merge_values) {
    int i = n >= 4 ? static_cast<int>(stream.below(n - 2)) : 0;
    values[i + 1] = values[i];
  }
  values.push_back(Rat(1));

  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return Landscape::validate(std::move(labels), std::move(values));
}

// Able agent; idempotent when `idempotent`, otherwise any weakly improving
// self-map that fixes the optimum.
Agent gen_agent(Stream& stream, const Landscape& l, int serial, bool idempotent) {
  Agent agent;
  agent.id = "phi" + std::to_string(serial);
  agent.map.resize(l.size());

  if (idempotent) {
    // Pick the fixed-point set first; everything else maps into it, weakly
    // upward, which forces idempotence.
    std::vector<bool> fixed(l.size(), false);
    fixed[l.optimum()] = true;
    for (StateId s = 0; s < l.size(); ++s)
      if (s != l.optimum() && stream.below(2) == 0) fixed[s] = true;
    for (StateId s = 0; s < l.size(); ++s) {
      if (fixed[s]) {
        agent.map[s] = s;
        continue;
      }
      std::vector<StateId> targets;
      for (StateId t = 0; t < l.size(); ++t)
        if (fixed[t] && t != s && l.value(t) >= l.value(s)) targets.push_back(t);
      agent.map[s] = targets[stream.below(targets.size())];
    }
  } else {
    for (StateId s = 0; s < l.size(); ++s) {
      std::vector<StateId> targets = {s};
      for (StateId t = 0; t < l.size(); ++t)
        if (t != s && l.value(t) >= l.value(s) && t != l.optimum()) targets.push_back(t);
      targets.push_back(l.optimum());
      agent.map[s] = s == l.optimum() ? s : targets[stream.below(targets.size())];
    }
  }
  return agent;
}

// Assumption pattern required for the mode: the dropped one fails, the rest
// hold.
bool pattern_matches(const AssumptionReport& report, DropMode drop) {
  auto needs_failure = [&](Assumption a) {
    switch (drop) {
      case DropMode::Injectivity: return a == Assumption::Injectivity;
      case DropMode::UniqueBest: return a == Assumption::UniqueBest;
      case DropMode::CloneIdempotenceAlternative: return a == Assumption::Idempotence;
      default: return false;
    }
  };
  for (Assumption a :
       {Assumption::UniqueSolution, Assumption::Injectivity, Assumption::Ability,
        Assumption::Idempotence, Assumption::Difficulty, Assumption::Diversity,
        Assumption::UniqueBest}) {
    if (report.verdict(a).holds == needs_failure(a)) return false;
  }
  return true;
}

std::optional<Instance> gen_instance(Stream& stream, DropMode drop) {
  const bool merge = drop == DropMode::Injectivity;
  const bool idempotent = drop != DropMode::CloneIdempotenceAlternative;

  if (drop == DropMode::UniqueBest) {
    // The tie family: V(c) = (V(a) + V(b) + 1)/3 with V(b) < (V(a) + 1)/2
    // makes the two designated agents tie exactly.
    const int pa = 1 + static_cast<int>(stream.below(kValueGrid - 2));
    const Rat va(pa, kValueGrid);
    std::vector<Rat> qs;
    for (int pb = pa + 1; pb < kValueGrid; ++pb)
      if (Rat(pb, kValueGrid) < (va + 1) / 2) qs.push_back(Rat(pb, kValueGrid));
    if (qs.empty()) return std::nullopt;
    const Rat vb = qs[stream.below(qs.size())];
    const Rat vc = (va + vb + 1) / 3;
    Landscape l = Landscape::validate({"a", "b", "c", "d"}, {va, vb, vc, Rat(1)});

    std::vector<Agent> agents;
    agents.push_back({"phi1", {0, 1, 3, 3}});
    agents.push_back({"phi2", {2, 2, 2, 3}});
    if (stream.below(2) == 0) agents.push_back({"phi3", {0, 1, 2, 3}});
    return Instance{std::move(l), make_agent_set(l, std::move(agents))};
  }

  Landscape l = gen_landscape(stream, merge);
  const int n_agents = 2 + static_cast<int>(stream.below(3));
  std::vector<Agent> agents;
  std::set<std::vector<StateId>> maps_seen;
  int guard = 0;
  while (static_cast<int>(agents.size()) < n_agents && guard++ < 64) {
    Agent a = gen_agent(stream, l, static_cast<int>(agents.size()) + 1, idempotent);
    if (maps_seen.insert(a.map).second) agents.push_back(std::move(a));
  }
  if (static_cast<int>(agents.size()) < n_agents) return std::nullopt;
  return Instance{std::move(l), make_agent_set(l, std::move(agents))};
}

struct FailureProbe {
  bool is_counterexample = false;
  std::string claim;
  std::optional<SelectionEvidence> selection;
};

FailureProbe probe_thesis_failure(const Instance& inst, const AssumptionReport& report,
                                  DropMode drop, Stream& stream) {
  const Landscape& l = inst.landscape;
  const AgentSet& agents = inst.agents;
  FailureProbe probe;

  Rat best_ev = report.agent_values[0];
  int best = 0;
  for (int i = 1; i < agents.size(); ++i)
    if (report.agent_values[i] > best_ev) {
      best_ev = report.agent_values[i];
      best = i;
    }

  switch (drop) {
    case DropMode::Nothing: {
      // Control: the conclusion must hold; any violation is a counterexample
      // to the implementation, not the theorem.
      bool solves_all = true;
      for (StateId x = 0; x < l.size(); ++x)
        if (exhaustive_endpoints(l, agents, x) != std::set<StateId>{l.optimum()})
          solves_all = false;
      if (!solves_all || best_ev >= 1) {
        probe.is_counterexample = true;
        probe.claim = "conclusion failed under the full hypothesis set";
      }
      return probe;
    }
    case DropMode::Injectivity: {
      const Rat best_case = best_case_group_value(l, agents);
      if (best_case <= best_ev) {
        probe.is_counterexample = true;
        probe.claim = "no deliberation order of any group beats the best agent " +
                      agents[best].id + " (best-case group value " +
                      format_rational(best_case) + " vs " + format_rational(best_ev) + ")";
      }
      return probe;
    }
    case DropMode::UniqueBest: {
      std::vector<Agent> tied;
      for (int i = 0; i < agents.size(); ++i)
        if (report.agent_values[i] == best_ev) tied.push_back(agents[i]);
      if (tied.size() < 2) return probe;
      GroupOutcome pair = group_operator(l, make_agent_set(l, tied));
      if (pair.solves_all(l)) {
        probe.is_counterexample = true;
        probe.claim =
            "the tied best agents already reach the optimum from every start; no group "
            "strictly outperforms the best performers";
      }
      return probe;
    }
    case DropMode::CloneIdempotenceAlternative: {
      // Under the re-application rule, clones of the best agent keep
      // improving; when iteration solves every start, nothing can outperform
      // a large enough clone group.
      bool iteration_solves_all = true;
      for (StateId x = 0; x < l.size(); ++x)
        if (iterate_to_fixpoint(l, agents[best], x) != l.optimum())
          iteration_solves_all = false;
      bool raw_misses = false;
      for (StateId x = 0; x < l.size(); ++x)
        if (agents[best].apply(x) != l.optimum()) raw_misses = true;
      if (iteration_solves_all && raw_misses) {
        probe.is_counterexample = true;
        StateId witness = 0;
        for (StateId x = 0; x < l.size(); ++x)
          if (agents[best].apply(x) != l.optimum()) witness = x;
        probe.claim = "clone collapse fails for " + agents[best].id +
                      ": one application from '" + l.label(witness) +
                      "' misses the optimum but re-application reaches it; enough clones "
                      "under the improvement rule solve every start";
      }
      return probe;
    }
    case DropMode::NoRepetitionSelection: {
      TheoremVerdict v = verify_basic_theorem(l, agents);
      if (!v.applicable || v.outperforming_subset.size() < 2) return probe;
      std::vector<int> target;
      for (const auto& id : v.outperforming_subset) target.push_back(*agents.index_of(id));

      // One fixed pool drawn from uniform mu; selection without repetition.
      const int pool_size = 3 * agents.size();
      std::vector<int> pool_counts(agents.size(), 0);
      for (int i = 0; i < pool_size; ++i)
        ++pool_counts[stream.below(static_cast<std::uint64_t>(agents.size()))];
      const int n1 = static_cast<int>(target.size());
      Rat p = subset_coverage_probability(pool_counts, target, n1);
      if (p < 1) {
        probe.is_counterexample = true;
        probe.selection = SelectionEvidence{pool_counts, target, n1, p};
        probe.claim = "drawing " + std::to_string(n1) + " of " + std::to_string(pool_size) +
                      " pooled clones without repetition covers the outperforming subset "
                      "only with probability " +
                      format_rational(p) + " < 1";
      }
      return probe;
    }
  }
  return probe;
}

}  // namespace

FuzzReport fuzz_counterexample(DropMode drop, long budget, std::uint64_t seed) {
  if (budget < 0) throw ValidationError("fuzz: negative budget");
  FuzzReport report;
  report.dropped = drop;
  report.seed = seed;

  const long raw_cap = budget * 1000 + 1000;
  long raw = 0;
  while (report.tried < budget && raw < raw_cap) {
    Stream stream(seed, "fuzz-gen", static_cast<std::uint64_t>(raw++));
    auto inst = gen_instance(stream, drop);
    if (!inst) continue;
    AssumptionReport assumptions = check_assumptions(inst->landscape, inst->agents);
    if (!pattern_matches(assumptions, drop)) continue;

    long index = report.tried++;
    FailureProbe probe = probe_thesis_failure(*inst, assumptions, drop, stream);
    if (probe.is_counterexample) {
      if (drop == DropMode::Nothing) {
        // A control counterexample is reported, never swallowed.
        report.found = FuzzCounterexample{std::move(*inst), probe.claim, index};
        return report;
      }
      report.found = FuzzCounterexample{std::move(*inst), probe.claim, index};
      report.found->selection = probe.selection;
      return report;
    }
    if (drop == DropMode::Nothing) ++report.control_verified;
  }
  return report;
}

bool revalidate_counterexample(const FuzzReport& report) {
  if (!report.found) return false;
  const Instance& inst = report.found->instance;
  AssumptionReport assumptions = check_assumptions(inst.landscape, inst.agents);
  if (!pattern_matches(assumptions, report.dropped)) return false;

  if (report.dropped == DropMode::NoRepetitionSelection) {
    const auto& ev = report.found->selection;
    if (!ev) return false;
    return subset_coverage_probability(ev->pool_counts, ev->target, ev->n1) ==
               ev->coverage_probability &&
           ev->coverage_probability < 1;
  }

  Stream unused(report.seed, "fuzz-revalidate", 0);
  FailureProbe probe = probe_thesis_failure(inst, assumptions, report.dropped, unused);
  return probe.is_counterexample;
}

}  // namespace hpv
