#include "hpv/assumptions.hpp"

namespace hpv {

std::string_view assumption_name(Assumption a) {
  switch (a) {
    case Assumption::UniqueSolution: return "unique-solution";
    case Assumption::Injectivity: return "injectivity";
    case Assumption::Ability: return "ability";
    case Assumption::Idempotence: return "idempotence";
    case Assumption::Difficulty: return "difficulty";
    case Assumption::Diversity: return "diversity";
    case Assumption::UniqueBest: return "unique-best";
  }
  return "?";
}

const Verdict& AssumptionReport::verdict(Assumption a) const {
  switch (a) {
    case Assumption::UniqueSolution: return unique_solution;
    case Assumption::Injectivity: return injectivity;
    case Assumption::Ability: return ability;
    case Assumption::Idempotence: return idempotence;
    case Assumption::Difficulty: return difficulty;
    case Assumption::Diversity: return diversity;
    case Assumption::UniqueBest: return unique_best;
  }
  throw InternalError("verdict: unknown assumption");
}

bool AssumptionReport::all_hold() const { return !first_failure().has_value(); }

std::optional<Assumption> AssumptionReport::first_failure() const {
  for (Assumption a :
       {Assumption::UniqueSolution, Assumption::Injectivity, Assumption::Ability,
        Assumption::Idempotence, Assumption::Difficulty, Assumption::Diversity,
        Assumption::UniqueBest}) {
    if (!verdict(a).holds) return a;
  }
  return std::nullopt;
}

namespace {

Verdict pass() { return Verdict{true, std::nullopt}; }

Verdict fail(Witness w) { return Verdict{false, std::move(w)}; }

Verdict check_injectivity(const Landscape& l) {
  for (StateId a = 0; a < l.size(); ++a)
    for (StateId b = a + 1; b < l.size(); ++b)
      if (l.value(a) == l.value(b))
        return fail({{},
                     {l.label(a), l.label(b)},
                     "V(" + l.label(a) + ") = V(" + l.label(b) + ") = " +
                         format_rational(l.value(a))});
  return pass();
}

Verdict check_ability(const Landscape& l, const AgentSet& agents) {
  for (const auto& agent : agents.agents) {
    for (StateId x = 0; x < l.size(); ++x) {
      StateId y = agent.apply(x);
      if (l.value(y) < l.value(x))
        return fail({{agent.id},
                     {l.label(x)},
                     agent.id + " degrades " + l.label(x) + " to " + l.label(y)});
    }
    if (agent.apply(l.optimum()) != l.optimum())
      return fail({{agent.id},
                   {l.label(l.optimum())},
                   agent.id + " does not fix the optimum"});
  }
  return pass();
}

Verdict check_idempotence(const Landscape& l, const AgentSet& agents) {
  for (const auto& agent : agents.agents)
    for (StateId x = 0; x < l.size(); ++x)
      if (agent.apply(agent.apply(x)) != agent.apply(x))
        return fail({{agent.id},
                     {l.label(x)},
                     agent.id + " moves its own output at " + l.label(x)});
  return pass();
}

Verdict check_difficulty(const Landscape& l, const AgentSet& agents) {
  for (const auto& agent : agents.agents) {
    bool misses_somewhere = false;
    for (StateId x = 0; x < l.size() && !misses_somewhere; ++x)
      if (agent.apply(x) != l.optimum()) misses_somewhere = true;
    if (!misses_somewhere)
      return fail({{agent.id}, {}, agent.id + " returns the optimum from every state"});
  }
  return pass();
}

Verdict check_diversity(const Landscape& l, const AgentSet& agents) {
  for (StateId x = 0; x < l.size(); ++x) {
    if (x == l.optimum()) continue;
    bool moved = false;
    for (const auto& agent : agents.agents)
      if (agent.apply(x) != x) {
        moved = true;
        break;
      }
    if (!moved) return fail({{}, {l.label(x)}, "no agent moves " + l.label(x)});
  }
  return pass();
}

}  // namespace

AssumptionReport check_assumptions(const Landscape& l, const AgentSet& agents) {
  AssumptionReport r;

  // Unique solution holds by Landscape construction; re-derive it anyway so
  // the report stands on its own.
  r.unique_solution = l.value(l.optimum()) == 1 ? pass()
                                                : fail({{}, {}, "optimum value is not 1"});
  r.injectivity = check_injectivity(l);
  r.ability = check_ability(l, agents);
  r.idempotence = check_idempotence(l, agents);
  r.difficulty = check_difficulty(l, agents);
  r.diversity = check_diversity(l, agents);

  r.agent_values.reserve(agents.size());
  for (const auto& agent : agents.agents)
    r.agent_values.push_back(expected_performance(l, agent));

  Rat best = r.agent_values[0];
  for (const auto& v : r.agent_values)
    if (v > best) best = v;
  for (int i = 0; i < agents.size(); ++i)
    if (r.agent_values[i] == best) r.best_agents.push_back(agents[i].id);

  if (r.best_agents.size() == 1) {
    r.unique_best = pass();
  } else {
    Witness w;
    w.agent_ids = r.best_agents;
    w.detail = "expected-performance tie at " + format_rational(best);
    r.unique_best = fail(std::move(w));
  }
  return r;
}

}  // namespace hpv
