#include "hpv/fixtures.hpp"

#include "hpv/deliberation.hpp"
#include "hpv/oracle.hpp"

#include <map>

namespace hpv {

namespace {

// Four states, three solvers; the worked example behind most demos.
const std::string kHpExample =
    "x V phi1 phi2 phi3\n"
    "a 1/4 b a b\n"
    "b 1/2 b c b\n"
    "c 3/4 d c c\n"
    "d 1 d d d\n";

// The non-injective table: together the three agents do no better than phi1.
const std::string kThompson =
    "x V phi1 phi2 phi3\n"
    "a 1/3 d c b\n"
    "b 2/3 b c b\n"
    "c 2/3 c c b\n"
    "d 1 d d d\n";

// V(c) = (V(a) + V(b) + 1) / 3 ties the top two agents exactly.
const std::string kUniqueBestTie =
    "x V phi1 phi2\n"
    "a 1/5 a c\n"
    "b 2/5 b c\n"
    "c 8/15 d c\n"
    "d 1 d d\n";

// Six states; A1-A3 form the ability group (common knowledge on {e, f}),
// D1-D5 the diversity group (D1 regresses c to b).
const std::string kAtdDemo =
    "x V A1 A2 A3 D1 D2 D3 D4 D5\n"
    "a 1/10 b a a f b c d e\n"
    "b 3/10 b c b b c d e f\n"
    "c 1/2 c c d b c c c c\n"
    "d 7/10 e d d d e f d d\n"
    "e 9/10 f f f e f e e e\n"
    "f 1 f f f f f f f f\n";

const std::map<std::string, const std::string*>& registry() {
  static const std::map<std::string, const std::string*> r = {
      {"hp-example", &kHpExample},
      {"thompson", &kThompson},
      {"unique-best-tie", &kUniqueBestTie},
      {"atd-demo", &kAtdDemo},
  };
  return r;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

const std::string& fixture_text(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ValidationError("unknown fixture '" + name + "'");
  return *it->second;
}

Fixture load_fixture(const std::string& name) {
  Fixture f;
  f.name = name;
  f.instance = parse_instance_text(fixture_text(name));
  if (name == "atd-demo") {
    f.has_atd_groups = true;
    f.ability_size = 3;
    f.ability_spec.ck_set = {*f.instance.landscape.index_of("e"),
                             *f.instance.landscape.index_of("f")};
    f.diversity_spec.bad_state = *f.instance.landscape.index_of("c");
    f.diversity_spec.bad_agent = 0;
  }
  return f;
}

AgentSet fixture_ability_group(const Fixture& f) {
  if (!f.has_atd_groups) throw ValidationError("fixture has no ability group");
  std::vector<Agent> agents(f.instance.agents.agents.begin(),
                            f.instance.agents.agents.begin() + f.ability_size);
  return make_agent_set(f.instance.landscape, std::move(agents));
}

AgentSet fixture_diversity_group(const Fixture& f) {
  if (!f.has_atd_groups) throw ValidationError("fixture has no diversity group");
  std::vector<Agent> agents(f.instance.agents.agents.begin() + f.ability_size,
                            f.instance.agents.agents.end());
  return make_agent_set(f.instance.landscape, std::move(agents));
}

namespace {

void add(std::vector<FactResult>& out, std::string fact, bool pass) {
  out.push_back({std::move(fact), pass});
}

std::vector<FactResult> verify_hp_example(const Fixture& f) {
  const auto& l = f.instance.landscape;
  const auto& agents = f.instance.agents;
  std::vector<FactResult> out;

  add(out, "E(V.phi1) = 3/4", expected_performance(l, agents[0]) == Rat(3, 4));
  add(out, "E(V.phi2) = 11/16", expected_performance(l, agents[1]) == Rat(11, 16));
  add(out, "E(V.phi3) = 11/16", expected_performance(l, agents[2]) == Rat(11, 16));

  AssumptionReport report = check_assumptions(l, agents);
  add(out, "all assumptions hold", report.all_hold());
  add(out, "best agent is phi1",
      report.best_agents == std::vector<std::string>{"phi1"});

  GroupOutcome full = group_operator(l, agents);
  add(out, "full group reaches d from every start", full.solves_all(l));
  add(out, "full group expected value = 1", full.expected_value == 1);

  bool oracle_agrees = true;
  for (StateId x = 0; x < l.size(); ++x)
    if (exhaustive_endpoints(l, agents, x) != std::set<StateId>{l.optimum()})
      oracle_agrees = false;
  add(out, "every maximal deliberation order ends at d", oracle_agrees);

  std::vector<Agent> pair = {agents[0], agents[1]};
  DeliberationTrace t = relay_deliberate(l, make_agent_set(l, pair), *l.index_of("a"), {});
  bool chain = t.steps.size() == 3 && t.steps[0].agent == 0 && t.steps[1].agent == 1 &&
               t.steps[2].agent == 0 && t.endpoint == l.optimum();
  add(out, "phi1,phi2 from a deliberate a->b->c->d", chain);
  return out;
}

std::vector<FactResult> verify_thompson(const Fixture& f) {
  const auto& l = f.instance.landscape;
  const auto& agents = f.instance.agents;
  std::vector<FactResult> out;

  add(out, "E(V.phi1) = 5/6", expected_performance(l, agents[0]) == Rat(5, 6));
  add(out, "E(V.phi2) = 9/12", expected_performance(l, agents[1]) == Rat(9, 12));
  add(out, "E(V.phi3) = 9/12", expected_performance(l, agents[2]) == Rat(9, 12));

  AssumptionReport report = check_assumptions(l, agents);
  add(out, "injectivity fails with witness (b, c)",
      !report.injectivity.holds && report.injectivity.witness &&
          report.injectivity.witness->states == std::vector<std::string>{"b", "c"});

  GroupOutcome all = group_operator(l, agents);
  std::vector<Agent> solo = {agents[0]};
  GroupOutcome best_alone = group_operator(l, make_agent_set(l, solo));
  add(out, "three agents together have phi1's endpoint map", all.endpoint == best_alone.endpoint);
  add(out, "group expected value equals phi1's, 5/6", all.expected_value == Rat(5, 6));

  add(out, "no deliberation order reaches d from b",
      exhaustive_endpoints(l, agents, *l.index_of("b")) ==
          std::set<StateId>{*l.index_of("b")});

  TheoremVerdict v = verify_basic_theorem(l, agents);
  add(out, "basic theorem refused for injectivity",
      !v.applicable && v.failed_assumption == Assumption::Injectivity);
  return out;
}

std::vector<FactResult> verify_unique_best_tie(const Fixture& f) {
  const auto& l = f.instance.landscape;
  const auto& agents = f.instance.agents;
  std::vector<FactResult> out;

  const Rat va = l.value(*l.index_of("a"));
  const Rat vb = l.value(*l.index_of("b"));
  const Rat vc = l.value(*l.index_of("c"));
  add(out, "V(c) = (V(a) + V(b) + 1)/3", vc == (va + vb + 1) / 3);
  add(out, "V(b) < (V(a) + 1)/2", vb < (va + 1) / 2);
  add(out, "0 < V(a) < V(b) < V(c) < 1", 0 < va && va < vb && vb < vc && vc < 1);

  const Rat ev1 = expected_performance(l, agents[0]);
  const Rat ev2 = expected_performance(l, agents[1]);
  add(out, "expected abilities tie at 13/20", ev1 == ev2 && ev1 == Rat(13, 20));

  AssumptionReport report = check_assumptions(l, agents);
  add(out, "unique-best fails with tie {phi1, phi2}",
      !report.unique_best.holds &&
          report.best_agents == std::vector<std::string>{"phi1", "phi2"});

  GroupOutcome pair = group_operator(l, agents);
  add(out, "the tied pair solves every start", pair.solves_all(l));

  TheoremVerdict v = verify_basic_theorem(l, agents);
  add(out, "basic theorem refused for unique-best",
      !v.applicable && v.failed_assumption == Assumption::UniqueBest);
  return out;
}

std::vector<FactResult> verify_atd_demo(const Fixture& f) {
  const auto& l = f.instance.landscape;
  std::vector<FactResult> out;

  AgentSet ability = fixture_ability_group(f);
  AgentSet diversity = fixture_diversity_group(f);

  GroupCheck a_check = check_ability_group(l, ability, f.ability_spec);
  add(out, "ability group satisfies its constraints (" + a_check.violation + ")", a_check.ok);
  GroupCheck d_check = check_diversity_group(l, diversity, f.diversity_spec);
  add(out, "diversity group satisfies its constraints (" + d_check.violation + ")", d_check.ok);

  add(out, "regressed state is b", regressed_state(l, f.diversity_spec) == *l.index_of("b"));

  add(out, "shipped table matches the deterministic constructors",
      build_ability_group(l, f.ability_spec, f.ability_size).agents == ability.agents &&
          build_diversity_group(l, f.diversity_spec, diversity.size()).agents ==
              diversity.agents);

  SelectionFamily fam_a = SelectionFamily::uniform(l.size(), ability.size());
  SelectionFamily fam_d = SelectionFamily::uniform(l.size(), diversity.size());
  AbsorptionResult ea = absorption_expected_value(l, ability, fam_a);
  AbsorptionResult ed = absorption_expected_value(l, diversity, fam_d);
  bool all_one = ea.nu_average == 1;
  for (const auto& v : ea.per_start)
    if (v != 1) all_one = false;
  add(out, "ability group absorbs at value 1 from every start", all_one);
  add(out, "diversity group nu-average is strictly below 1", ed.nu_average < 1);
  return out;
}

}  // namespace

std::vector<FactResult> verify_fixture(const Fixture& fixture) {
  if (fixture.name == "hp-example") return verify_hp_example(fixture);
  if (fixture.name == "thompson") return verify_thompson(fixture);
  if (fixture.name == "unique-best-tie") return verify_unique_best_tie(fixture);
  if (fixture.name == "atd-demo") return verify_atd_demo(fixture);
  throw ValidationError("unknown fixture '" + fixture.name + "'");
}

}  // namespace hpv
