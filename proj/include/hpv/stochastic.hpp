#pragma once

#include "hpv/landscape.hpp"
#include "hpv/parallel.hpp"
#include "hpv/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hpv {

/// Per-state selection measure: weights[x][i] is the probability that agent i
/// speaks next when the current state is x. Full support at every state.
struct SelectionFamily {
  std::vector<std::vector<Rat>> weights;

  static SelectionFamily uniform(int n_states, int n_agents);
  void validate(int n_states, int n_agents) const;
};

/// Construction recipe for the ability group: a common-knowledge set on which
/// everyone returns the optimum, and one designated deviator per outside
/// state. An empty deviator table means round-robin assignment.
struct AbilityGroupSpec {
  std::vector<StateId> ck_set;
  std::vector<int> deviator;  // per state; ignored on ck states; -1 = unset
};

/// Construction recipe for the diversity group: the single state where the
/// single designated agent regresses the value. The regressed state is the
/// state immediately below bad_state in value order.
struct DiversityGroupSpec {
  StateId bad_state = -1;
  int bad_agent = 0;
};

// The regressed target the bad agent maps bad_state to.
StateId regressed_state(const Landscape& landscape, const DiversityGroupSpec& spec);

AgentSet build_ability_group(const Landscape& landscape, const AbilityGroupSpec& spec,
                             int size, const std::string& id_prefix = "A");
AgentSet build_diversity_group(const Landscape& landscape, const DiversityGroupSpec& spec,
                               int size, const std::string& id_prefix = "D");

/// Independent constraint predicates, run on outputs rather than trusted by
/// construction.
struct GroupCheck {
  bool ok = false;
  std::string violation;  // first broken constraint, empty when ok
};

GroupCheck check_ability_group(const Landscape& landscape, const AgentSet& group,
                               const AbilityGroupSpec& spec);
GroupCheck check_diversity_group(const Landscape& landscape, const AgentSet& group,
                                 const DiversityGroupSpec& spec);

enum class StochasticStop { CommonFixedPoint, Disagreement, StepCap };

struct StochasticTrace {
  StateId start = -1;
  StateId endpoint = -1;
  StochasticStop stop_reason = StochasticStop::CommonFixedPoint;
  long proposals = 0;  // sampled proposals, including ones that kept the state
};

/// Deliberation with per-state random selection and disagreement stopping:
/// each step samples a speaker from the current state's measure; a proposal
/// that returns to the previous state, by a different agent, immediately
/// after a real move is a disagreement and ends the run at that previous
/// state. Otherwise the run ends when the state is fixed for every agent.
StochasticTrace stochastic_deliberate(const Landscape& landscape, const AgentSet& group,
                                      const SelectionFamily& family, StateId start,
                                      Stream& stream, long step_cap = 1'000'000);

/// Exact expected deliberation value per start, from the absorbing chain over
/// (previous state, previous agent, current state) memory. Solved by
/// Gaussian elimination over rationals; throws InternalError if any reachable
/// node cannot reach absorption (model-validation failure).
struct AbsorptionResult {
  std::vector<Rat> per_start;
  Rat nu_average;
};

AbsorptionResult absorption_expected_value(const Landscape& landscape, const AgentSet& group,
                                           const SelectionFamily& family);

/// Ability-vs-diversity comparison: exact absorption values against Monte
/// Carlo estimates for both groups.
struct StartAgreement {
  Rat exact;
  double mc_mean = 0;
  double mc_stderr = 0;
  bool within_3se = false;
};

struct AtdGroupReport {
  AbsorptionResult exact;
  std::vector<StartAgreement> starts;
  bool all_within_3se = false;
};

struct AtdReport {
  AtdGroupReport ability;
  AtdGroupReport diversity;
  long trials_per_start = 0;
  bool ability_reaches_one = false;   // exact nu-average == 1
  bool diversity_below_one = false;   // exact nu-average < 1
  bool ability_wins = false;          // exact comparison
  bool mc_consistent = false;
};

AtdReport atd_experiment(const Landscape& landscape, const AgentSet& ability_group,
                         const AgentSet& diversity_group, const SelectionFamily& family_a,
                         const SelectionFamily& family_d, long trials_per_start,
                         std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

}  // namespace hpv
