#pragma once

#include "hpv/deliberation.hpp"
#include "hpv/landscape.hpp"
#include "hpv/parallel.hpp"
#include "hpv/rng.hpp"

#include <cstdint>
#include <vector>

namespace hpv {

/// Clone-draw distribution over the agent pool (full support), plus the
/// master seed and a cap on draws per trial.
struct SamplingSpec {
  std::vector<Rat> draw_dist;  // per agent index; positive, sums to 1
  std::uint64_t seed = 0;
  std::int64_t draw_cap = 1'000'000;

  static SamplingSpec uniform(int n_agents, std::uint64_t seed);
  void validate(int n_agents) const;
};

/// The three stopping-time variants: draw until the target set has fully
/// appeared. Variant 1 targets the whole pool, variant 2 a subset sufficient
/// to outperform the best agent, variant 3 the witness pair.
enum class StopVariant { AllOfPool = 1, OutperformSet = 2, WitnessPair = 3 };

struct StoppingRule {
  StopVariant variant = StopVariant::AllOfPool;
  std::vector<int> target;  // agent indices, non-empty

  void validate(int n_agents) const;
};

// Derives the canonical target for a variant: the full pool, the greedily
// grown outperforming subset, or {best agent, its complement witness}.
// Variants 2 and 3 require the full assumption set (NotApplicableError).
StoppingRule make_stopping_rule(StopVariant variant, const Landscape& landscape,
                                const AgentSet& agents, const SchedulerPolicy& policy = {});

/// One draw sequence: the sample path, its stopping index, and the empirical
/// appearance frequencies up to that index.
struct SampleStats {
  std::vector<int> draws;
  std::int64_t n1 = 0;               // first index at which target is complete
  std::vector<Rat> empirical_freq;   // per agent, sums to 1
  bool truncated = false;            // draw_cap hit before the target completed
};

SampleStats draw_random_group(const AgentSet& agents, const SamplingSpec& spec,
                              const StoppingRule& rule, Stream& stream);

/// n1 copies of the unique best agent. Refuses (NotApplicableError listing the
/// tie) when the best agent is not unique; the group's performance equals the
/// single agent's for every n1.
struct CloneGroup {
  int agent_index = -1;
  int copies = 0;
  GroupOutcome outcome;
};

CloneGroup best_clone_group(const Landscape& landscape, const AgentSet& agents, int n1,
                            const SchedulerPolicy& policy = {});

// Exact E[N1] for the rule under the spec's distribution, by
// inclusion-exclusion over the target set. Uniform mu over n agents with a
// k-element target gives n * H_k.
Rat expected_stopping_time(const SamplingSpec& spec, const StoppingRule& rule);

/// Monte Carlo check of the probabilistic theorem: random groups drawn until
/// the stopping rule fires versus clones of the best agent.
struct HpTrial {
  std::int64_t n1 = 0;
  std::int64_t faithful_pool = 0;  // second-event pool size (faithful mode only)
  int dedup_size = 0;
  bool contains_best = false;
  bool truncated = false;  // stopping rule had not fired at the draw cap
  Rat random_ev;
  Rat best_ev;
  bool solves_all = false;
  bool unanimous = false;  // every start's relay ended at a common fixed point
};

struct HpExperimentReport {
  std::vector<HpTrial> trials;
  Rat outperform_fraction;  // random group strictly better
  Rat solve_all_fraction;
  double mean_n1 = 0;
  Rat oracle_n1;  // exact E[N1] for the rule
  bool certificate;  // stopping rule fired in every trial, so the outcome is
                     // implied by the corollaries independent of the sampling
};

// Requires the full assumption set (NotApplicableError otherwise).
// `faithful` reproduces the two-event construction: a second independent
// stream is drawn until it holds n1 copies of the best agent.
HpExperimentReport hp_experiment(const Landscape& landscape, const AgentSet& agents,
                                 const SamplingSpec& spec, const StoppingRule& rule,
                                 long trials, const SchedulerPolicy& policy = {},
                                 ExecMode mode = ExecMode::Parallel, bool faithful = false);

}  // namespace hpv
