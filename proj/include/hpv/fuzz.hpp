#pragma once

#include "hpv/instance_io.hpp"
#include "hpv/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace hpv {

/// Which hypothesis the fuzzer removes while keeping all the others by
/// construction. Nothing is the control mode: all hypotheses hold and every
/// sampled instance is verified against the exhaustive oracle.
enum class DropMode {
  Nothing,
  Injectivity,
  UniqueBest,
  CloneIdempotenceAlternative,
  NoRepetitionSelection,
};

std::string_view drop_mode_name(DropMode mode);
std::optional<DropMode> parse_drop_mode(std::string_view name);

/// Exact evidence for the no-repetition selection variant: the drawn pool,
/// the subset that must appear, and the coverage probability that falls
/// short of one.
struct SelectionEvidence {
  std::vector<int> pool_counts;  // clones per agent in the fixed pool
  std::vector<int> target;       // agent indices that must all be selected
  int n1 = 0;
  Rat coverage_probability;
};

struct FuzzCounterexample {
  Instance instance;
  std::string failing_claim;
  long found_at = 0;  // instance index within the budget
  std::optional<SelectionEvidence> selection;
};

struct FuzzReport {
  DropMode dropped = DropMode::Nothing;
  long tried = 0;
  std::optional<FuzzCounterexample> found;
  std::uint64_t seed = 0;
  long control_verified = 0;  // control mode: instances that passed the oracle
};

/// Samples small instances (|X| <= 5, 2-4 agents) satisfying every hypothesis
/// except the dropped one, and reports the first on which the theorem's
/// conclusion fails the way the counterexamples predict. Control mode instead
/// verifies the conclusion on every instance and reports exhaustion.
FuzzReport fuzz_counterexample(DropMode drop, long budget, std::uint64_t seed);

// Re-checks a found counterexample from scratch: the non-dropped hypotheses
// hold and the claimed failure is real.
bool revalidate_counterexample(const FuzzReport& report);

/// Alternative clone-composition rules explored when idempotence is dropped:
/// re-application may keep improving.
StateId iterate_to_fixpoint(const Landscape& landscape, const Agent& agent, StateId start);
// Best state seen along the first `copies` applications (work split among
// clones, results pooled).
StateId parallel_clones_best(const Landscape& landscape, const Agent& agent, StateId start,
                             int copies);

/// Exact probability that a uniformly chosen n1-subset of a drawn clone pool
/// covers the whole target set (the no-repetition selection variant).
Rat subset_coverage_probability(const std::vector<int>& pool_counts,
                                const std::vector<int>& target, int n1);

}  // namespace hpv
