#pragma once

#include "hpv/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpv {

/// Index into Landscape::labels(); agents and traces use indices throughout.
using StateId = int;

/// A finite problem: state labels, a value function into [0,1] with a unique
/// optimum of value 1, and a full-support start distribution. Immutable after
/// validation; safe to share across threads.
class Landscape {
 public:
  // Validates the table invariants: values in [0,1], exactly one state of
  // value 1, start distribution positive and summing to 1 (uniform when
  // empty). Throws ValidationError otherwise.
  static Landscape validate(std::vector<std::string> labels, std::vector<Rat> values,
                            std::vector<Rat> start_dist = {});

  int size() const { return static_cast<int>(values_.size()); }
  StateId optimum() const { return optimum_; }
  bool injective() const { return injective_; }

  const Rat& value(StateId s) const { return values_[s]; }
  const Rat& start_prob(StateId s) const { return start_dist_[s]; }
  const std::string& label(StateId s) const { return labels_[s]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<StateId> index_of(std::string_view label) const;

  // States with strictly larger value, in ascending value order.
  std::vector<StateId> improving_states(StateId s) const;

 private:
  Landscape() = default;
  std::vector<std::string> labels_;
  std::vector<Rat> values_;
  std::vector<Rat> start_dist_;
  StateId optimum_ = -1;
  bool injective_ = false;
};

/// A problem solver: a total self-map on the landscape's states.
struct Agent {
  std::string id;
  std::vector<StateId> map;  // map[x] is where the agent sends state x

  StateId apply(StateId s) const { return map[s]; }
  bool operator==(const Agent&) const = default;
};

/// An ordered pool of agents with pairwise-distinct ids. Clone multiplicity is
/// a sampling concern, never represented here.
struct AgentSet {
  std::vector<Agent> agents;

  int size() const { return static_cast<int>(agents.size()); }
  const Agent& operator[](int i) const { return agents[i]; }
  std::optional<int> index_of(std::string_view id) const;
  std::vector<std::string> ids() const;
};

// Checks non-emptiness, id uniqueness, and map totality against `landscape`.
AgentSet make_agent_set(const Landscape& landscape, std::vector<Agent> agents);

// Eq.-style expected performance: sum over states of V(agent(x)) * nu(x).
Rat expected_performance(const Landscape& landscape, const Agent& agent);

}  // namespace hpv
