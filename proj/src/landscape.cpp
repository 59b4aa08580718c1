#include "hpv/landscape.hpp"

#include <algorithm>
#include <set>

namespace hpv {

Landscape Landscape::validate(std::vector<std::string> labels, std::vector<Rat> values,
                              std::vector<Rat> start_dist) {
  if (labels.empty()) throw ValidationError("landscape: no states");
  if (labels.size() != values.size())
    throw ValidationError("landscape: state/value count mismatch");

  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw ValidationError("landscape: empty state label");
    if (!seen.insert(l).second) throw ValidationError("landscape: duplicate state label '" + l + "'");
  }

  StateId optimum = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > 1)
      throw ValidationError("landscape: value of '" + labels[i] + "' outside [0,1]");
    if (values[i] == 1) {
      if (optimum != -1)
        throw ValidationError("landscape: more than one state has value 1 ('" +
                              labels[optimum] + "' and '" + labels[i] + "')");
      optimum = static_cast<StateId>(i);
    }
  }
  if (optimum == -1) throw ValidationError("landscape: no state has value 1");

  if (start_dist.empty()) {
    start_dist.assign(values.size(), Rat(1, static_cast<long>(values.size())));
  }
  if (start_dist.size() != values.size())
    throw ValidationError("landscape: start distribution length mismatch");
  Rat total = 0;
  for (std::size_t i = 0; i < start_dist.size(); ++i) {
    if (start_dist[i] <= 0)
      throw ValidationError("landscape: start probability of '" + labels[i] +
                            "' is not strictly positive");
    total += start_dist[i];
  }
  if (total != 1) throw ValidationError("landscape: start distribution does not sum to 1");

  std::vector<Rat> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

  Landscape l;
  l.labels_ = std::move(labels);
  l.values_ = std::move(values);
  l.start_dist_ = std::move(start_dist);
  l.optimum_ = optimum;
  l.injective_ = injective;
  return l;
}

std::optional<StateId> Landscape::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<StateId>(i);
  return std::nullopt;
}

std::vector<StateId> Landscape::improving_states(StateId s) const {
  std::vector<StateId> up;
  for (StateId t = 0; t < size(); ++t)
    if (values_[t] > values_[s]) up.push_back(t);
  std::sort(up.begin(), up.end(),
            [this](StateId a, StateId b) { return values_[a] < values_[b]; });
  return up;
}

std::optional<int> AgentSet::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<std::string> AgentSet::ids() const {
  std::vector<std::string> out;
  out.reserve(agents.size());
  for (const auto& a : agents) out.push_back(a.id);
  return out;
}

AgentSet make_agent_set(const Landscape& landscape, std::vector<Agent> agents) {
  if (agents.empty()) throw ValidationError("agent set: empty");
  std::set<std::string> ids;
  for (const auto& a : agents) {
    if (a.id.empty()) throw ValidationError("agent set: empty agent id");
    if (!ids.insert(a.id).second)
      throw ValidationError("agent set: duplicate agent id '" + a.id + "'");
    if (static_cast<int>(a.map.size()) != landscape.size())
      throw ValidationError("agent '" + a.id + "': map is not total over the state set");
    for (StateId t : a.map)
      if (t < 0 || t >= landscape.size())
        throw ValidationError("agent '" + a.id + "': maps to a state outside the landscape");
  }
  return AgentSet{std::move(agents)};
}

Rat expected_performance(const Landscape& landscape, const Agent& agent) {
  if (static_cast<int>(agent.map.size()) != landscape.size())
    throw ValidationError("agent '" + agent.id + "': map is not total over the state set");
  Rat ev = 0;
  for (StateId x = 0; x < landscape.size(); ++x) {
    StateId y = agent.apply(x);
    if (y < 0 || y >= landscape.size())
      throw ValidationError("agent '" + agent.id + "': maps to a state outside the landscape");
    ev += landscape.value(y) * landscape.start_prob(x);
  }
  return ev;
}

}  // namespace hpv
