#include "hpv/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace hpv {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

Rat parse_value(const std::string& token, int line_no, const char* what) {
  auto v = parse_rational(token);
  if (!v)
    throw ValidationError("instance line " + std::to_string(line_no) + ": cannot parse " +
                          what + " '" + token + "' as a rational");
  return *v;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::vector<std::string> agent_ids;
  std::vector<std::string> state_labels;
  std::vector<Rat> values;
  std::vector<std::vector<std::string>> agent_targets;  // per agent, per state
  std::vector<Rat> start_dist;

  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    std::string comment;
    if (hash != std::string::npos) {
      comment = line.substr(hash + 1);
      line = line.substr(0, hash);
    }

    if (!comment.empty()) {
      auto ct = tokens(comment);
      if (!ct.empty() && ct[0] == "nu:") {
        if (!start_dist.empty())
          throw ValidationError("instance line " + std::to_string(line_no) +
                                ": duplicate nu directive");
        for (std::size_t i = 1; i < ct.size(); ++i)
          start_dist.push_back(parse_value(ct[i], line_no, "start probability"));
        if (start_dist.empty())
          throw ValidationError("instance line " + std::to_string(line_no) + ": empty nu directive");
      }
    }

    auto t = tokens(line);
    if (t.empty()) continue;

    if (!header_seen) {
      if (t.size() < 3)
        throw ValidationError("instance line " + std::to_string(line_no) +
                              ": header must name at least one agent (state, V, agents...)");
      header_seen = true;
      agent_ids.assign(t.begin() + 2, t.end());
      agent_targets.resize(agent_ids.size());
      continue;
    }

    if (t.size() != agent_ids.size() + 2)
      throw ValidationError("instance line " + std::to_string(line_no) + ": expected " +
                            std::to_string(agent_ids.size() + 2) + " columns, got " +
                            std::to_string(t.size()));
    state_labels.push_back(t[0]);
    values.push_back(parse_value(t[1], line_no, "value"));
    for (std::size_t a = 0; a < agent_ids.size(); ++a) agent_targets[a].push_back(t[2 + a]);
  }

  if (!header_seen) throw ValidationError("instance: empty table");
  if (state_labels.empty()) throw ValidationError("instance: header but no state rows");

  Landscape landscape = Landscape::validate(state_labels, values, start_dist);

  std::vector<Agent> agents;
  for (std::size_t a = 0; a < agent_ids.size(); ++a) {
    Agent agent;
    agent.id = agent_ids[a];
    for (std::size_t s = 0; s < agent_targets[a].size(); ++s) {
      auto target = landscape.index_of(agent_targets[a][s]);
      if (!target)
        throw ValidationError("agent '" + agent.id + "' maps '" + landscape.label(s) +
                              "' to unknown state '" + agent_targets[a][s] + "'");
      agent.map.push_back(*target);
    }
    agents.push_back(std::move(agent));
  }

  AgentSet agent_set = make_agent_set(landscape, std::move(agents));
  return Instance{std::move(landscape), std::move(agent_set)};
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open instance file '" + path + "'");
  return parse_instance(f);
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out << "x V";
  for (const auto& a : inst.agents.agents) out << " " << a.id;
  out << "\n";
  for (StateId s = 0; s < inst.landscape.size(); ++s) {
    out << inst.landscape.label(s) << " " << format_rational(inst.landscape.value(s));
    for (const auto& a : inst.agents.agents) out << " " << inst.landscape.label(a.apply(s));
    out << "\n";
  }
  out << "# nu:";
  for (StateId s = 0; s < inst.landscape.size(); ++s)
    out << " " << format_rational(inst.landscape.start_prob(s));
  out << "\n";
  return out.str();
}

}  // namespace hpv
