#pragma once

#include "hpv/landscape.hpp"

#include <iosfwd>
#include <string>

namespace hpv {

struct Instance {
  Landscape landscape;
  AgentSet agents;
};

/// Parses the plain-text instance table. Layout mirrors the problem tables:
/// a header row naming the agent ids, then one row per state
/// (`state  V  phi_1 ... phi_k`), plus an optional `# nu:` comment line with
/// the start distribution (uniform when absent). Values parse as `p/q` or
/// decimals. Throws ValidationError with a line reference on bad input.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance load_instance_file(const std::string& path);

// Canonical re-serialization of an instance (round-trips via parse).
std::string format_instance(const Instance& inst);

}  // namespace hpv
