#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cpbs/netlist.hpp"

namespace cpbs {

enum class Direction : std::uint8_t { L2R, R2L };
std::string direction_name(Direction d);

enum class VarKind : std::uint8_t { AnyWord, Letter, NonEmpty };

using Bindings = std::map<std::string, Word>;

// One equation, stored as a pair of netlist patterns. In patterns every gate
// letter is a parameter name; a gate's label matches the concatenation of its
// parameters' bindings.
struct Rule {
  std::string id;    // AX1..AX17, DER18..DER24, APPC1, APPC2, APPE25..APPE38, STRUCT_*
  std::string name;  // short descriptive name
  std::string lhs_text;
  std::string rhs_text;
  std::map<std::string, VarKind> vars;
  bool structural = false;
  Netlist lhs;
  Netlist rhs;

  bool allows(Direction d) const;
  const Netlist& from(Direction d) const { return d == Direction::L2R ? lhs : rhs; }
  const Netlist& to(Direction d) const { return d == Direction::L2R ? rhs : lhs; }
};

Rule make_rule(std::string id, std::string name, std::string lhs, std::string rhs,
               std::map<std::string, VarKind> kinds = {});

const std::vector<Rule>& all_rules();
const Rule& rule(const std::string& id);
std::vector<std::string> rule_ids(const std::string& prefix);

struct RuleInstance {
  std::string rule;
  Direction dir = Direction::L2R;
  std::vector<int> node_map;          // pattern node -> host node
  std::vector<Endpoint> wire_source;  // node-free patterns: host source per pattern input
  std::vector<int> wire_loop;         // -1, or host loop index used as that wire
  std::vector<int> loop_map;          // pattern loops -> host loop index
  Bindings bindings;
};

std::vector<RuleInstance> find_matches(const Netlist& n, const Rule& r, Direction d);
std::vector<RuleInstance> find_matches(const Netlist& n, const std::string& rule_id, Direction d);
Netlist apply(const Netlist& n, const RuleInstance& inst, const Rule& r);
Netlist apply(const Netlist& n, const RuleInstance& inst);
std::string site_hash(const RuleInstance& inst);

// Host node id -> id in apply()'s result, -1 for nodes the rewrite consumed.
// Nodes of the inserted side follow the survivors in pattern order.
std::vector<int> surviving_node_ids(const Netlist& host, const RuleInstance& inst);

Netlist instantiate(const Netlist& pattern, const Bindings& b);

// Compares both sides under edge-case and seeded random parameter bindings.
bool check_soundness(const Rule& r, int random_instances = 5, std::uint64_t seed = 0);
bool check_soundness(const std::string& rule_id);

struct ProofStep {
  std::string rule;
  Direction dir = Direction::L2R;
  std::string site;
};

struct ProofTrace {
  std::vector<ProofStep> steps;
  void record(const RuleInstance& inst);
  std::string text() const;
};

// Rewrites the target's left side into its right side along the recorded chain.
ProofTrace replay_derivation(const std::string& target);
std::vector<std::string> derivable_rules();

}  // namespace cpbs
