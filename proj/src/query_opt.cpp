#include "cpbs/query_opt.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "cpbs/errors.hpp"
#include "cpbs/netlist.hpp"
#include "cpbs/normal_form.hpp"

namespace cpbs {

std::string QueryProfile::tsv() const {
  std::ostringstream os;
  for (const auto& e : entries) os << e.oracle << '\t' << e.count << '\t' << e.lower_bound << '\n';
  return os.str();
}

std::map<std::string, std::size_t> query_lower_bounds(const SemanticsTable& t) {
  std::map<std::string, std::size_t> occ;
  for (const auto& r : t.rows) {
    for (const auto& u : r.word) ++occ[u];
  }
  for (auto& [u, n] : occ) n = (n + 1) / 2;
  return occ;
}

QueryProfile query_profile(const DiagramTerm& d) {
  auto bounds = query_lower_bounds(semantics_table(d));
  std::set<std::string> letters;
  for (const auto& [u, n] : bounds) letters.insert(u);
  for (const auto& u : letters_of(d)) letters.insert(u);
  QueryProfile p;
  for (const auto& u : letters) p.entries.push_back({u, count_queries(d, u), bounds.count(u) ? bounds.at(u) : 0});
  return p;
}

namespace {

bool coloured_gate(const Generator& g) { return g.kind == GenKind::GateV || g.kind == GenKind::GateH; }

// Lowest-label, lowest-id pair of coloured single-letter gates sharing a label.
std::optional<std::pair<int, int>> next_pair(const Netlist& n) {
  std::optional<std::pair<int, int>> best;
  std::string best_label;
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    if (!coloured_gate(n.nodes[i])) continue;
    for (std::size_t j = i + 1; j < n.nodes.size(); ++j) {
      if (!coloured_gate(n.nodes[j]) || n.nodes[j].label != n.nodes[i].label) continue;
      const std::string& label = n.nodes[i].label.front();
      if (!best || label < best_label) {
        best = {static_cast<int>(i), static_cast<int>(j)};
        best_label = label;
      }
      break;
    }
  }
  return best;
}

const char* merge_rule(GenKind upper, GenKind lower) {
  if (upper == GenKind::GateV) return lower == GenKind::GateV ? "DER23" : "DER21";
  return lower == GenKind::GateH ? "DER24" : "DER22";
}

}  // namespace

QueryOptimisation optimize_queries_traced(const DiagramTerm& d) {
  const SemanticsTable t = semantics_table(d);
  Netlist n = to_netlist(synthesize_nf(t).to_term());
  QueryOptimisation q;
  auto apply_first = [&](const std::string& id, Direction dir, auto pred) {
    for (const auto& m : find_matches(n, id, dir)) {
      if (!pred(m)) continue;
      n = apply(n, m);
      q.trace.record(m);
      return true;
    }
    return false;
  };
  auto any = [](const RuleInstance&) { return true; };
  while (apply_first("DER18", Direction::L2R, any) || apply_first("DER19", Direction::L2R, any)) {
  }
  while (auto p = next_pair(n)) {
    auto [a, b] = *p;
    const char* id = merge_rule(n.nodes[a].kind, n.nodes[b].kind);
    bool ok = apply_first(id, Direction::L2R,
                          [&](const RuleInstance& m) { return m.node_map[0] == a && m.node_map[1] == b; });
    if (!ok) throw InternalError(std::string(id) + " did not apply to an equal-label pair");
  }
  q.result = netlist_to_term(n);
  if (!tables_equal(semantics_table(q.result), t)) throw InternalError("query optimisation changed the semantics");
  return q;
}

DiagramTerm optimize_queries(const DiagramTerm& d) { return optimize_queries_traced(d).result; }

bool is_query_optimal(const DiagramTerm& d) {
  for (const auto& e : query_profile(d).entries) {
    if (e.count != e.lower_bound) return false;
  }
  return true;
}

}  // namespace cpbs
