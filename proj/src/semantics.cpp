#include "cpbs/semantics.hpp"

#include <set>
#include <sstream>

#include "cpbs/errors.hpp"

namespace cpbs {

char pol_char(Pol c) { return c == Pol::Vert ? 'V' : 'H'; }

bool admits(WireType c, Pol p) {
  if (c == WireType::T) return true;
  return (c == WireType::V) == (p == Pol::Vert);
}

std::vector<Configuration> configurations(const ObjectType& a) {
  std::vector<Configuration> cs;
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (Pol c : {Pol::Vert, Pol::Horiz}) {
      if (admits(a[p], c)) cs.push_back({c, static_cast<int>(p)});
    }
  }
  return cs;
}

bool valid_configuration(const ObjectType& a, Configuration c) {
  return c.pos >= 0 && c.pos < static_cast<int>(a.size()) && admits(a[c.pos], c.pol);
}

int configuration_index(const ObjectType& a, Configuration c) {
  auto cs = configurations(a);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i] == c) return static_cast<int>(i);
  }
  return -1;
}

std::pair<int, Pol> route(GenKind k, int in_port, Pol c) {
  switch (k) {
    case GenKind::Pbs4:
    case GenKind::PbsTvVt:
    case GenKind::PbsVtTv:
    case GenKind::PbsHtHt:
    case GenKind::PbsThTh:
      // Vertical is reflected (same side), horizontal transmitted.
      return {c == Pol::Vert ? in_port : 1 - in_port, c};
    case GenKind::SplitVH:
      return {c == Pol::Vert ? 0 : 1, c};
    case GenKind::SplitHV:
      return {c == Pol::Vert ? 1 : 0, c};
    case GenKind::MergeVH:
    case GenKind::MergeHV:
      return {0, c};
    case GenKind::NegT:
    case GenKind::NegVH:
    case GenKind::NegHV:
      return {0, flip(c)};
    case GenKind::GateT:
    case GenKind::GateV:
    case GenKind::GateH:
      return {0, c};
    case GenKind::Id:
      return {0, c};
    case GenKind::Swap:
      return {1 - in_port, c};
  }
  throw InternalError("unroutable generator");
}

std::pair<Configuration, Word> evaluate(const Netlist& n, Configuration start) {
  if (!valid_configuration(n.in_type, start)) {
    throw InvalidConfiguration("configuration (" + std::string(1, pol_char(start.pol)) + "," +
                               std::to_string(start.pos) + ") not in [" + type_string(n.in_type) + "]");
  }
  SinkIndex si(n);
  std::size_t wires = n.in_type.size();
  for (const auto& g : n.nodes) wires += gen_out_type(g).size();
  const std::size_t bound = 2 * wires + 2;

  std::set<std::pair<Endpoint, Pol>> seen;
  Endpoint src{Endpoint::kBoundary, start.pos};
  Pol c = start.pol;
  Word w;
  for (std::size_t step = 0; step <= bound; ++step) {
    if (!seen.insert({src, c}).second) throw NonTermination("wire revisited with the same polarisation");
    Endpoint sink = si.sink_of(src);
    if (sink.is_boundary()) return {{c, sink.port}, w};
    const Generator& g = n.nodes[sink.node];
    if (!admits(gen_in_type(g)[sink.port], c)) throw InternalError("polarisation incompatible with wire colour");
    auto [port, nc] = route(g.kind, sink.port, c);
    if (is_gate(g.kind)) w.insert(w.end(), g.label.begin(), g.label.end());
    src = {sink.node, port};
    c = nc;
  }
  throw NonTermination("step bound exceeded");
}

SemanticsTable semantics_table(const Netlist& n) {
  SemanticsTable t;
  t.in_type = n.in_type;
  t.out_type = n.out_type;
  for (Configuration c : configurations(n.in_type)) {
    auto [out, w] = evaluate(n, c);
    t.rows.push_back({c, out, w});
  }
  if (!is_bijective(t)) throw InternalError("configuration map is not a bijection");
  return t;
}

SemanticsTable semantics_table(const DiagramTerm& d) { return semantics_table(to_netlist(d)); }

bool tables_equal(const SemanticsTable& a, const SemanticsTable& b) { return a == b; }

bool is_bijective(const SemanticsTable& t) {
  auto outs = configurations(t.out_type);
  auto ins = configurations(t.in_type);
  if (outs.size() != ins.size() || t.rows.size() != ins.size()) return false;
  std::set<Configuration> hit;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].in != ins[i]) return false;
    if (!valid_configuration(t.out_type, t.rows[i].out)) return false;
    hit.insert(t.rows[i].out);
  }
  return hit.size() == outs.size();
}

bool gate_free(const SemanticsTable& t) {
  for (const auto& r : t.rows) {
    if (!r.word.empty()) return false;
  }
  return true;
}

std::string table_tsv(const SemanticsTable& t) {
  std::ostringstream os;
  for (const auto& r : t.rows) {
    os << pol_char(r.in.pol) << '\t' << r.in.pos << '\t' << pol_char(r.out.pol) << '\t' << r.out.pos << '\t'
       << (r.word.empty() ? std::string("1") : word_text(r.word)) << '\n';
  }
  return os.str();
}

}  // namespace cpbs
