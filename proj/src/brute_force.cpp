#include <algorithm>
#include <map>

#include "cpbs/errors.hpp"
#include "cpbs/pgt.hpp"
#include "cpbs/query_opt.hpp"

namespace cpbs {

namespace {

constexpr Endpoint kOpen{-2, 0};

struct State {
  std::vector<Generator> nodes;
  std::vector<std::vector<Endpoint>> out_dst;  // per node output port
  std::vector<std::vector<bool>> in_fed;       // per node input port
  std::vector<Endpoint> input_dst;             // per boundary input
  std::vector<bool> output_fed;
  std::size_t pbs = 0;
  std::size_t negs = 0;
  std::map<std::string, std::size_t> letters;
};

struct Search {
  explicit Search(const SemanticsTable& table) : t(table) {}

  const SemanticsTable& t;
  std::size_t pbs_limit = 0;
  std::size_t neg_limit = 0;
  std::size_t node_limit = 0;
  std::size_t explored = 0;
  std::map<std::string, std::size_t> bounds;
  std::optional<Netlist> found;

  Endpoint& dst(State& s, Endpoint src) const {
    return src.is_boundary() ? s.input_dst[src.port] : s.out_dst[src.node][src.port];
  }

  WireType src_type(const State& s, Endpoint src) const {
    return src.is_boundary() ? t.in_type[src.port] : gen_out_type(s.nodes[src.node])[src.port];
  }

  void connect(State& s, Endpoint src, Endpoint sink) const {
    dst(s, src) = sink;
    if (sink.is_boundary()) {
      s.output_fed[sink.port] = true;
    } else {
      s.in_fed[sink.node][sink.port] = true;
    }
  }

  // Everything visited; pair the leftover ports by colour.
  bool complete(const State& s) {
    std::map<WireType, std::vector<Endpoint>> srcs, sinks;
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      auto out = gen_out_type(s.nodes[v]);
      for (std::size_t q = 0; q < out.size(); ++q) {
        if (s.out_dst[v][q] == kOpen) srcs[out[q]].push_back({static_cast<int>(v), static_cast<int>(q)});
      }
      auto in = gen_in_type(s.nodes[v]);
      for (std::size_t q = 0; q < in.size(); ++q) {
        if (!s.in_fed[v][q]) sinks[in[q]].push_back({static_cast<int>(v), static_cast<int>(q)});
      }
    }
    for (WireType c : {WireType::T, WireType::V, WireType::H}) {
      if (srcs[c].size() != sinks[c].size()) return false;
    }
    Netlist n;
    n.in_type = t.in_type;
    n.out_type = t.out_type;
    for (const auto& g : s.nodes) n.add_node(g);
    n.out_src.assign(t.out_type.size(), Endpoint{});
    auto link = [&](Endpoint src, Endpoint sink) { n.connect(src, sink); };
    for (std::size_t p = 0; p < s.input_dst.size(); ++p) link({Endpoint::kBoundary, static_cast<int>(p)}, s.input_dst[p]);
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      for (std::size_t q = 0; q < s.out_dst[v].size(); ++q) {
        if (s.out_dst[v][q] != kOpen) link({static_cast<int>(v), static_cast<int>(q)}, s.out_dst[v][q]);
      }
    }
    for (WireType c : {WireType::T, WireType::V, WireType::H}) {
      for (std::size_t i = 0; i < srcs[c].size(); ++i) link(srcs[c][i], sinks[c][i]);
    }
    try {
      validate(n);
      if (!tables_equal(semantics_table(n), t)) return false;
    } catch (const CpbsError&) {
      return false;
    } catch (const InternalError&) {
      return false;
    }
    found = n;
    return true;
  }

  bool start_config(const State& s, std::size_t ci) {
    if (ci == t.rows.size()) return complete(s);
    Configuration c = t.rows[ci].in;
    State copy = s;
    return advance(copy, ci, {Endpoint::kBoundary, c.pos}, c.pol, 0, {});
  }

  bool advance(State& s, std::size_t ci, Endpoint src, Pol pol, std::size_t wpos,
               std::vector<std::pair<Endpoint, Pol>> visited) {
    if (++explored > node_limit) throw BudgetExceeded("brute-force search budget exhausted");
    const Row& row = t.rows[ci];
    for (;;) {
      if (std::find(visited.begin(), visited.end(), std::make_pair(src, pol)) != visited.end()) return false;
      visited.push_back({src, pol});
      Endpoint sink = dst(s, src);
      if (sink == kOpen) return branch(s, ci, src, pol, wpos, visited);
      if (sink.is_boundary()) {
        if (sink.port != row.out.pos || pol != row.out.pol || wpos != row.word.size()) return false;
        return start_config(s, ci + 1);
      }
      const Generator& g = s.nodes[sink.node];
      if (is_gate(g.kind)) {
        if (wpos + g.label.size() > row.word.size() ||
            !std::equal(g.label.begin(), g.label.end(), row.word.begin() + static_cast<long>(wpos))) {
          return false;
        }
        wpos += g.label.size();
      }
      auto [port, np] = route(g.kind, sink.port, pol);
      src = {sink.node, port};
      pol = np;
    }
  }

  bool adjacency_ok(const State& s, Endpoint src, GenKind next) const {
    if (src.is_boundary()) return true;
    GenKind prev = s.nodes[src.node].kind;
    if (is_neg(prev) && (is_neg(next) || is_gate(next))) return false;
    if (is_gate(prev) && is_gate(next)) return false;
    return true;
  }

  bool try_sink(const State& s, std::size_t ci, Endpoint src, Pol pol, std::size_t wpos,
                const std::vector<std::pair<Endpoint, Pol>>& visited, Endpoint sink) {
    State n = s;
    connect(n, src, sink);
    // Continue from src again so advance() walks into the new connection.
    auto v = visited;
    v.pop_back();
    return advance(n, ci, src, pol, wpos, v);
  }

  bool branch(State& s, std::size_t ci, Endpoint src, Pol pol, std::size_t wpos,
              const std::vector<std::pair<Endpoint, Pol>>& visited) {
    const Row& row = t.rows[ci];
    const WireType w = src_type(s, src);
    // To the expected output.
    if (!s.output_fed[row.out.pos] && t.out_type[row.out.pos] == w && pol == row.out.pol && wpos == row.word.size()) {
      if (try_sink(s, ci, src, pol, wpos, visited, {Endpoint::kBoundary, row.out.pos})) return true;
    }
    // Into an existing node.
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      auto in = gen_in_type(s.nodes[v]);
      if (!adjacency_ok(s, src, s.nodes[v].kind)) continue;
      for (std::size_t q = 0; q < in.size(); ++q) {
        if (s.in_fed[v][q] || in[q] != w) continue;
        if (try_sink(s, ci, src, pol, wpos, visited, {static_cast<int>(v), static_cast<int>(q)})) return true;
      }
    }
    // Into a new node.
    for (const auto& [g, q] : new_nodes(w, row.word, wpos, s)) {
      if (!adjacency_ok(s, src, g.kind)) continue;
      State n = s;
      int id = static_cast<int>(n.nodes.size());
      n.nodes.push_back(g);
      n.out_dst.emplace_back(gen_out_type(g).size(), kOpen);
      n.in_fed.emplace_back(gen_in_type(g).size(), false);
      n.pbs += is_pbs(g.kind);
      n.negs += is_neg(g.kind);
      for (const auto& u : g.label) ++n.letters[u];
      if (try_sink(n, ci, src, pol, wpos, visited, {id, q})) return true;
    }
    return false;
  }

  std::vector<std::pair<Generator, int>> new_nodes(WireType w, const Word& word, std::size_t wpos, const State& s) const {
    std::vector<std::pair<Generator, int>> out;
    // Negations and gates first; they cost no PBS.
    if (s.negs < neg_limit) {
      out.push_back({make_gen(w == WireType::T ? GenKind::NegT : w == WireType::V ? GenKind::NegVH : GenKind::NegHV), 0});
    }
    for (std::size_t len = 1; wpos + len <= word.size(); ++len) {
      Word label(word.begin() + static_cast<long>(wpos), word.begin() + static_cast<long>(wpos + len));
      std::map<std::string, std::size_t> use = s.letters;
      bool ok = true;
      for (const auto& u : label) {
        if (++use[u] > (bounds.count(u) ? bounds.at(u) : 0)) ok = false;
      }
      if (ok) out.push_back({make_gate(w, label), 0});
    }
    if (s.pbs < pbs_limit) {
      switch (w) {
        case WireType::T:
          for (GenKind k : {GenKind::SplitVH, GenKind::Pbs4, GenKind::PbsTvVt, GenKind::PbsThTh}) out.push_back({make_gen(k), 0});
          break;
        case WireType::V:
          out.push_back({make_gen(GenKind::MergeVH), 0});
          out.push_back({make_gen(GenKind::PbsTvVt), 1});
          break;
        case WireType::H:
          out.push_back({make_gen(GenKind::MergeVH), 1});
          out.push_back({make_gen(GenKind::PbsThTh), 1});
          break;
      }
    }
    return out;
  }
};

}  // namespace

// Port-relabelled duplicates (split[HV], merge[HV], pbs[VT.TV], pbs[HT.HT])
// are left out of the generator set; any wiring through them is reachable
// through their twins with the ports swapped.
BruteForceResult brute_force_min_pbs(const SemanticsTable& t, const BruteForceOptions& opt) {
  if (!is_bijective(t)) throw NotBijective("configuration map is not a bijection");
  Search s(t);
  s.node_limit = opt.node_limit;
  s.bounds = query_lower_bounds(t);
  std::size_t gates = 0;
  for (const auto& [u, b] : s.bounds) gates += b;
  State init;
  init.input_dst.assign(t.in_type.size(), kOpen);
  init.output_fed.assign(t.out_type.size(), false);
  for (std::size_t limit = 0; limit <= opt.max_pbs; ++limit) {
    s.pbs_limit = limit;
    // Negations never follow negations, so at most one sits on each wire
    // leaving an input, a splitter port or a gate.
    s.neg_limit = opt.max_negs.value_or(t.in_type.size() + 2 * limit + gates);
    if (s.start_config(init, 0)) return {netlist_pbs(*s.found), *s.found, s.explored};
  }
  throw NotFound("no diagram with at most " + std::to_string(opt.max_pbs) + " PBS");
}

std::size_t brute_force_min_pbs(const SemanticsTable& t, std::size_t max_pbs) {
  BruteForceOptions opt;
  opt.max_pbs = max_pbs;
  return brute_force_min_pbs(t, opt).pbs;
}

}  // namespace cpbs
