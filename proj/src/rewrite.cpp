#include "cpbs/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "cpbs/errors.hpp"
#include "cpbs/semantics.hpp"
#include "cpbs/text.hpp"

namespace cpbs {

std::string direction_name(Direction d) { return d == Direction::L2R ? "L2R" : "R2L"; }

namespace {

void collect_vars(const Netlist& n, std::set<std::string>& out) {
  for (const auto& g : n.nodes) {
    if (is_gate(g.kind)) out.insert(g.label.begin(), g.label.end());
  }
}

bool pattern_is_empty(const Netlist& n) { return n.nodes.empty() && n.in_type.empty() && n.loops.empty(); }

}  // namespace

bool Rule::allows(Direction d) const {
  if (structural) return true;
  if (pattern_is_empty(from(d))) return false;
  std::set<std::string> have, need;
  collect_vars(from(d), have);
  collect_vars(to(d), need);
  return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

Rule make_rule(std::string id, std::string name, std::string lhs, std::string rhs,
               std::map<std::string, VarKind> kinds) {
  Rule r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.lhs_text = std::move(lhs);
  r.rhs_text = std::move(rhs);
  r.lhs = to_netlist(parse(r.lhs_text));
  r.rhs = to_netlist(parse(r.rhs_text));
  // Ill-typed rules are representable so that check_soundness can reject them.
  std::set<std::string> vs;
  collect_vars(r.lhs, vs);
  collect_vars(r.rhs, vs);
  for (const auto& v : vs) r.vars[v] = VarKind::AnyWord;
  for (const auto& [v, k] : kinds) r.vars[v] = k;
  return r;
}

namespace {

std::vector<Rule> build_rules() {
  const auto L = VarKind::Letter;
  const auto NE = VarKind::NonEmpty;
  std::vector<Rule> rs;
  auto add = [&](const char* id, const char* name, const char* lhs, const char* rhs,
                 std::map<std::string, VarKind> kinds = {}) { rs.push_back(make_rule(id, name, lhs, rhs, kinds)); };

  add("AX1", "red identity gate", "gate[1,V]", "id[V]");
  add("AX2", "red gate fusion", "gate[U,V] ; gate[W,V]", "gate[U.W,V]");
  add("AX3", "red gate through negation", "gate[U,V] ; neg[VH]", "neg[VH] ; gate[U,H]");
  add("AX4", "negation through splitter", "neg ; split", "split[HV] ; (neg[HV] | neg[VH])");
  add("AX5", "gate through splitter", "gate[U] ; split", "split ; (gate[U,V] | gate[U,H])");
  add("AX6", "empty red loop with gate", "tr[V](gate[U,V])", "empty");
  add("AX7", "red double negation", "neg[VH] ; neg[HV]", "id[V]");
  add("AX8", "blue double negation", "neg[HV] ; neg[VH]", "id[H]");
  add("AX9", "split then merge", "split ; merge", "id[T]");
  add("AX10", "merge then split", "merge ; split", "id[V] | id[H]");
  add("AX11", "crossed splitter", "split[HV]", "split ; swap[V,H]");
  add("AX12", "crossed merger", "merge[HV]", "swap[H,V] ; merge");
  add("AX13", "four-leg splitter decomposition", "pbs",
      "(split | split) ; (id[V] | swap[H,V] | id[H]) ; (id[V] | id[V] | swap[H,H]) ; "
      "(id[V] | swap[V,H] | id[H]) ; (merge | merge)");
  add("AX14", "T.V/V.T splitter decomposition", "pbs[TV.VT]",
      "(split | id[V]) ; (id[V] | swap[H,V]) ; (id[V] | merge)");
  add("AX15", "V.T/T.V splitter decomposition", "pbs[VT.TV]",
      "(id[V] | split) ; (id[V] | swap[V,H]) ; (merge | id[V])");
  add("AX16", "T.H/T.H splitter decomposition", "pbs[TH.TH]",
      "(split | id[H]) ; (id[V] | swap[H,H]) ; (merge | id[H])");
  add("AX17", "H.T/H.T splitter decomposition", "pbs[HT.HT]",
      "(id[H] | split) ; (swap[H,V] | id[H]) ; (id[V] | swap[H,H]) ; (swap[V,H] | id[H]) ; (id[H] | merge)");

  add("DER18", "red gate splitting", "gate[U.W,V]", "gate[U,V] ; gate[W,V]", {{"U", L}, {"W", NE}});
  add("DER19", "blue gate splitting", "gate[U.W,H]", "gate[U,H] ; gate[W,H]", {{"U", L}, {"W", NE}});
  add("DER20", "black gate splitting", "gate[U.W]", "gate[U] ; gate[W]", {{"U", L}, {"W", NE}});
  add("DER21", "merge red over blue gates", "gate[U,V] | gate[U,H]", "merge ; gate[U] ; split");
  add("DER22", "merge blue over red gates", "gate[U,H] | gate[U,V]", "merge[HV] ; gate[U] ; split[HV]");
  add("DER23", "merge red over red gates", "gate[U,V] | gate[U,V]",
      "(id[V] | neg[VH]) ; merge ; gate[U] ; split ; (id[V] | neg[HV])");
  add("DER24", "merge blue over blue gates", "gate[U,H] | gate[U,H]",
      "(neg[HV] | id[H]) ; merge ; gate[U] ; split ; (neg[VH] | id[H])");

  add("APPC1", "empty blue loop with gate", "tr[H](gate[U,H])", "empty");
  add("APPC2", "blue gate through negation", "gate[U,H] ; neg[HV]", "neg[HV] ; gate[U,V]");

  add("APPE25", "black double negation", "neg ; neg", "id[T]");
  add("APPE26", "empty red loop", "tr[V](id[V])", "empty");
  add("APPE27", "empty blue loop", "tr[H](id[H])", "empty");
  add("APPE28", "empty black loop", "tr[T](id[T])", "empty");
  add("APPE29", "empty black loop with negation", "tr[T](neg)", "empty");
  add("APPE30", "negation through crossed splitter", "neg ; split[HV]", "split ; (neg[VH] | neg[HV])");
  add("APPE31", "merger then negation", "merge ; neg", "(neg[VH] | neg[HV]) ; merge[HV]");
  add("APPE32", "crossed merger then negation", "merge[HV] ; neg", "(neg[HV] | neg[VH]) ; merge");
  add("APPE33", "splitter with red-leg negation", "split ; (neg[VH] | id[H])",
      "neg ; split[HV] ; (id[H] | neg[VH])");
  add("APPE34", "crossed splitter with red-leg negation", "split[HV] ; (id[H] | neg[VH])",
      "neg ; split ; (neg[VH] | id[H])");
  add("APPE35", "merger with negated lower input", "(id[V] | neg[VH]) ; merge",
      "(neg[VH] | id[V]) ; merge[HV] ; neg");
  add("APPE36", "crossed merger with negated upper input", "(neg[VH] | id[V]) ; merge[HV]",
      "(id[V] | neg[VH]) ; merge ; neg");
  add("APPE37", "crossed T.H splitter", "(split | id[H]) ; (id[V] | swap[H,H]) ; (merge | id[H]) ; swap[T,H]",
      "pbs[TH.TH] ; swap[T,H]");
  add("APPE38", "merge then crossed split", "merge ; split[HV]", "swap[V,H]");

  for (const char* id : {"STRUCT_YANK", "STRUCT_DINAT", "STRUCT_SWAPNAT"}) {
    Rule r = make_rule(id, "structural congruence", "id[T]", "id[T]");
    r.structural = true;
    rs.push_back(r);
  }
  return rs;
}

}  // namespace

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = build_rules();
  return rules;
}

const Rule& rule(const std::string& id) {
  for (const auto& r : all_rules()) {
    if (r.id == id) return r;
  }
  throw NotFound("unknown rule " + id);
}

std::vector<std::string> rule_ids(const std::string& prefix) {
  std::vector<std::string> ids;
  for (const auto& r : all_rules()) {
    if (r.id.rfind(prefix, 0) == 0) ids.push_back(r.id);
  }
  return ids;
}

namespace {

bool kind_ok(VarKind k, const Word& w) {
  switch (k) {
    case VarKind::Letter:
      return w.size() == 1;
    case VarKind::NonEmpty:
      return !w.empty();
    default:
      return true;
  }
}

// All extensions of `b` under which the parameter list `vars` spells `w`.
void match_label(const Rule& r, const Word& vars, std::size_t vi, const Word& w, std::size_t wi, Bindings& b,
                 std::vector<Bindings>& out) {
  if (vi == vars.size()) {
    if (wi == w.size()) out.push_back(b);
    return;
  }
  const std::string& v = vars[vi];
  auto it = b.find(v);
  if (it != b.end()) {
    const Word& bound = it->second;
    if (w.size() - wi < bound.size() || !std::equal(bound.begin(), bound.end(), w.begin() + wi)) return;
    match_label(r, vars, vi + 1, w, wi + bound.size(), b, out);
    return;
  }
  VarKind k = r.vars.at(v);
  for (std::size_t len = 0; wi + len <= w.size(); ++len) {
    Word piece(w.begin() + wi, w.begin() + wi + len);
    if (!kind_ok(k, piece)) continue;
    b[v] = piece;
    match_label(r, vars, vi + 1, w, wi + len, b, out);
    b.erase(v);
  }
}

Word instantiate_label(const Word& vars, const Bindings& b) {
  Word w;
  for (const auto& v : vars) {
    auto it = b.find(v);
    if (it == b.end()) throw InternalError("unbound rule parameter " + v);
    w.insert(w.end(), it->second.begin(), it->second.end());
  }
  return w;
}

struct Matcher {
  const Netlist& host;
  const Netlist& pat;
  const Rule& rule;
  Direction dir;
  std::vector<RuleInstance> out;
  std::vector<int> map;
  std::vector<bool> used;

  Matcher(const Netlist& h, const Netlist& p, const Rule& r, Direction d)
      : host(h), pat(p), rule(r), dir(d), map(p.nodes.size(), -1), used(h.nodes.size(), false) {}

  bool wires_consistent(std::size_t k) const {
    // Every pattern wire between mapped nodes must exist in the host.
    for (std::size_t b = 0; b <= k; ++b) {
      for (std::size_t j = 0; j < pat.in_src[b].size(); ++j) {
        Endpoint s = pat.in_src[b][j];
        if (s.is_boundary()) continue;
        if (static_cast<std::size_t>(s.node) > k) continue;
        Endpoint hs = host.in_src[map[b]][j];
        if (hs != Endpoint{map[s.node], s.port}) return false;
      }
    }
    return true;
  }

  void search(std::size_t k, Bindings& b) {
    if (k == pat.nodes.size()) {
      RuleInstance inst;
      inst.rule = rule.id;
      inst.dir = dir;
      inst.node_map = map;
      inst.bindings = b;
      out.push_back(inst);
      return;
    }
    const Generator& pg = pat.nodes[k];
    for (std::size_t v = 0; v < host.nodes.size(); ++v) {
      if (used[v] || host.nodes[v].kind != pg.kind) continue;
      std::vector<Bindings> options;
      if (is_gate(pg.kind)) {
        Bindings tmp = b;
        match_label(rule, pg.label, 0, host.nodes[v].label, 0, tmp, options);
      } else {
        options.push_back(b);
      }
      if (options.empty()) continue;
      map[k] = static_cast<int>(v);
      used[v] = true;
      if (wires_consistent(k)) {
        for (auto& opt : options) search(k + 1, opt);
      }
      used[v] = false;
      map[k] = -1;
    }
  }
};

// Node-free patterns: each pattern input k is a through-wire to some output.
std::vector<int> through_targets(const Netlist& pat) {
  std::vector<int> tgt(pat.in_type.size(), -1);
  for (std::size_t j = 0; j < pat.out_src.size(); ++j) tgt[pat.out_src[j].port] = static_cast<int>(j);
  return tgt;
}

void match_nodeless(const Netlist& host, const Netlist& pat, const Rule& r, Direction d,
                    std::vector<RuleInstance>& out) {
  auto hw = wires_of(host);
  std::size_t m = pat.in_type.size();
  RuleInstance cur;
  cur.rule = r.id;
  cur.dir = d;
  cur.wire_source.assign(m, Endpoint{});
  cur.wire_loop.assign(m, -1);
  std::set<std::size_t> used_wires, used_loops;

  std::function<void(std::size_t)> pick_loops = [&](std::size_t li) {
    if (li == pat.loops.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t h = 0; h < host.loops.size(); ++h) {
      if (used_loops.count(h) || host.loops[h] != pat.loops[li]) continue;
      used_loops.insert(h);
      cur.loop_map.push_back(static_cast<int>(h));
      pick_loops(li + 1);
      cur.loop_map.pop_back();
      used_loops.erase(h);
    }
  };
  std::function<void(std::size_t)> pick_wires = [&](std::size_t k) {
    if (k == m) {
      pick_loops(0);
      return;
    }
    for (std::size_t w = 0; w < hw.size(); ++w) {
      if (used_wires.count(w) || hw[w].type != pat.in_type[k]) continue;
      used_wires.insert(w);
      cur.wire_source[k] = hw[w].source;
      cur.wire_loop[k] = -1;
      pick_wires(k + 1);
      used_wires.erase(w);
    }
    for (std::size_t h = 0; h < host.loops.size(); ++h) {
      if (used_loops.count(h) || host.loops[h] != pat.in_type[k]) continue;
      used_loops.insert(h);
      cur.wire_source[k] = Endpoint{};
      cur.wire_loop[k] = static_cast<int>(h);
      pick_wires(k + 1);
      used_loops.erase(h);
    }
  };
  pick_wires(0);
}

}  // namespace

std::vector<RuleInstance> find_matches(const Netlist& n, const Rule& r, Direction d) {
  std::vector<RuleInstance> out;
  if (!r.allows(d)) return out;
  if (r.structural) {
    RuleInstance inst;
    inst.rule = r.id;
    inst.dir = d;
    out.push_back(inst);
    return out;
  }
  const Netlist& pat = r.from(d);
  if (pat.nodes.empty()) {
    match_nodeless(n, pat, r, d, out);
    return out;
  }
  Matcher m(n, pat, r, d);
  Bindings b;
  m.search(0, b);
  return m.out;
}

std::vector<RuleInstance> find_matches(const Netlist& n, const std::string& rule_id, Direction d) {
  return find_matches(n, rule(rule_id), d);
}

Netlist instantiate(const Netlist& pattern, const Bindings& b) {
  Netlist n = pattern;
  for (auto& g : n.nodes) {
    if (is_gate(g.kind)) g.label = instantiate_label(g.label, b);
  }
  return n;
}

namespace {

void verify_instance(const Netlist& host, const RuleInstance& inst, const Rule& r) {
  const Netlist& pat = r.from(inst.dir);
  auto stale = [&](const std::string& why) { throw StaleInstance(r.id + ": " + why); };
  if (inst.rule != r.id) stale("rule mismatch");
  if (pat.nodes.empty()) {
    if (inst.wire_source.size() != pat.in_type.size() || inst.loop_map.size() != pat.loops.size()) stale("shape");
    std::set<Endpoint> seen_src;
    std::set<int> seen_loop;
    for (std::size_t k = 0; k < pat.in_type.size(); ++k) {
      if (inst.wire_loop[k] >= 0) {
        if (inst.wire_loop[k] >= static_cast<int>(host.loops.size()) || host.loops[inst.wire_loop[k]] != pat.in_type[k] ||
            !seen_loop.insert(inst.wire_loop[k]).second) {
          stale("loop wire");
        }
        continue;
      }
      Endpoint s = inst.wire_source[k];
      if (!s.is_boundary() && s.node >= static_cast<int>(host.nodes.size())) stale("wire source");
      if (s.is_boundary() && s.port >= static_cast<int>(host.in_type.size())) stale("wire source");
      if (host.source_type(s) != pat.in_type[k] || !seen_src.insert(s).second) stale("wire type");
    }
    for (std::size_t l = 0; l < pat.loops.size(); ++l) {
      int h = inst.loop_map[l];
      if (h < 0 || h >= static_cast<int>(host.loops.size()) || host.loops[h] != pat.loops[l] ||
          !seen_loop.insert(h).second) {
        stale("loop");
      }
    }
    return;
  }
  if (inst.node_map.size() != pat.nodes.size()) stale("node map size");
  std::set<int> seen;
  for (std::size_t k = 0; k < pat.nodes.size(); ++k) {
    int v = inst.node_map[k];
    if (v < 0 || v >= static_cast<int>(host.nodes.size()) || !seen.insert(v).second) stale("node map");
    const Generator& hg = host.nodes[v];
    if (hg.kind != pat.nodes[k].kind) stale("node kind");
    if (is_gate(hg.kind) && instantiate_label(pat.nodes[k].label, inst.bindings) != hg.label) stale("label");
    for (std::size_t j = 0; j < pat.in_src[k].size(); ++j) {
      Endpoint s = pat.in_src[k][j];
      if (s.is_boundary()) continue;
      if (host.in_src[v][j] != Endpoint{inst.node_map[s.node], s.port}) stale("wiring");
    }
  }
  for (const auto& [v, w] : inst.bindings) {
    if (!r.vars.count(v) || !kind_ok(r.vars.at(v), w)) stale("binding");
  }
}

}  // namespace

Netlist apply(const Netlist& host, const RuleInstance& inst, const Rule& r) {
  if (r.structural) return host;
  if (r.lhs.in_type != r.rhs.in_type || r.lhs.out_type != r.rhs.out_type) {
    throw TypeMismatch("rule " + r.id + " sides have different types");
  }
  verify_instance(host, inst, r);
  const Netlist& L = r.from(inst.dir);
  const Netlist R = instantiate(r.to(inst.dir), inst.bindings);
  const std::size_t nin = L.in_type.size(), nout = L.out_type.size();
  SinkIndex hs(host);

  // Host source feeding pattern input k, host sink fed by pattern output j.
  // For a loop used as a through-wire, the pattern output feeds straight back.
  std::vector<Endpoint> S(nin), T(nout);
  std::vector<bool> matched(host.nodes.size(), false);
  std::vector<int> fed_back_in(nout, -1);  // pattern output j loops into pattern input
  std::set<int> removed_loops(inst.loop_map.begin(), inst.loop_map.end());
  std::set<Endpoint> replaced_sinks;

  if (L.nodes.empty()) {
    auto tgt = through_targets(L);
    for (std::size_t k = 0; k < nin; ++k) {
      int j = tgt[k];
      if (inst.wire_loop[k] >= 0) {
        removed_loops.insert(inst.wire_loop[k]);
        fed_back_in[j] = static_cast<int>(k);
        continue;
      }
      S[k] = inst.wire_source[k];
      T[j] = hs.sink_of(S[k]);
      replaced_sinks.insert(T[j]);
    }
  } else {
    for (int v : inst.node_map) matched[v] = true;
    SinkIndex ls(L);
    for (std::size_t k = 0; k < nin; ++k) {
      Endpoint ps = ls.sink_of({Endpoint::kBoundary, static_cast<int>(k)});
      if (ps.is_boundary()) throw InternalError("rule pattern " + r.id + " has a through-wire beside nodes");
      S[k] = host.in_src[inst.node_map[ps.node]][ps.port];
    }
    std::map<Endpoint, int> pattern_input_at;  // host sink -> pattern input k
    for (std::size_t k = 0; k < nin; ++k) {
      Endpoint ps = ls.sink_of({Endpoint::kBoundary, static_cast<int>(k)});
      pattern_input_at[{inst.node_map[ps.node], ps.port}] = static_cast<int>(k);
    }
    for (std::size_t j = 0; j < nout; ++j) {
      Endpoint pp = L.out_src[j];
      if (pp.is_boundary()) throw InternalError("rule pattern " + r.id + " has a through-wire beside nodes");
      T[j] = hs.sink_of({inst.node_map[pp.node], pp.port});
      if (!T[j].is_boundary() && matched[T[j].node]) fed_back_in[j] = pattern_input_at.at(T[j]);
    }
  }
  // Pattern input k is fed from pattern output j (through an outside wire).
  std::vector<int> fed_from_out(nin, -1);
  for (std::size_t j = 0; j < nout; ++j) {
    if (fed_back_in[j] >= 0) fed_from_out[fed_back_in[j]] = static_cast<int>(j);
  }

  Netlist N;
  N.in_type = host.in_type;
  N.out_type = host.out_type;
  N.out_src.assign(host.out_type.size(), Endpoint{});
  std::vector<int> newid(host.nodes.size(), -1);
  for (std::size_t v = 0; v < host.nodes.size(); ++v) {
    if (!matched[v]) newid[v] = N.add_node(host.nodes[v]);
  }
  std::vector<int> rid(R.nodes.size());
  for (std::size_t b = 0; b < R.nodes.size(); ++b) rid[b] = N.add_node(R.nodes[b]);

  auto map_src = [&](Endpoint e) { return e.is_boundary() ? e : Endpoint{newid[e.node], e.port}; };
  auto map_sink = [&](Endpoint e) { return e.is_boundary() ? e : Endpoint{newid[e.node], e.port}; };
  std::vector<bool> consumed(nin, false);
  auto resolve = [&](Endpoint rs) -> Endpoint {
    std::set<int> guard;
    while (rs.is_boundary()) {
      int k = rs.port;
      if (!guard.insert(k).second) throw InternalError("cyclic resolution in " + r.id);
      consumed[k] = true;
      if (fed_from_out[k] < 0) return map_src(S[k]);
      rs = R.out_src[fed_from_out[k]];
    }
    return {rid[rs.node], rs.port};
  };

  for (std::size_t v = 0; v < host.nodes.size(); ++v) {
    if (matched[v]) continue;
    for (std::size_t p = 0; p < host.in_src[v].size(); ++p) {
      Endpoint sink{static_cast<int>(v), static_cast<int>(p)};
      Endpoint src = host.in_src[v][p];
      if (replaced_sinks.count(sink)) continue;
      if (!src.is_boundary() && matched[src.node]) continue;
      N.connect(map_src(src), map_sink(sink));
    }
  }
  for (std::size_t j = 0; j < host.out_src.size(); ++j) {
    Endpoint sink{Endpoint::kBoundary, static_cast<int>(j)};
    Endpoint src = host.out_src[j];
    if (replaced_sinks.count(sink)) continue;
    if (!src.is_boundary() && matched[src.node]) continue;
    N.connect(map_src(src), sink);
  }
  for (std::size_t j = 0; j < nout; ++j) {
    if (fed_back_in[j] >= 0) continue;
    N.connect(resolve(R.out_src[j]), map_sink(T[j]));
  }
  for (std::size_t b = 0; b < R.nodes.size(); ++b) {
    for (std::size_t p = 0; p < R.in_src[b].size(); ++p) {
      N.connect(resolve(R.in_src[b][p]), {rid[b], static_cast<int>(p)});
    }
  }

  for (std::size_t h = 0; h < host.loops.size(); ++h) {
    if (!removed_loops.count(static_cast<int>(h))) N.loops.push_back(host.loops[h]);
  }
  N.loops.insert(N.loops.end(), R.loops.begin(), R.loops.end());
  // Remaining unconsumed inputs lie on closed chains of through-wires.
  SinkIndex rs(R);
  for (std::size_t k = 0; k < nin; ++k) {
    if (consumed[k] || fed_from_out[k] < 0) continue;
    std::size_t cur = k;
    while (!consumed[cur]) {
      consumed[cur] = true;
      Endpoint next = rs.sink_of({Endpoint::kBoundary, static_cast<int>(cur)});
      if (!next.is_boundary() || fed_back_in[next.port] < 0) throw InternalError("open chain in " + r.id);
      cur = fed_back_in[next.port];
    }
    N.loops.push_back(L.in_type[k]);
  }
  std::sort(N.loops.begin(), N.loops.end());
  validate(N);
  return N;
}

Netlist apply(const Netlist& n, const RuleInstance& inst) { return apply(n, inst, rule(inst.rule)); }

std::vector<int> surviving_node_ids(const Netlist& host, const RuleInstance& inst) {
  std::vector<bool> matched(host.nodes.size(), false);
  for (int v : inst.node_map) matched[v] = true;
  std::vector<int> ids(host.nodes.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < host.nodes.size(); ++v) {
    if (!matched[v]) ids[v] = next++;
  }
  return ids;
}

std::string site_hash(const RuleInstance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](long long x) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>((x >> (8 * i)) & 0xff);
      h *= 1099511628211ull;
    }
  };
  for (char c : inst.rule) mix(c);
  mix(static_cast<int>(inst.dir));
  for (int v : inst.node_map) mix(v);
  for (const auto& e : inst.wire_source) {
    mix(e.node);
    mix(e.port);
  }
  for (int l : inst.wire_loop) mix(l);
  for (int l : inst.loop_map) mix(l);
  std::ostringstream os;
  os << std::hex << (h & 0xffffffffull);
  std::string s = os.str();
  return std::string(8 - s.size(), '0') + s;
}

bool check_soundness(const Rule& r, int random_instances, std::uint64_t seed) {
  if (r.structural) return true;
  if (r.lhs.in_type != r.rhs.in_type || r.lhs.out_type != r.rhs.out_type) return false;
  std::vector<std::string> names;
  for (const auto& [v, k] : r.vars) names.push_back(v);
  std::vector<Bindings> cases;
  auto minimal = [&](VarKind k, const std::string& letter) { return k == VarKind::AnyWord ? Word{} : Word{letter}; };
  {
    Bindings b;  // empty words where allowed
    for (const auto& v : names) b[v] = minimal(r.vars.at(v), "a");
    cases.push_back(b);
  }
  {
    Bindings b;  // distinct single letters
    for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = {std::string(1, static_cast<char>('a' + i))};
    cases.push_back(b);
  }
  {
    Bindings b;  // repeated letter
    for (const auto& v : names) b[v] = {"a"};
    cases.push_back(b);
  }
  std::mt19937_64 rng(seed);
  const char* alphabet[] = {"a", "b", "c"};
  for (int i = 0; i < random_instances; ++i) {
    Bindings b;
    for (const auto& v : names) {
      VarKind k = r.vars.at(v);
      std::size_t lo = k == VarKind::AnyWord ? 0 : 1, hi = k == VarKind::Letter ? 1 : 3;
      std::size_t len = lo + rng() % (hi - lo + 1);
      Word w;
      for (std::size_t j = 0; j < len; ++j) w.push_back(alphabet[rng() % 3]);
      b[v] = w;
    }
    cases.push_back(b);
  }
  for (const auto& b : cases) {
    if (!tables_equal(semantics_table(instantiate(r.lhs, b)), semantics_table(instantiate(r.rhs, b)))) return false;
  }
  return true;
}

bool check_soundness(const std::string& rule_id) { return check_soundness(rule(rule_id)); }

void ProofTrace::record(const RuleInstance& inst) {
  steps.push_back({inst.rule, inst.dir, site_hash(inst)});
}

std::string ProofTrace::text() const {
  std::string s;
  for (const auto& st : steps) s += st.rule + " " + direction_name(st.dir) + " @ " + st.site + "\n";
  return s;
}

namespace {

struct Step {
  std::string rule;
  Direction dir = Direction::L2R;
  int index = 0;
  Bindings require;
};

struct Derivation {
  std::string target;
  Bindings inst;
  std::vector<Step> steps;
};

const std::vector<Derivation>& derivations() {
  const auto F = Direction::L2R;
  const auto B = Direction::R2L;
  const Bindings split_inst{{"U", {"a"}}, {"W", {"b", "c"}}};
  const Bindings one{{"U", {"a"}}};
  const Bindings none{};
  static const std::vector<Derivation> ds = {
      {"DER18", split_inst, {{"AX2", B, 0, one}}},
      {"DER19",
       split_inst,
       {{"AX8", B, 0, {}}, {"AX3", B, 0, {}}, {"AX2", B, 0, one}, {"AX3", F, 0, {}}, {"AX3", F, 0, {}}, {"AX8", F, 0, {}}}},
      {"DER20",
       split_inst,
       {{"AX9", B, 1, {}},
        {"AX5", F, 0, {}},
        {"AX2", B, 0, one},
        {"DER19", F, 0, one},
        {"AX5", B, 0, one},
        {"AX5", B, 0, {}},
        {"AX9", F, 0, {}}}},
      {"DER21", one, {{"AX10", B, 0, {}}, {"AX5", B, 0, {}}}},
      {"DER22", one, {{"STRUCT_SWAPNAT", F, 0, {}}, {"DER21", F, 0, {}}, {"AX12", B, 0, {}}, {"AX11", B, 0, {}}}},
      {"DER23", one, {{"AX7", B, 3, {}}, {"AX3", F, 0, {}}, {"DER21", F, 0, {}}}},
      {"DER24", one, {{"AX8", B, 0, {}}, {"AX3", B, 0, {}}, {"DER21", F, 0, {}}}},
      {"APPC1",
       one,
       {{"AX8", B, 0, {}}, {"AX3", B, 0, {}}, {"STRUCT_DINAT", F, 0, {}}, {"AX7", F, 0, {}}, {"AX6", F, 0, {}}}},
      {"APPC2", one, {{"AX8", B, 0, {}}, {"AX3", B, 0, {}}, {"AX7", F, 0, {}}}},
      {"APPE30", none, {{"AX11", F, 0, {}}, {"AX4", F, 0, {}}, {"AX11", F, 0, {}}}},
      {"APPE25",
       none,
       {{"AX9", B, 2, {}}, {"AX4", F, 0, {}}, {"APPE30", F, 0, {}}, {"AX7", F, 0, {}}, {"AX8", F, 0, {}}, {"AX9", F, 0, {}}}},
      {"APPE26", none, {{"AX1", B, 0, {}}, {"AX6", F, 0, {}}}},
      {"APPE27", none, {{"AX8", B, 0, {}}, {"STRUCT_DINAT", F, 0, {}}, {"AX7", F, 0, {}}, {"APPE26", F, 0, {}}}},
      {"APPE28",
       none,
       {{"AX9", B, 0, {}}, {"STRUCT_DINAT", F, 0, {}}, {"AX10", F, 0, {}}, {"APPE27", F, 0, {}}, {"APPE26", F, 0, {}}}},
      {"APPE38", none, {{"AX11", F, 0, {}}, {"AX10", F, 0, {}}}},
      {"APPE29",
       none,
       {{"AX9", B, 0, {}},
        {"AX4", F, 0, {}},
        {"STRUCT_DINAT", F, 0, {}},
        {"APPE38", F, 0, {}},
        {"AX8", F, 0, {}},
        {"APPE27", F, 0, {}}}},
      {"APPE31", none, {{"AX9", B, 1, {}}, {"AX4", F, 0, {}}, {"APPE38", F, 0, {}}, {"AX12", B, 0, {}}}},
      {"APPE32", none, {{"AX12", F, 0, {}}, {"APPE31", F, 0, {}}, {"AX12", F, 0, {}}}},
      {"APPE33", none, {{"AX8", B, 0, {}}, {"APPE30", B, 0, {}}}},
      {"APPE34", none, {{"AX8", B, 0, {}}, {"AX4", B, 0, {}}}},
      {"APPE35", none, {{"AX7", B, 0, {}}, {"APPE32", B, 0, {}}}},
      {"APPE36", none, {{"AX7", B, 1, {}}, {"APPE31", B, 0, {}}}},
      {"APPE37", none, {{"STRUCT_DINAT", F, 0, {}}, {"AX16", B, 0, {}}}},
  };
  return ds;
}

bool satisfies(const RuleInstance& inst, const Bindings& req) {
  for (const auto& [v, w] : req) {
    auto it = inst.bindings.find(v);
    if (it == inst.bindings.end() || it->second != w) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> derivable_rules() {
  std::vector<std::string> ids;
  for (const auto& d : derivations()) ids.push_back(d.target);
  return ids;
}

ProofTrace replay_derivation(const std::string& target) {
  const Derivation* der = nullptr;
  for (const auto& d : derivations()) {
    if (d.target == target) der = &d;
  }
  if (!der) throw DerivationFailed("no recorded derivation for " + target);
  const Rule& t = rule(target);
  Netlist cur = instantiate(t.lhs, der->inst);
  const Netlist goal = instantiate(t.rhs, der->inst);
  const SemanticsTable sem = semantics_table(cur);
  ProofTrace trace;
  for (std::size_t i = 0; i < der->steps.size(); ++i) {
    const Step& st = der->steps[i];
    std::vector<RuleInstance> ms;
    for (auto& m : find_matches(cur, st.rule, st.dir)) {
      if (satisfies(m, st.require)) ms.push_back(m);
    }
    if (st.index >= static_cast<int>(ms.size())) {
      throw DerivationFailed(target + ": step " + std::to_string(i + 1) + " (" + st.rule + " " +
                             direction_name(st.dir) + ") has no match");
    }
    cur = apply(cur, ms[st.index]);
    trace.record(ms[st.index]);
    if (!tables_equal(semantics_table(cur), sem)) {
      throw DerivationFailed(target + ": step " + std::to_string(i + 1) + " changed the semantics");
    }
  }
  if (!netlists_isomorphic(cur, goal)) {
    throw DerivationFailed(target + ": chain ends at " + print(netlist_to_term(cur)) + " instead of " +
                           print(netlist_to_term(goal)));
  }
  return trace;
}

}  // namespace cpbs
