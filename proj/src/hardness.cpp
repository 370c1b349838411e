#include "cpbs/hardness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cpbs/errors.hpp"
#include "cpbs/pgt.hpp"
#include "cpbs/semantics.hpp"

namespace cpbs {

void EulerianGraph::validate() const {
  std::map<std::string, int> deg;
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& v : vertices) parent[v] = v;
  for (const auto& [a, b] : edges) {
    if (!parent.count(a) || !parent.count(b)) throw NotEulerian("edge mentions an unknown vertex");
    deg[a] += 1;
    deg[b] += 1;
    parent[find(a)] = find(b);
  }
  std::set<std::string> roots;
  for (const auto& [v, d] : deg) {
    if (d % 2) throw NotEulerian("vertex " + v + " has odd degree");
    if (d > 0) roots.insert(find(v));
  }
  if (roots.size() > 1) throw NotEulerian("edges do not form one connected component");
}

EulerianGraph parse_edge_list(const std::string& text) {
  EulerianGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto add_vertex = [&](const std::string& v) {
    if (std::find(g.vertices.begin(), g.vertices.end(), v) == g.vertices.end()) g.vertices.push_back(v);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra)) throw SyntaxError("line " + std::to_string(lineno) + ": expected `u v`");
    add_vertex(a);
    add_vertex(b);
    g.edges.push_back({a, b});
  }
  return g;
}

Orientation orient_eulerian(const EulerianGraph& g, std::uint64_t seed) {
  g.validate();
  Orientation o;
  const std::size_t n = g.edges.size();
  o.arcs.resize(n);
  if (n == 0) return o;
  std::map<std::string, std::vector<int>> incident;
  for (std::size_t e = 0; e < n; ++e) {
    incident[g.edges[e].first].push_back(static_cast<int>(e));
    if (g.edges[e].second != g.edges[e].first) incident[g.edges[e].second].push_back(static_cast<int>(e));
  }
  std::vector<std::string> starts;
  for (const auto& v : g.vertices) {
    if (incident.count(v)) starts.push_back(v);
  }
  std::mt19937_64 rng(seed);
  std::string start = starts[rng() % starts.size()];

  // Hierholzer: every edge is oriented the way the circuit walks it.
  std::vector<bool> used(n, false);
  std::map<std::string, std::size_t> next;
  std::vector<std::string> stack{start};
  while (!stack.empty()) {
    std::string v = stack.back();
    auto& es = incident[v];
    std::size_t& i = next[v];
    while (i < es.size() && used[es[i]]) ++i;
    if (i == es.size()) {
      stack.pop_back();
      continue;
    }
    int e = es[i];
    used[e] = true;
    const auto& [a, b] = g.edges[e];
    std::string other = a == v ? b : a;
    o.arcs[e] = {v, other};
    stack.push_back(other);
  }
  std::map<std::string, std::vector<int>> tails;
  for (std::size_t p = 0; p < n; ++p) {
    o.w.push_back(o.arcs[p].first);
    tails[o.arcs[p].first].push_back(static_cast<int>(p));
  }
  std::map<std::string, std::size_t> taken;
  o.sigma.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::string& h = o.arcs[p].second;
    auto& ts = tails[h];
    std::size_t& k = taken[h];
    if (k >= ts.size()) throw InternalError("orientation is not balanced");
    o.sigma[p] = ts[k++];
  }
  return o;
}

DiagramTerm build_D_sigma(const std::vector<int>& sigma) {
  const std::size_t n = sigma.size();
  SemanticsTable t;
  t.in_type = ObjectType(n, WireType::T);
  t.out_type = t.in_type;
  for (std::size_t p = 0; p < n; ++p) {
    t.rows.push_back({{Pol::Vert, static_cast<int>(p)}, {Pol::Vert, static_cast<int>(p)}, {}});
    t.rows.push_back({{Pol::Horiz, static_cast<int>(p)}, {Pol::Horiz, sigma[p]}, {}});
  }
  DiagramTerm d = synthesize_stair_form(t).to_term();
  if (count_neg(d) != 0) throw InternalError("router is not negation-free");
  return d;
}

DiagramTerm build_C_w_sigma(const Word& w, const std::vector<int>& sigma) {
  if (w.size() != sigma.size()) throw LengthMismatch("word and permutation differ in length");
  std::vector<int> seen(sigma.size(), 0);
  for (int s : sigma) {
    if (s < 0 || s >= static_cast<int>(sigma.size()) || seen[s]++) throw LengthMismatch("sigma is not a permutation");
  }
  if (w.empty()) return DiagramTerm::empty();
  std::vector<DiagramTerm> gates;
  for (const auto& u : w) gates.push_back(DiagramTerm::gen(make_gate(WireType::T, {u})));
  DiagramTerm router = build_D_sigma(sigma);
  return DiagramTerm::seq_all({router, DiagramTerm::par_all(gates), reflect(router)});
}

namespace {

const std::string& step_tail(const EulerianGraph& g, const CycleStep& s) {
  return s.forward ? g.edges[s.edge].first : g.edges[s.edge].second;
}
const std::string& step_head(const EulerianGraph& g, const CycleStep& s) {
  return s.forward ? g.edges[s.edge].second : g.edges[s.edge].first;
}

}  // namespace

void validate_decomposition(const EulerianGraph& g, const CycleDecomposition& d) {
  std::vector<int> hits(g.edges.size(), 0);
  for (const auto& c : d.cycles) {
    if (c.empty()) throw InvalidDecomposition("empty cycle");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].edge < 0 || c[i].edge >= static_cast<int>(g.edges.size())) throw InvalidDecomposition("bad edge index");
      ++hits[c[i].edge];
      if (step_head(g, c[i]) != step_tail(g, c[(i + 1) % c.size()])) throw InvalidDecomposition("cycle is not closed");
    }
  }
  for (int h : hits) {
    if (h != 1) throw InvalidDecomposition("edges not covered exactly once");
  }
}

namespace {

struct EcdSearch {
  const EulerianGraph& g;
  std::vector<bool> used;
  std::vector<std::vector<CycleStep>> current, best;

  // Simple cycles through the lowest unused edge.
  void run() {
    auto it = std::find(used.begin(), used.end(), false);
    if (it == used.end()) {
      if (current.size() > best.size()) best = current;
      return;
    }
    // Each remaining edge could at best be its own cycle.
    std::size_t left = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
    if (current.size() + left <= best.size()) return;
    int e0 = static_cast<int>(it - used.begin());
    used[e0] = true;
    const auto& [u, v] = g.edges[e0];
    std::vector<CycleStep> path{{e0, true}};
    std::set<std::string> on_path{u, v};
    extend(path, on_path, v, u);
    used[e0] = false;
  }

  void extend(std::vector<CycleStep>& path, std::set<std::string>& on_path, const std::string& at,
              const std::string& home) {
    if (at == home) {
      current.push_back(path);
      run();
      current.pop_back();
      return;
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (used[e]) continue;
      const auto& [a, b] = g.edges[e];
      for (bool fwd : {true, false}) {
        const std::string& from = fwd ? a : b;
        const std::string& to = fwd ? b : a;
        if (from != at || (a == b && !fwd)) continue;
        if (to != home && on_path.count(to)) continue;
        used[e] = true;
        path.push_back({static_cast<int>(e), fwd});
        bool inserted = on_path.insert(to).second;
        extend(path, on_path, to, home);
        if (inserted) on_path.erase(to);
        path.pop_back();
        used[e] = false;
      }
    }
  }
};

}  // namespace

CycleDecomposition max_ecd_bruteforce(const EulerianGraph& g, std::size_t max_edges) {
  g.validate();
  if (g.edges.size() > max_edges) {
    throw BudgetExceeded("exact decomposition limited to " + std::to_string(max_edges) + " edges");
  }
  EcdSearch s{g, std::vector<bool>(g.edges.size(), false), {}, {}};
  s.run();
  CycleDecomposition d{s.best};
  validate_decomposition(g, d);
  return d;
}

DiagramTerm diagram_from_decomposition(const EulerianGraph& g, const Orientation& o, const CycleDecomposition& d) {
  validate_decomposition(g, d);
  const std::size_t n = g.edges.size();
  if (o.arcs.size() != n) throw InvalidDecomposition("orientation does not match the graph");
  if (n == 0) return DiagramTerm::empty();

  // Ladder slot l of a cycle takes the cycle's steps in reverse, so that the
  // horizontal path through slot l meets the gate of slot l - 1, the head.
  std::vector<int> slot_of(n);
  std::vector<bool> reversed(n);
  std::vector<DiagramTerm> ladders, gates;
  std::size_t base = 0;
  for (auto c : d.cycles) {
    const std::size_t m = c.size();
    // Direction is free per cycle; take the one needing fewer negations.
    std::size_t against = 0;
    for (const auto& s : c) against += step_tail(g, s) != o.arcs[s.edge].first;
    if (2 * against > m) {
      std::reverse(c.begin(), c.end());
      for (auto& s : c) s.forward = !s.forward;
    }
    for (std::size_t l = 0; l < m; ++l) {
      const CycleStep& s = c[m - 1 - l];
      slot_of[s.edge] = static_cast<int>(base + l);
      reversed[s.edge] = step_tail(g, s) != o.arcs[s.edge].first;
      gates.push_back(DiagramTerm::gen(make_gate(WireType::T, {step_tail(g, s)})));
    }
    ladders.push_back(Staircase{StaircaseKind::BlackLadder, m}.to_term());
    base += m;
  }
  const ObjectType wires(n, WireType::T);
  std::vector<DiagramTerm> negs;
  for (std::size_t q = 0; q < n; ++q) negs.push_back(DiagramTerm::gen(make_id(WireType::T)));
  for (std::size_t p = 0; p < n; ++p) {
    if (reversed[p]) negs[slot_of[p]] = DiagramTerm::gen(make_gen(GenKind::NegT));
  }
  std::vector<int> back(n);
  for (std::size_t p = 0; p < n; ++p) back[slot_of[p]] = static_cast<int>(p);
  DiagramTerm ladder = DiagramTerm::par_all(ladders);
  return DiagramTerm::seq_all({permutation_term(wires, slot_of), DiagramTerm::par_all(negs), ladder,
                               DiagramTerm::par_all(gates), reflect(ladder), DiagramTerm::par_all(negs),
                               permutation_term(wires, back)});
}

}  // namespace cpbs
