#include "cpbs/pgt.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cpbs/errors.hpp"
#include "cpbs/query_opt.hpp"

namespace cpbs {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

void require_gate_free(const SemanticsTable& t) {
  if (!gate_free(t)) throw HasGates("table has non-empty words");
}

}  // namespace

// Each block's configuration graph is a cycle when every position in it is
// black, otherwise a path between its two coloured positions. That gives the
// four cases: cycle; path from an input to an output; path between two
// inputs; path between two outputs.
PartitionAnalysis analyse_partition(const SemanticsTable& t) {
  require_gate_free(t);
  const std::size_t na = t.in_type.size(), nb = t.out_type.size();
  Dsu dsu(na + nb);
  for (const auto& r : t.rows) dsu.unite(r.in.pos, static_cast<int>(na) + r.out.pos);
  std::map<int, PartitionBlock> by_root;
  std::vector<int> order;
  for (std::size_t p = 0; p < na + nb; ++p) {
    int root = dsu.find(static_cast<int>(p));
    if (!by_root.count(root)) order.push_back(root);
    auto& b = by_root[root];
    if (p < na) {
      b.inputs.push_back(static_cast<int>(p));
    } else {
      b.outputs.push_back(static_cast<int>(p - na));
    }
  }
  PartitionAnalysis pa;
  for (int root : order) {
    PartitionBlock b = by_root[root];
    if (b.inputs.empty()) throw InternalError("partition block without inputs");
    std::size_t ca = 0, cb = 0;
    for (int p : b.inputs) ca += t.in_type[p] != WireType::T;
    for (int p : b.outputs) cb += t.out_type[p] != WireType::T;
    if (ca == 0 && cb == 0) {
      b.case_ = 1;
    } else if (ca == 1 && cb == 1) {
      b.case_ = 2;
    } else if (ca == 2 && cb == 0) {
      b.case_ = 3;
    } else if (ca == 0 && cb == 2) {
      b.case_ = 4;
    } else {
      throw InternalError("partition block of unexpected shape");
    }
    pa.s_L += b.case_ == 3;
    pa.s_R += b.case_ == 4;
    pa.blocks.push_back(b);
  }
  std::sort(pa.blocks.begin(), pa.blocks.end(),
            [](const PartitionBlock& x, const PartitionBlock& y) { return x.inputs.front() < y.inputs.front(); });
  pa.k = pa.blocks.size();
  return pa;
}

std::size_t pbs_lower_bound(const SemanticsTable& t) {
  PartitionAnalysis pa = analyse_partition(t);
  return t.out_type.size() - pa.k + pa.s_L;
}

std::string staircase_name(StaircaseKind k) {
  switch (k) {
    case StaircaseKind::BlackLadder:
      return "black-ladder";
    case StaircaseKind::RedLadder:
      return "red-ladder";
    case StaircaseKind::BlueLadder:
      return "blue-ladder";
    case StaircaseKind::RedMerge:
      return "red-merge";
    case StaircaseKind::RedMergeInverse:
      return "red-merge-inverse";
  }
  return "?";
}

std::size_t Staircase::size() const { return wires - 1; }

ObjectType Staircase::in_type() const {
  const WireType T = WireType::T;
  ObjectType a(wires, T);
  switch (kind) {
    case StaircaseKind::BlackLadder:
      return a;
    case StaircaseKind::RedLadder:
      a.back() = WireType::V;
      return a;
    case StaircaseKind::BlueLadder:
      a.back() = WireType::H;
      return a;
    case StaircaseKind::RedMerge:
      a.front() = WireType::H;
      a.back() = WireType::V;
      return a;
    case StaircaseKind::RedMergeInverse:
      return ObjectType(wires - 1, T);
  }
  return a;
}

ObjectType Staircase::out_type() const {
  const WireType T = WireType::T;
  ObjectType b(wires, T);
  switch (kind) {
    case StaircaseKind::BlackLadder:
      return b;
    case StaircaseKind::RedLadder:
      b.front() = WireType::V;
      return b;
    case StaircaseKind::BlueLadder:
      b.front() = WireType::H;
      return b;
    case StaircaseKind::RedMerge:
      return ObjectType(wires - 1, T);
    case StaircaseKind::RedMergeInverse:
      b.front() = WireType::H;
      b.back() = WireType::V;
      return b;
  }
  return b;
}

namespace {

// Generator g placed on wires [at, at + |in g|) of `wires`, identities elsewhere.
DiagramTerm placed(const ObjectType& wires, std::size_t at, const DiagramTerm& g) {
  std::vector<DiagramTerm> parts;
  for (std::size_t j = 0; j < at; ++j) parts.push_back(DiagramTerm::gen(make_id(wires[j])));
  parts.push_back(g);
  std::size_t width = type_of(g).first.size();
  for (std::size_t j = at + width; j < wires.size(); ++j) parts.push_back(DiagramTerm::gen(make_id(wires[j])));
  return DiagramTerm::par_all(parts);
}

// Sequentially applies generators at the given offsets, tracking the wire types.
class LayerBuilder {
 public:
  explicit LayerBuilder(ObjectType wires) : wires_(std::move(wires)) {}

  void add(std::size_t at, const DiagramTerm& g) {
    auto [in, out] = type_of(g);
    if (!std::equal(in.begin(), in.end(), wires_.begin() + static_cast<long>(at))) {
      throw InternalError("staircase layer does not fit");
    }
    layers_.push_back(placed(wires_, at, g));
    wires_.erase(wires_.begin() + static_cast<long>(at), wires_.begin() + static_cast<long>(at + in.size()));
    wires_.insert(wires_.begin() + static_cast<long>(at), out.begin(), out.end());
  }

  DiagramTerm build(const ObjectType& start) const {
    return layers_.empty() ? identity_term(start) : DiagramTerm::seq_all(layers_);
  }

 private:
  ObjectType wires_;
  std::vector<DiagramTerm> layers_;
};

DiagramTerm g(GenKind k) { return DiagramTerm::gen(make_gen(k)); }

}  // namespace

DiagramTerm Staircase::to_term() const {
  const ObjectType a = in_type();
  LayerBuilder lb(a);
  const std::size_t m = wires;
  switch (kind) {
    case StaircaseKind::BlackLadder:
      for (std::size_t i = 0; i + 1 < m; ++i) lb.add(i, g(GenKind::Pbs4));
      break;
    case StaircaseKind::RedLadder:
      for (std::size_t i = m - 1; i >= 1; --i) lb.add(i - 1, g(GenKind::PbsTvVt));
      break;
    case StaircaseKind::BlueLadder:
      for (std::size_t i = m - 1; i >= 1; --i) {
        lb.add(i - 1, DiagramTerm::seq(g(GenKind::PbsThTh), DiagramTerm::gen(make_swap(WireType::T, WireType::H))));
      }
      break;
    case StaircaseKind::RedMerge:
      for (std::size_t i = m - 1; i >= 2; --i) lb.add(i - 1, g(GenKind::PbsTvVt));
      lb.add(0, g(GenKind::MergeHV));
      break;
    case StaircaseKind::RedMergeInverse:
      lb.add(0, g(GenKind::SplitHV));
      for (std::size_t i = 1; i + 1 < m; ++i) lb.add(i, g(GenKind::PbsVtTv));
      break;
  }
  return lb.build(a);
}

std::size_t StairForm::pbs() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.size();
  return n;
}

namespace {

DiagramTerm neg_layer(const ObjectType& before, const std::vector<bool>& negs) {
  std::vector<DiagramTerm> parts;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (!negs[i]) {
      parts.push_back(DiagramTerm::gen(make_id(before[i])));
    } else {
      GenKind k = before[i] == WireType::T ? GenKind::NegT : before[i] == WireType::V ? GenKind::NegVH : GenKind::NegHV;
      parts.push_back(g(k));
    }
  }
  return DiagramTerm::par_all(parts);
}

}  // namespace

DiagramTerm StairForm::to_term() const {
  if (in_type.empty() && out_type.empty()) return DiagramTerm::empty();
  ObjectType mid_in, mid_out;
  std::vector<DiagramTerm> stairs;
  for (const auto& c : cases) {
    auto a = c.in_type(), b = c.out_type();
    mid_in.insert(mid_in.end(), a.begin(), a.end());
    mid_out.insert(mid_out.end(), b.begin(), b.end());
    stairs.push_back(c.to_term());
  }
  ObjectType before_pre(mid_in.size());
  for (std::size_t p = 0; p < in_type.size(); ++p) before_pre[sigma1[p]] = in_type[p];
  ObjectType after_post(mid_out.size());
  for (std::size_t q = 0; q < mid_out.size(); ++q) after_post[q] = out_type[sigma2[q]];

  std::vector<DiagramTerm> layers;
  layers.push_back(permutation_term(in_type, sigma1));
  if (std::count(pre_negs.begin(), pre_negs.end(), true)) layers.push_back(neg_layer(before_pre, pre_negs));
  layers.push_back(DiagramTerm::par_all(stairs));
  if (std::count(post_negs.begin(), post_negs.end(), true)) layers.push_back(neg_layer(mid_out, post_negs));
  layers.push_back(permutation_term(after_post, sigma2));
  return DiagramTerm::seq_all(layers);
}

namespace {

struct Walk {
  std::vector<std::pair<bool, int>> nodes;  // (is_output, position)
  std::vector<int> edges;                   // row indices
};

// Follows a block's configuration graph from a position along a first edge.
Walk walk(const SemanticsTable& t, bool output_side, int pos, int first_edge) {
  std::map<std::pair<bool, int>, std::vector<int>> at;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    at[{false, t.rows[i].in.pos}].push_back(static_cast<int>(i));
    at[{true, t.rows[i].out.pos}].push_back(static_cast<int>(i));
  }
  Walk w;
  w.nodes.push_back({output_side, pos});
  int e = first_edge;
  for (;;) {
    w.edges.push_back(e);
    auto [side, p] = w.nodes.back();
    std::pair<bool, int> next{!side, side ? t.rows[e].in.pos : t.rows[e].out.pos};
    w.nodes.push_back(next);
    const auto& es = at[next];
    int other = -1;
    for (int x : es) {
      if (x != e) other = x;
    }
    if (other < 0) break;
    if (other == first_edge) {
      w.nodes.pop_back();
      break;
    }
    e = other;
  }
  return w;
}

Pol pol_at(const SemanticsTable& t, const Walk& w, std::size_t i) {
  int e = i < w.edges.size() ? w.edges[i] : w.edges.back();
  return w.nodes[i].first ? t.rows[e].out.pol : t.rows[e].in.pol;
}

int edge_from(const SemanticsTable& t, bool output_side, int pos, std::optional<Pol> pol = std::nullopt) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Configuration& c = output_side ? t.rows[i].out : t.rows[i].in;
    if (c.pos == pos && (!pol || c.pol == *pol)) return static_cast<int>(i);
  }
  throw InternalError("no configuration at position");
}

}  // namespace

StairForm synthesize_stair_form(const SemanticsTable& t) {
  require_gate_free(t);
  if (!is_bijective(t)) throw NotBijective("configuration map is not a bijection");
  PartitionAnalysis pa = analyse_partition(t);
  StairForm sf;
  sf.in_type = t.in_type;
  sf.out_type = t.out_type;
  sf.sigma1.assign(t.in_type.size(), -1);
  std::vector<int> sigma2_inv(t.out_type.size(), -1);
  std::size_t in_off = 0, out_off = 0;

  for (const auto& b : pa.blocks) {
    Staircase sc;
    bool start_out = false;
    int start = b.inputs.front();
    auto coloured = [&](const std::vector<int>& ps, const ObjectType& ty) {
      std::vector<int> r;
      for (int p : ps) {
        if (ty[p] != WireType::T) r.push_back(p);
      }
      return r;
    };
    // Staircase start: (is_output, local position).
    std::pair<bool, int> sc_start{false, 0};
    switch (b.case_) {
      case 1:
        sc = {StaircaseKind::BlackLadder, b.inputs.size()};
        break;
      case 2: {
        int ci = coloured(b.inputs, t.in_type).front();
        int co = coloured(b.outputs, t.out_type).front();
        bool blue = t.in_type[ci] == WireType::H && t.out_type[co] == WireType::H;
        sc = {blue ? StaircaseKind::BlueLadder : StaircaseKind::RedLadder, b.inputs.size()};
        start = ci;
        sc_start = {false, static_cast<int>(sc.wires) - 1};
        break;
      }
      case 3: {
        auto cs = coloured(b.inputs, t.in_type);
        start = t.in_type[cs[1]] == WireType::H && t.in_type[cs[0]] != WireType::H ? cs[1] : cs[0];
        sc = {StaircaseKind::RedMerge, b.inputs.size()};
        break;
      }
      case 4: {
        auto cs = coloured(b.outputs, t.out_type);
        start = t.out_type[cs[1]] == WireType::H && t.out_type[cs[0]] != WireType::H ? cs[1] : cs[0];
        start_out = true;
        sc = {StaircaseKind::RedMergeInverse, b.outputs.size()};
        sc_start = {true, 0};
        break;
      }
    }
    SemanticsTable st = semantics_table(sc.to_term());
    std::optional<Pol> vert;
    if (b.case_ == 1) vert = Pol::Vert;
    Walk tw = walk(t, start_out, start, edge_from(t, start_out, start, vert));
    Walk sw = walk(st, sc_start.first, sc_start.second, edge_from(st, sc_start.first, sc_start.second, vert));
    if (tw.nodes.size() != sw.nodes.size()) throw InternalError("staircase does not fit its block");

    std::vector<bool> pre(st.in_type.size(), false), post(st.out_type.size(), false);
    for (std::size_t i = 0; i < tw.nodes.size(); ++i) {
      auto [side, p] = tw.nodes[i];
      auto [sside, q] = sw.nodes[i];
      if (side != sside) throw InternalError("staircase walk out of step");
      bool neg = pol_at(t, tw, i) != pol_at(st, sw, i);
      if (!side) {
        sf.sigma1[p] = static_cast<int>(in_off) + q;
        pre[q] = neg;
      } else {
        sigma2_inv[p] = static_cast<int>(out_off) + q;
        post[q] = neg;
      }
    }
    sf.pre_negs.insert(sf.pre_negs.end(), pre.begin(), pre.end());
    sf.post_negs.insert(sf.post_negs.end(), post.begin(), post.end());
    in_off += st.in_type.size();
    out_off += st.out_type.size();
    sf.cases.push_back(sc);
  }
  sf.sigma2.assign(out_off, -1);
  for (std::size_t p = 0; p < sigma2_inv.size(); ++p) sf.sigma2[sigma2_inv[p]] = static_cast<int>(p);
  if (!tables_equal(semantics_table(sf.to_term()), t)) throw InternalError("stair form has other semantics");
  return sf;
}

DiagramTerm PgtForm::to_term() const {
  DiagramTerm core_term = core.to_term();
  if (gates.empty()) return core_term;
  std::vector<DiagramTerm> parts;
  for (WireType c : out_type) parts.push_back(DiagramTerm::gen(make_id(c)));
  for (const auto& gt : gates) parts.push_back(DiagramTerm::gen(gt));
  DiagramTerm d = DiagramTerm::seq(core_term, DiagramTerm::par_all(parts));
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) d = DiagramTerm::trace(gate_colour(it->kind), d);
  return d;
}

namespace {

// Gates in the order configurations first reach them, unreached ones last.
std::vector<int> gate_order(const Netlist& n) {
  SinkIndex si(n);
  std::vector<int> order;
  std::set<int> seen;
  for (Configuration c : configurations(n.in_type)) {
    Endpoint src{Endpoint::kBoundary, c.pos};
    Pol pol = c.pol;
    std::set<std::pair<Endpoint, Pol>> visited;
    while (visited.insert({src, pol}).second) {
      Endpoint sink = si.sink_of(src);
      if (sink.is_boundary()) break;
      const Generator& gn = n.nodes[sink.node];
      if (is_gate(gn.kind) && seen.insert(sink.node).second) order.push_back(sink.node);
      auto [port, np] = route(gn.kind, sink.port, pol);
      src = {sink.node, port};
      pol = np;
    }
  }
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    if (is_gate(n.nodes[v].kind) && !seen.count(static_cast<int>(v))) order.push_back(static_cast<int>(v));
  }
  return order;
}

}  // namespace

PgtForm to_pgt_form(const DiagramTerm& d) {
  if (!is_query_optimal(d)) throw NotQueryOptimal("PGT procedure needs a query-optimal diagram");
  const Netlist n = to_netlist(d);
  const std::vector<int> gates = gate_order(n);
  std::map<int, int> gate_index;
  for (std::size_t i = 0; i < gates.size(); ++i) gate_index[gates[i]] = static_cast<int>(i);

  // Residual gate-free netlist a + G -> b + G.
  Netlist p;
  p.in_type = n.in_type;
  p.out_type = n.out_type;
  PgtForm pf;
  pf.in_type = n.in_type;
  pf.out_type = n.out_type;
  for (int gv : gates) {
    WireType c = gate_colour(n.nodes[gv].kind);
    p.in_type.push_back(c);
    p.out_type.push_back(c);
    pf.gates.push_back(n.nodes[gv]);
  }
  std::vector<int> newid(n.nodes.size(), -1);
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    if (!gate_index.count(static_cast<int>(v))) newid[v] = p.add_node(n.nodes[v]);
  }
  p.out_src.assign(p.out_type.size(), Endpoint{});
  auto map_src = [&](Endpoint s) -> Endpoint {
    if (s.is_boundary()) return s;
    auto it = gate_index.find(s.node);
    if (it != gate_index.end()) return {Endpoint::kBoundary, static_cast<int>(n.in_type.size()) + it->second};
    return {newid[s.node], s.port};
  };
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    for (std::size_t q = 0; q < n.in_src[v].size(); ++q) {
      Endpoint s = map_src(n.in_src[v][q]);
      auto it = gate_index.find(static_cast<int>(v));
      if (it != gate_index.end()) {
        p.connect(s, {Endpoint::kBoundary, static_cast<int>(n.out_type.size()) + it->second});
      } else {
        p.connect(s, {newid[v], static_cast<int>(q)});
      }
    }
  }
  for (std::size_t j = 0; j < n.out_src.size(); ++j) p.connect(map_src(n.out_src[j]), {Endpoint::kBoundary, static_cast<int>(j)});
  validate(p);
  pf.core = synthesize_stair_form(semantics_table(p));
  if (!tables_equal(semantics_table(pf.to_term()), semantics_table(n))) {
    throw InternalError("PGT form has other semantics");
  }
  return pf;
}

bool is_query_pbs_optimal_single(const DiagramTerm& d) {
  for (const auto& e : query_profile(d).entries) {
    if (e.count > 1) throw PreconditionViolated("oracle " + e.oracle + " is queried more than once");
  }
  if (!is_query_optimal(d)) return false;
  return count_pbs(d) == count_pbs(to_pgt_form(d).to_term());
}

}  // namespace cpbs
