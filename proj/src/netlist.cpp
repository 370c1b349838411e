#include "cpbs/netlist.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cpbs/errors.hpp"

namespace cpbs {

int Netlist::add_node(const Generator& g) {
  nodes.push_back(g);
  in_src.emplace_back(gen_in_type(g).size(), Endpoint{});
  return static_cast<int>(nodes.size()) - 1;
}

Endpoint Netlist::source_of(Endpoint sink) const {
  if (sink.is_boundary()) return out_src.at(sink.port);
  return in_src.at(sink.node).at(sink.port);
}

void Netlist::connect(Endpoint source, Endpoint sink) {
  if (sink.is_boundary()) {
    out_src.at(sink.port) = source;
  } else {
    in_src.at(sink.node).at(sink.port) = source;
  }
}

WireType Netlist::source_type(Endpoint source) const {
  if (source.is_boundary()) return in_type.at(source.port);
  return gen_out_type(nodes.at(source.node)).at(source.port);
}

WireType Netlist::sink_type(Endpoint sink) const {
  if (sink.is_boundary()) return out_type.at(sink.port);
  return gen_in_type(nodes.at(sink.node)).at(sink.port);
}

SinkIndex::SinkIndex(const Netlist& n) {
  from_input_.assign(n.in_type.size(), Endpoint{-2, 0});
  from_node_.resize(n.nodes.size());
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    from_node_[v].assign(gen_out_type(n.nodes[v]).size(), Endpoint{-2, 0});
  }
  auto record = [&](Endpoint src, Endpoint sink) {
    Endpoint& slot = src.is_boundary() ? from_input_.at(src.port) : from_node_.at(src.node).at(src.port);
    slot = sink;
  };
  for (std::size_t j = 0; j < n.out_src.size(); ++j) record(n.out_src[j], {Endpoint::kBoundary, static_cast<int>(j)});
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    for (std::size_t p = 0; p < n.in_src[v].size(); ++p) {
      record(n.in_src[v][p], {static_cast<int>(v), static_cast<int>(p)});
    }
  }
}

Endpoint SinkIndex::sink_of(Endpoint source) const {
  if (source.is_boundary()) return from_input_.at(source.port);
  return from_node_.at(source.node).at(source.port);
}

std::vector<Wire> wires_of(const Netlist& n) {
  SinkIndex si(n);
  std::vector<Wire> ws;
  for (std::size_t i = 0; i < n.in_type.size(); ++i) {
    Endpoint s{Endpoint::kBoundary, static_cast<int>(i)};
    ws.push_back({s, si.sink_of(s), n.in_type[i]});
  }
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    auto outs = gen_out_type(n.nodes[v]);
    for (std::size_t p = 0; p < outs.size(); ++p) {
      Endpoint s{static_cast<int>(v), static_cast<int>(p)};
      ws.push_back({s, si.sink_of(s), outs[p]});
    }
  }
  return ws;
}

namespace {

class SegmentBuilder {
 public:
  Netlist net;
  std::vector<int> parent;
  std::vector<WireType> seg_type;
  std::vector<std::vector<int>> node_in_seg, node_out_seg;

  int fresh(WireType c) {
    parent.push_back(static_cast<int>(parent.size()));
    seg_type.push_back(c);
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }

  std::pair<std::vector<int>, std::vector<int>> build(const DiagramTerm& d) {
    switch (d.tag()) {
      case DiagramTerm::Tag::Empty:
        return {};
      case DiagramTerm::Tag::Gen: {
        const Generator& g = d.generator();
        if (g.kind == GenKind::Id) {
          int s = fresh(g.c1);
          return {{s}, {s}};
        }
        if (g.kind == GenKind::Swap) {
          int s1 = fresh(g.c1), s2 = fresh(g.c2);
          return {{s1, s2}, {s2, s1}};
        }
        net.add_node(g);
        std::vector<int> ins, outs;
        for (WireType c : gen_in_type(g)) ins.push_back(fresh(c));
        for (WireType c : gen_out_type(g)) outs.push_back(fresh(c));
        node_in_seg.push_back(ins);
        node_out_seg.push_back(outs);
        return {ins, outs};
      }
      case DiagramTerm::Tag::Seq: {
        auto [i1, o1] = build(d.left());
        auto [i2, o2] = build(d.right());
        for (std::size_t k = 0; k < o1.size(); ++k) unite(o1[k], i2[k]);
        return {i1, o2};
      }
      case DiagramTerm::Tag::Par: {
        auto [i1, o1] = build(d.left());
        auto [i2, o2] = build(d.right());
        i1.insert(i1.end(), i2.begin(), i2.end());
        o1.insert(o1.end(), o2.begin(), o2.end());
        return {i1, o1};
      }
      case DiagramTerm::Tag::Trace: {
        auto [i, o] = build(d.body());
        unite(o.back(), i.back());
        i.pop_back();
        o.pop_back();
        return {i, o};
      }
    }
    return {};
  }
};

}  // namespace

Netlist to_netlist(const DiagramTerm& d) {
  auto [a, b] = type_of(d);
  SegmentBuilder sb;
  auto [ins, outs] = sb.build(d);
  Netlist& n = sb.net;
  n.in_type = a;
  n.out_type = b;
  n.out_src.assign(b.size(), Endpoint{});

  std::map<int, Endpoint> src_of_class;
  std::map<int, bool> has_sink;
  for (std::size_t k = 0; k < ins.size(); ++k) {
    src_of_class[sb.find(ins[k])] = {Endpoint::kBoundary, static_cast<int>(k)};
  }
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    for (std::size_t p = 0; p < sb.node_out_seg[v].size(); ++p) {
      src_of_class[sb.find(sb.node_out_seg[v][p])] = {static_cast<int>(v), static_cast<int>(p)};
    }
  }
  auto source_for = [&](int seg) {
    int r = sb.find(seg);
    has_sink[r] = true;
    auto it = src_of_class.find(r);
    if (it == src_of_class.end()) throw InternalError("dangling wire segment");
    return it->second;
  };
  for (std::size_t j = 0; j < outs.size(); ++j) n.out_src[j] = source_for(outs[j]);
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    for (std::size_t p = 0; p < sb.node_in_seg[v].size(); ++p) {
      n.in_src[v][p] = source_for(sb.node_in_seg[v][p]);
    }
  }
  std::vector<bool> seen(sb.parent.size(), false);
  for (std::size_t s = 0; s < sb.parent.size(); ++s) {
    int r = sb.find(static_cast<int>(s));
    if (seen[r]) continue;
    seen[r] = true;
    if (!src_of_class.count(r) && !has_sink.count(r)) n.loops.push_back(sb.seg_type[r]);
  }
  std::sort(n.loops.begin(), n.loops.end());
  return n;
}

void validate(const Netlist& n) {
  if (n.in_src.size() != n.nodes.size()) throw InternalError("netlist port table size");
  std::map<Endpoint, int> uses;
  auto check = [&](Endpoint src, Endpoint sink) {
    if (src.is_boundary()) {
      if (src.port < 0 || src.port >= static_cast<int>(n.in_type.size())) throw InternalError("bad boundary source");
    } else {
      if (src.node < 0 || src.node >= static_cast<int>(n.nodes.size())) throw InternalError("bad node source");
      if (src.port < 0 || src.port >= static_cast<int>(gen_out_type(n.nodes[src.node]).size())) {
        throw InternalError("bad node source port");
      }
    }
    if (n.source_type(src) != n.sink_type(sink)) throw InternalError("wire colour mismatch");
    uses[src]++;
  };
  if (n.out_src.size() != n.out_type.size()) throw InternalError("output table size");
  for (std::size_t j = 0; j < n.out_src.size(); ++j) check(n.out_src[j], {Endpoint::kBoundary, static_cast<int>(j)});
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    if (is_structural(n.nodes[v].kind)) throw InternalError("structural node in netlist");
    if (n.in_src[v].size() != gen_in_type(n.nodes[v]).size()) throw InternalError("node arity");
    for (std::size_t p = 0; p < n.in_src[v].size(); ++p) check(n.in_src[v][p], {static_cast<int>(v), static_cast<int>(p)});
  }
  std::size_t sources = n.in_type.size();
  for (const auto& g : n.nodes) sources += gen_out_type(g).size();
  if (uses.size() != sources) throw InternalError("unwired source");
  for (auto& [e, c] : uses) {
    if (c != 1) throw InternalError("source wired more than once");
  }
}

namespace {

std::string gen_code(const Generator& g) {
  std::string s = std::to_string(static_cast<int>(g.kind));
  if (is_gate(g.kind)) s += "<" + word_text(g.label) + ">";
  return s;
}

// Encodes the part of the netlist reachable from `roots` (node seeds) plus the
// boundary when `with_boundary` is set, labelling nodes in discovery order.
std::string encode_from(const Netlist& n, const SinkIndex& si, const std::vector<int>& seeds,
                        bool with_boundary, std::vector<int>* visited_out) {
  std::vector<int> order(n.nodes.size(), -1);
  std::vector<int> seq;
  auto visit = [&](int v) {
    if (v >= 0 && order[v] < 0) {
      order[v] = static_cast<int>(seq.size());
      seq.push_back(v);
    }
  };
  if (with_boundary) {
    for (std::size_t k = 0; k < n.in_type.size(); ++k) visit(si.sink_of({Endpoint::kBoundary, static_cast<int>(k)}).node);
    for (std::size_t j = 0; j < n.out_type.size(); ++j) visit(n.out_src[j].node);
  }
  for (int s : seeds) visit(s);
  for (std::size_t q = 0; q < seq.size(); ++q) {
    int v = seq[q];
    for (const Endpoint& e : n.in_src[v]) visit(e.node);
    auto outs = gen_out_type(n.nodes[v]).size();
    for (std::size_t p = 0; p < outs; ++p) visit(si.sink_of({v, static_cast<int>(p)}).node);
  }
  auto ep = [&](Endpoint e) {
    if (e.is_boundary()) return "i" + std::to_string(e.port);
    return std::to_string(order[e.node]) + "." + std::to_string(e.port);
  };
  std::string s;
  for (int v : seq) {
    s += gen_code(n.nodes[v]) + "(";
    for (const Endpoint& e : n.in_src[v]) s += ep(e) + ",";
    s += ")";
  }
  if (with_boundary) {
    s += "|out:";
    for (const Endpoint& e : n.out_src) s += ep(e) + ",";
  }
  if (visited_out) *visited_out = seq;
  return s;
}

}  // namespace

std::string canonical_form(const Netlist& n) {
  SinkIndex si(n);
  std::string s = type_string(n.in_type) + ">" + type_string(n.out_type) + "#";
  std::vector<int> main_part;
  s += encode_from(n, si, {}, true, &main_part);
  std::vector<bool> done(n.nodes.size(), false);
  for (int v : main_part) done[v] = true;
  std::vector<std::string> comps;
  for (std::size_t u = 0; u < n.nodes.size(); ++u) {
    if (done[u]) continue;
    std::vector<int> comp;
    encode_from(n, si, {static_cast<int>(u)}, false, &comp);
    std::string best;
    for (int r : comp) {
      std::string e = encode_from(n, si, {r}, false, nullptr);
      if (best.empty() || e < best) best = e;
    }
    for (int v : comp) done[v] = true;
    comps.push_back(best);
  }
  std::sort(comps.begin(), comps.end());
  for (auto& c : comps) s += "#" + c;
  std::vector<WireType> loops = n.loops;
  std::sort(loops.begin(), loops.end());
  s += "#loops:";
  for (WireType c : loops) s += wire_char(c);
  return s;
}

bool netlists_isomorphic(const Netlist& a, const Netlist& b) {
  return canonical_form(a) == canonical_form(b);
}

DiagramTerm netlist_to_term(const Netlist& n) {
  const int N = static_cast<int>(n.nodes.size());
  // Node order: Kahn-style, falling back to the first node with an available
  // input when only cycles remain.
  std::vector<int> pos(N, -1);
  std::vector<int> order;
  auto available = [&](Endpoint e) { return e.is_boundary() || pos[e.node] >= 0; };
  while (static_cast<int>(order.size()) < N) {
    int pick = -1;
    for (int v = 0; v < N && pick < 0; ++v) {
      if (pos[v] >= 0) continue;
      if (std::all_of(n.in_src[v].begin(), n.in_src[v].end(), available)) pick = v;
    }
    for (int v = 0; v < N && pick < 0; ++v) {
      if (pos[v] >= 0) continue;
      if (std::any_of(n.in_src[v].begin(), n.in_src[v].end(), available)) pick = v;
    }
    for (int v = 0; v < N && pick < 0; ++v) {
      if (pos[v] < 0) pick = v;
    }
    pos[pick] = static_cast<int>(order.size());
    order.push_back(pick);
  }
  // Feedback wires: source node not placed strictly before the sink node.
  struct Feedback {
    Endpoint source;
    Endpoint sink;
    WireType type;
  };
  std::vector<Feedback> fb;
  for (int v : order) {
    for (std::size_t p = 0; p < n.in_src[v].size(); ++p) {
      Endpoint s = n.in_src[v][p];
      if (!s.is_boundary() && pos[s.node] >= pos[v]) fb.push_back({s, {v, static_cast<int>(p)}, n.source_type(s)});
    }
  }
  // Pseudo-source for the k-th feedback wire entering the traced body.
  auto pseudo = [](std::size_t k) { return Endpoint{-2 - static_cast<int>(k), 0}; };
  auto feedback_index = [&](Endpoint sink) -> int {
    for (std::size_t k = 0; k < fb.size(); ++k) {
      if (fb[k].sink == sink) return static_cast<int>(k);
    }
    return -1;
  };

  std::vector<Endpoint> cur;
  ObjectType cur_type;
  for (std::size_t k = 0; k < n.in_type.size(); ++k) {
    cur.push_back({Endpoint::kBoundary, static_cast<int>(k)});
    cur_type.push_back(n.in_type[k]);
  }
  for (std::size_t k = 0; k < fb.size(); ++k) {
    cur.push_back(pseudo(k));
    cur_type.push_back(fb[k].type);
  }
  const ObjectType body_in = cur_type;
  std::vector<DiagramTerm> layers;

  auto permute_to = [&](const std::vector<Endpoint>& target) {
    std::vector<int> perm(cur.size());
    bool ident = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto it = std::find(target.begin(), target.end(), cur[i]);
      perm[i] = static_cast<int>(it - target.begin());
      ident = ident && perm[i] == static_cast<int>(i);
    }
    if (!ident) layers.push_back(permutation_term(cur_type, perm));
    ObjectType nt(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) nt[perm[i]] = cur_type[i];
    cur = target;
    cur_type = nt;
  };

  for (int v : order) {
    std::vector<Endpoint> needs;
    for (std::size_t p = 0; p < n.in_src[v].size(); ++p) {
      int k = feedback_index({v, static_cast<int>(p)});
      needs.push_back(k >= 0 ? pseudo(k) : n.in_src[v][p]);
    }
    std::size_t first = std::find(cur.begin(), cur.end(), needs[0]) - cur.begin();
    std::vector<Endpoint> rest;
    std::size_t insert_at = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (std::find(needs.begin(), needs.end(), cur[i]) != needs.end()) continue;
      if (i < first) ++insert_at;
      rest.push_back(cur[i]);
    }
    std::vector<Endpoint> target(rest.begin(), rest.begin() + insert_at);
    target.insert(target.end(), needs.begin(), needs.end());
    target.insert(target.end(), rest.begin() + insert_at, rest.end());
    permute_to(target);

    std::vector<DiagramTerm> parts;
    for (std::size_t i = 0; i < insert_at; ++i) parts.push_back(DiagramTerm::gen(make_id(cur_type[i])));
    parts.push_back(DiagramTerm::gen(n.nodes[v]));
    for (std::size_t i = insert_at + needs.size(); i < cur.size(); ++i) parts.push_back(DiagramTerm::gen(make_id(cur_type[i])));
    layers.push_back(DiagramTerm::par_all(parts));

    auto outs = gen_out_type(n.nodes[v]);
    std::vector<Endpoint> nc(cur.begin(), cur.begin() + insert_at);
    ObjectType nt(cur_type.begin(), cur_type.begin() + insert_at);
    for (std::size_t p = 0; p < outs.size(); ++p) {
      nc.push_back({v, static_cast<int>(p)});
      nt.push_back(outs[p]);
    }
    nc.insert(nc.end(), cur.begin() + insert_at + needs.size(), cur.end());
    nt.insert(nt.end(), cur_type.begin() + insert_at + needs.size(), cur_type.end());
    cur = nc;
    cur_type = nt;
  }

  std::vector<Endpoint> final_order;
  for (std::size_t j = 0; j < n.out_src.size(); ++j) {
    int k = feedback_index({Endpoint::kBoundary, static_cast<int>(j)});
    final_order.push_back(k >= 0 ? pseudo(k) : n.out_src[j]);
  }
  for (const auto& f : fb) final_order.push_back(f.source);
  // A direct boundary-to-boundary wire may appear as the source of an output.
  permute_to(final_order);

  DiagramTerm body = layers.empty() ? identity_term(body_in) : DiagramTerm::seq_all(layers);
  for (std::size_t k = fb.size(); k-- > 0;) body = DiagramTerm::trace(fb[k].type, body);
  for (WireType c : n.loops) {
    body = DiagramTerm::par(body, DiagramTerm::trace(c, DiagramTerm::gen(make_id(c))));
  }
  return body;
}

std::size_t netlist_pbs(const Netlist& n) {
  return std::count_if(n.nodes.begin(), n.nodes.end(), [](const Generator& g) { return is_pbs(g.kind); });
}

std::size_t netlist_negs(const Netlist& n) {
  return std::count_if(n.nodes.begin(), n.nodes.end(), [](const Generator& g) { return is_neg(g.kind); });
}

std::size_t netlist_queries(const Netlist& n, const std::string& u) {
  std::size_t c = 0;
  for (const auto& g : n.nodes) {
    if (is_gate(g.kind)) c += std::count(g.label.begin(), g.label.end(), u);
  }
  return c;
}

}  // namespace cpbs
