#include "cpbs/normal_form.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "cpbs/errors.hpp"

namespace cpbs {

namespace {

WireType pol_colour(Pol p) { return p == Pol::Vert ? WireType::V : WireType::H; }

DiagramTerm layer(const std::vector<DiagramTerm>& parts) {
  return parts.empty() ? DiagramTerm::empty() : DiagramTerm::par_all(parts);
}

}  // namespace

DiagramTerm NormalForm::to_term() const {
  if (lines.empty()) return DiagramTerm::empty();
  std::vector<DiagramTerm> s, g, f, m;
  for (WireType c : in_type) s.push_back(DiagramTerm::gen(c == WireType::T ? make_gen(GenKind::SplitVH) : make_id(c)));
  ObjectType after_f;
  std::vector<int> perm;
  for (const auto& l : lines) {
    WireType c = l.colour();
    g.push_back(DiagramTerm::gen(l.word.empty() ? make_id(c) : make_gate(c, l.word)));
    if (l.negated) {
      f.push_back(DiagramTerm::gen(make_gen(c == WireType::V ? GenKind::NegVH : GenKind::NegHV)));
    } else {
      f.push_back(DiagramTerm::gen(make_id(c)));
    }
    after_f.push_back(pol_colour(l.dst.pol));
    perm.push_back(configuration_index(out_type, l.dst));
  }
  for (WireType c : out_type) m.push_back(DiagramTerm::gen(c == WireType::T ? make_gen(GenKind::MergeVH) : make_id(c)));
  return DiagramTerm::seq_all({layer(s), layer(g), layer(f), permutation_term(after_f, perm), layer(m)});
}

NormalForm synthesize_nf(const SemanticsTable& t) {
  if (!is_bijective(t)) throw NotBijective("configuration map is not a bijection");
  NormalForm nf;
  nf.in_type = t.in_type;
  nf.out_type = t.out_type;
  for (const auto& r : t.rows) nf.lines.push_back({r.in, r.word, r.in.pol != r.out.pol, r.out});
  if (!tables_equal(semantics_table(nf.to_term()), t)) throw InternalError("synthesised normal form has other semantics");
  return nf;
}

NormalForm normalize(const DiagramTerm& d) { return synthesize_nf(semantics_table(d)); }

bool equivalent(const DiagramTerm& a, const DiagramTerm& b) {
  if (type_of(a) != type_of(b)) throw TypeMismatch("diagrams have different types");
  return normalize(a) == normalize(b);
}

NormalForm nf_from_netlist(const Netlist& n) {
  auto bad = [](const std::string& why) -> NormalForm { throw PreconditionViolated("not in normal form: " + why); };
  if (!n.loops.empty()) return bad("closed loop");
  SinkIndex si(n);
  NormalForm nf;
  nf.in_type = n.in_type;
  nf.out_type = n.out_type;
  for (Configuration c : configurations(n.in_type)) {
    NfLine line;
    line.src = c;
    Endpoint src{Endpoint::kBoundary, c.pos};
    Pol pol = c.pol;
    Endpoint sink = si.sink_of(src);
    int stage = 0;  // 0 split, 1 gate, 2 negation, 3 merge, 4 output
    if (n.in_type[c.pos] == WireType::T) {
      if (sink.is_boundary() || n.nodes[sink.node].kind != GenKind::SplitVH) return bad("black input without splitter");
      src = {sink.node, pol == Pol::Vert ? 0 : 1};
      sink = si.sink_of(src);
    }
    stage = 1;
    while (!sink.is_boundary()) {
      const Generator& g = n.nodes[sink.node];
      if (is_gate(g.kind) && g.kind != GenKind::GateT && stage <= 1) {
        if (g.label.empty()) return bad("empty gate");
        line.word = g.label;
        stage = 2;
      } else if ((g.kind == GenKind::NegVH || g.kind == GenKind::NegHV) && stage <= 2) {
        line.negated = true;
        pol = flip(pol);
        stage = 3;
      } else if (g.kind == GenKind::MergeVH) {
        if ((sink.port == 0) != (pol == Pol::Vert)) throw InternalError("merge port against polarisation");
        Endpoint out = si.sink_of({sink.node, 0});
        if (!out.is_boundary()) return bad("merger not at the output");
        line.dst = {pol, out.port};
        stage = 4;
        break;
      } else {
        return bad("unexpected " + kind_name(g.kind));
      }
      sink = si.sink_of({sink.node, 0});
    }
    if (stage != 4) {
      if (n.out_type[sink.port] == WireType::T) return bad("black output without merger");
      line.dst = {pol, sink.port};
    }
    nf.lines.push_back(line);
  }
  return nf;
}

namespace {

// Orchestrates rule applications on a netlist, keeping a trace.
class Rewriter {
 public:
  explicit Rewriter(Netlist n) : net_(std::move(n)) {}

  using Pred = std::function<bool(const Netlist&, const RuleInstance&)>;

  // Applies the first match satisfying pred; returns the surviving-id map of
  // the old netlist, or nullopt when there was no match.
  std::optional<std::vector<int>> step(const std::string& id, Direction d, const Pred& pred = nullptr) {
    for (const auto& m : find_matches(net_, id, d)) {
      if (pred && !pred(net_, m)) continue;
      auto ids = surviving_node_ids(net_, m);
      net_ = apply(net_, m);
      trace_.record(m);
      if (trace_.steps.size() > kMaxSteps) throw NonTermination("rewriting did not reach a normal form");
      return ids;
    }
    return std::nullopt;
  }

  bool exhaust(const std::string& id, Direction d, const Pred& pred = nullptr) {
    bool any = false;
    while (step(id, d, pred)) any = true;
    return any;
  }

  // Index of the node appended by the last rewrite for the given pattern node.
  int inserted(const std::string& id, Direction d, int pattern_node) const {
    const Netlist& to = rule(id).to(d);
    return static_cast<int>(net_.nodes.size() - to.nodes.size()) + pattern_node;
  }

  const Netlist& net() const { return net_; }
  ProofTrace& trace() { return trace_; }

 private:
  static constexpr std::size_t kMaxSteps = 20000;
  Netlist net_;
  ProofTrace trace_;
};

std::optional<int> find_kind(const Netlist& n, std::initializer_list<GenKind> ks) {
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    if (std::find(ks.begin(), ks.end(), n.nodes[v].kind) != ks.end()) return static_cast<int>(v);
  }
  return std::nullopt;
}

Rewriter::Pred node_is(int pattern_node, int host_node) {
  return [=](const Netlist&, const RuleInstance& m) { return m.node_map[pattern_node] == host_node; };
}

Rewriter::Pred wire_from(Endpoint src) {
  return [=](const Netlist&, const RuleInstance& m) { return m.wire_loop[0] < 0 && m.wire_source[0] == src; };
}

// Black negation or black gate v: make it feed a splitter, then push it through.
void push_black_through_split(Rewriter& rw, int v) {
  const std::string through = rw.net().nodes[v].kind == GenKind::NegT ? "AX4" : "AX5";
  SinkIndex si(rw.net());
  Endpoint out = si.sink_of({v, 0});
  if (out.is_boundary() || rw.net().nodes[out.node].kind != GenKind::SplitVH) {
    auto ids = rw.step("AX9", Direction::R2L, wire_from({v, 0}));
    if (!ids) throw InternalError("no wire after black node");
    v = (*ids)[v];
  }
  if (!rw.step(through, Direction::L2R, node_is(0, v))) throw InternalError(through + " did not apply");
}

bool blue_empty_gate(Rewriter& rw) {
  const Netlist& n = rw.net();
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    if (n.nodes[v].kind != GenKind::GateH || !n.nodes[v].label.empty()) continue;
    int g = static_cast<int>(v);
    auto ids = rw.step("AX8", Direction::R2L, wire_from({g, 0}));
    g = (*ids)[g];
    int nhv = rw.inserted("AX8", Direction::R2L, 0);
    auto ids2 = rw.step("APPC2", Direction::L2R, [&](const Netlist&, const RuleInstance& m) {
      return m.node_map[0] == g && m.node_map[1] == nhv;
    });
    if (!ids2) throw InternalError("APPC2 did not apply");
    rw.step("AX1", Direction::L2R);
    rw.step("AX8", Direction::L2R);
    return true;
  }
  return false;
}

// gate[X,H] ; gate[Y,H] becomes gate[X.Y,H] by detouring through red.
bool fuse_blue(Rewriter& rw) {
  const Netlist& n = rw.net();
  SinkIndex si(n);
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    if (n.nodes[v].kind != GenKind::GateH) continue;
    Endpoint nx = si.sink_of({static_cast<int>(v), 0});
    if (nx.is_boundary() || n.nodes[nx.node].kind != GenKind::GateH || nx.node == static_cast<int>(v)) continue;
    int gx = static_cast<int>(v), gy = nx.node;
    // neg[HV] ; neg[VH] before X and after Y.
    auto pre = [&](const Netlist&, const RuleInstance& m) {
      return m.wire_loop[0] < 0 && si.sink_of(m.wire_source[0]) == Endpoint{gx, 0};
    };
    auto ids = rw.step("AX8", Direction::R2L, pre);
    gx = (*ids)[gx];
    gy = (*ids)[gy];
    int nvh1 = rw.inserted("AX8", Direction::R2L, 1);
    ids = rw.step("AX8", Direction::R2L, wire_from({gy, 0}));
    gx = (*ids)[gx];
    gy = (*ids)[gy];
    nvh1 = (*ids)[nvh1];
    ids = rw.step("AX3", Direction::R2L, [&](const Netlist&, const RuleInstance& m) {
      return m.node_map[0] == nvh1 && m.node_map[1] == gx;
    });
    gy = (*ids)[gy];
    int rx = rw.inserted("AX3", Direction::R2L, 0);
    int nvh2 = rw.inserted("AX3", Direction::R2L, 1);
    ids = rw.step("AX3", Direction::R2L, [&](const Netlist&, const RuleInstance& m) {
      return m.node_map[0] == nvh2 && m.node_map[1] == gy;
    });
    rx = (*ids)[rx];
    int ry = rw.inserted("AX3", Direction::R2L, 0);
    ids = rw.step("AX2", Direction::L2R, [&](const Netlist&, const RuleInstance& m) {
      return m.node_map[0] == rx && m.node_map[1] == ry;
    });
    int rxy = rw.inserted("AX2", Direction::L2R, 0);
    SinkIndex s2(rw.net());
    Endpoint after = s2.sink_of({rxy, 0});
    ids = rw.step("AX7", Direction::L2R, node_is(0, after.node));
    rxy = (*ids)[rxy];
    ids = rw.step("AX3", Direction::L2R, node_is(0, rxy));
    if (!ids) throw InternalError("blue fusion did not close");
    rw.step("AX8", Direction::L2R);
    return true;
  }
  return false;
}

}  // namespace

RewriteRun nf_by_rewriting(const DiagramTerm& d, std::size_t max_generators) {
  if (count_generators(d) > max_generators) {
    throw GuardViolation("rewriting oracle limited to " + std::to_string(max_generators) + " generators");
  }
  Rewriter rw(to_netlist(d));
  const auto F = Direction::L2R;
  const auto B = Direction::R2L;

  for (const char* ax : {"AX13", "AX14", "AX15", "AX16", "AX17"}) rw.exhaust(ax, F);

  while (auto v = find_kind(rw.net(), {GenKind::NegT, GenKind::GateT})) push_black_through_split(rw, *v);

  rw.exhaust("AX11", F);
  rw.exhaust("AX12", F);

  rw.exhaust("AX10", F);
  rw.exhaust("APPE28", F);
  rw.exhaust("AX9", B, [](const Netlist& n, const RuleInstance& m) {
    return m.wire_loop[0] < 0 && m.wire_source[0].is_boundary() && SinkIndex(n).sink_of(m.wire_source[0]).is_boundary();
  });

  // Coloured chains.
  for (;;) {
    if (rw.step("AX7", F) || rw.step("AX8", F)) continue;
    if (rw.step("AX1", F) || blue_empty_gate(rw)) continue;
    if (rw.step("AX2", F)) continue;
    if (rw.step("AX3", B) || rw.step("APPC2", B)) continue;
    if (fuse_blue(rw)) continue;
    if (rw.step("AX6", F) || rw.step("APPC1", F) || rw.step("APPE26", F) || rw.step("APPE27", F)) continue;
    break;
  }

  RewriteRun run;
  run.result = rw.net();
  run.nf = nf_from_netlist(run.result);
  run.trace = rw.trace();
  return run;
}

}  // namespace cpbs
