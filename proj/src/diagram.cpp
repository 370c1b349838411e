#include "cpbs/diagram.hpp"

#include <algorithm>
#include <set>

#include "cpbs/errors.hpp"

namespace cpbs {

char wire_char(WireType c) {
  switch (c) {
    case WireType::T:
      return 'T';
    case WireType::V:
      return 'V';
    case WireType::H:
      return 'H';
  }
  return '?';
}

std::string type_string(const ObjectType& a) {
  if (a.empty()) return "I";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += "+";
    s += wire_char(a[i]);
  }
  return s;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::string word_display(const Word& w) {
  if (w.empty()) return "I";
  std::string s;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it != w.rbegin()) s += " ";
    s += *it;
  }
  return s;
}

std::string word_text(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += w[i];
  }
  return s;
}

Generator make_gen(GenKind k) {
  Generator g;
  g.kind = k;
  return g;
}

Generator make_gate(WireType colour, Word w) {
  Generator g;
  g.kind = gate_kind(colour);
  g.label = std::move(w);
  return g;
}

Generator make_id(WireType c) {
  Generator g;
  g.kind = GenKind::Id;
  g.c1 = c;
  return g;
}

Generator make_swap(WireType c1, WireType c2) {
  Generator g;
  g.kind = GenKind::Swap;
  g.c1 = c1;
  g.c2 = c2;
  return g;
}

ObjectType gen_in_type(const Generator& g) {
  using W = WireType;
  switch (g.kind) {
    case GenKind::Pbs4:
      return {W::T, W::T};
    case GenKind::PbsTvVt:
      return {W::T, W::V};
    case GenKind::PbsVtTv:
      return {W::V, W::T};
    case GenKind::PbsHtHt:
      return {W::H, W::T};
    case GenKind::PbsThTh:
      return {W::T, W::H};
    case GenKind::SplitVH:
    case GenKind::SplitHV:
      return {W::T};
    case GenKind::MergeVH:
      return {W::V, W::H};
    case GenKind::MergeHV:
      return {W::H, W::V};
    case GenKind::NegT:
      return {W::T};
    case GenKind::NegVH:
      return {W::V};
    case GenKind::NegHV:
      return {W::H};
    case GenKind::GateT:
      return {W::T};
    case GenKind::GateV:
      return {W::V};
    case GenKind::GateH:
      return {W::H};
    case GenKind::Id:
      return {g.c1};
    case GenKind::Swap:
      return {g.c1, g.c2};
  }
  return {};
}

ObjectType gen_out_type(const Generator& g) {
  using W = WireType;
  switch (g.kind) {
    case GenKind::Pbs4:
      return {W::T, W::T};
    case GenKind::PbsTvVt:
      return {W::V, W::T};
    case GenKind::PbsVtTv:
      return {W::T, W::V};
    case GenKind::PbsHtHt:
      return {W::H, W::T};
    case GenKind::PbsThTh:
      return {W::T, W::H};
    case GenKind::SplitVH:
      return {W::V, W::H};
    case GenKind::SplitHV:
      return {W::H, W::V};
    case GenKind::MergeVH:
    case GenKind::MergeHV:
      return {W::T};
    case GenKind::NegT:
      return {W::T};
    case GenKind::NegVH:
      return {W::H};
    case GenKind::NegHV:
      return {W::V};
    case GenKind::GateT:
      return {W::T};
    case GenKind::GateV:
      return {W::V};
    case GenKind::GateH:
      return {W::H};
    case GenKind::Id:
      return {g.c1};
    case GenKind::Swap:
      return {g.c2, g.c1};
  }
  return {};
}

bool is_pbs(GenKind k) {
  switch (k) {
    case GenKind::Pbs4:
    case GenKind::PbsTvVt:
    case GenKind::PbsVtTv:
    case GenKind::PbsHtHt:
    case GenKind::PbsThTh:
    case GenKind::SplitVH:
    case GenKind::SplitHV:
    case GenKind::MergeVH:
    case GenKind::MergeHV:
      return true;
    default:
      return false;
  }
}

bool is_neg(GenKind k) {
  return k == GenKind::NegT || k == GenKind::NegVH || k == GenKind::NegHV;
}

bool is_gate(GenKind k) {
  return k == GenKind::GateT || k == GenKind::GateV || k == GenKind::GateH;
}

bool is_structural(GenKind k) { return k == GenKind::Id || k == GenKind::Swap; }

WireType gate_colour(GenKind k) {
  switch (k) {
    case GenKind::GateV:
      return WireType::V;
    case GenKind::GateH:
      return WireType::H;
    default:
      return WireType::T;
  }
}

GenKind gate_kind(WireType colour) {
  switch (colour) {
    case WireType::V:
      return GenKind::GateV;
    case WireType::H:
      return GenKind::GateH;
    default:
      return GenKind::GateT;
  }
}

std::string kind_name(GenKind k) {
  switch (k) {
    case GenKind::Pbs4:
      return "pbs";
    case GenKind::PbsTvVt:
      return "pbs[TV.VT]";
    case GenKind::PbsVtTv:
      return "pbs[VT.TV]";
    case GenKind::PbsHtHt:
      return "pbs[HT.HT]";
    case GenKind::PbsThTh:
      return "pbs[TH.TH]";
    case GenKind::SplitVH:
      return "split";
    case GenKind::SplitHV:
      return "split[HV]";
    case GenKind::MergeVH:
      return "merge";
    case GenKind::MergeHV:
      return "merge[HV]";
    case GenKind::NegT:
      return "neg";
    case GenKind::NegVH:
      return "neg[VH]";
    case GenKind::NegHV:
      return "neg[HV]";
    case GenKind::GateT:
      return "gate";
    case GenKind::GateV:
      return "gate[V]";
    case GenKind::GateH:
      return "gate[H]";
    case GenKind::Id:
      return "id";
    case GenKind::Swap:
      return "swap";
  }
  return "?";
}

struct DiagramTerm::Node {
  Tag tag = Tag::Empty;
  Generator gen;
  DiagramTerm a;
  DiagramTerm b;
  WireType traced = WireType::T;
};

DiagramTerm::DiagramTerm() = default;

DiagramTerm::DiagramTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

DiagramTerm DiagramTerm::gen(Generator g) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Gen;
  n->gen = std::move(g);
  return DiagramTerm(n);
}

DiagramTerm DiagramTerm::seq(DiagramTerm a, DiagramTerm b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Seq;
  n->a = std::move(a);
  n->b = std::move(b);
  return DiagramTerm(n);
}

DiagramTerm DiagramTerm::par(DiagramTerm a, DiagramTerm b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Par;
  n->a = std::move(a);
  n->b = std::move(b);
  return DiagramTerm(n);
}

DiagramTerm DiagramTerm::trace(WireType c, DiagramTerm body) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Trace;
  n->traced = c;
  n->a = std::move(body);
  return DiagramTerm(n);
}

DiagramTerm DiagramTerm::empty() { return DiagramTerm(); }

DiagramTerm DiagramTerm::seq_all(const std::vector<DiagramTerm>& ds) {
  if (ds.empty()) throw InternalError("seq_all of nothing");
  DiagramTerm r = ds[0];
  for (std::size_t i = 1; i < ds.size(); ++i) r = seq(r, ds[i]);
  return r;
}

DiagramTerm DiagramTerm::par_all(const std::vector<DiagramTerm>& ds) {
  if (ds.empty()) return empty();
  DiagramTerm r = ds[0];
  for (std::size_t i = 1; i < ds.size(); ++i) r = par(r, ds[i]);
  return r;
}

DiagramTerm::Tag DiagramTerm::tag() const { return node_ ? node_->tag : Tag::Empty; }
const Generator& DiagramTerm::generator() const { return node_->gen; }
const DiagramTerm& DiagramTerm::left() const { return node_->a; }
const DiagramTerm& DiagramTerm::right() const { return node_->b; }
const DiagramTerm& DiagramTerm::body() const { return node_->a; }
WireType DiagramTerm::traced() const { return node_->traced; }

std::pair<ObjectType, ObjectType> type_of(const DiagramTerm& d) {
  switch (d.tag()) {
    case DiagramTerm::Tag::Empty:
      return {{}, {}};
    case DiagramTerm::Tag::Gen:
      return {gen_in_type(d.generator()), gen_out_type(d.generator())};
    case DiagramTerm::Tag::Seq: {
      auto [a1, b1] = type_of(d.left());
      auto [a2, b2] = type_of(d.right());
      if (b1 != a2) {
        throw TypeError("sequential composition mismatch: " + type_string(b1) +
                        " then " + type_string(a2));
      }
      return {a1, b2};
    }
    case DiagramTerm::Tag::Par: {
      auto [a1, b1] = type_of(d.left());
      auto [a2, b2] = type_of(d.right());
      a1.insert(a1.end(), a2.begin(), a2.end());
      b1.insert(b1.end(), b2.begin(), b2.end());
      return {a1, b1};
    }
    case DiagramTerm::Tag::Trace: {
      auto [a, b] = type_of(d.body());
      if (a.empty() || b.empty() || a.back() != d.traced() || b.back() != d.traced()) {
        throw TypeError(std::string("trace over ") + wire_char(d.traced()) +
                        " needs it on the last position of " + type_string(a) +
                        " -> " + type_string(b));
      }
      a.pop_back();
      b.pop_back();
      return {a, b};
    }
  }
  return {{}, {}};
}

namespace {

template <class F>
void for_each_gen(const DiagramTerm& d, F&& f) {
  switch (d.tag()) {
    case DiagramTerm::Tag::Empty:
      return;
    case DiagramTerm::Tag::Gen:
      f(d.generator());
      return;
    case DiagramTerm::Tag::Seq:
    case DiagramTerm::Tag::Par:
      for_each_gen(d.left(), f);
      for_each_gen(d.right(), f);
      return;
    case DiagramTerm::Tag::Trace:
      for_each_gen(d.body(), f);
      return;
  }
}

std::size_t count_traces(const DiagramTerm& d) {
  switch (d.tag()) {
    case DiagramTerm::Tag::Seq:
    case DiagramTerm::Tag::Par:
      return count_traces(d.left()) + count_traces(d.right());
    case DiagramTerm::Tag::Trace:
      return 1 + count_traces(d.body());
    default:
      return 0;
  }
}

}  // namespace

std::size_t count_queries(const DiagramTerm& d, const std::string& u) {
  std::size_t n = 0;
  for_each_gen(d, [&](const Generator& g) {
    if (is_gate(g.kind)) n += std::count(g.label.begin(), g.label.end(), u);
  });
  return n;
}

std::size_t count_pbs(const DiagramTerm& d) {
  std::size_t n = 0;
  for_each_gen(d, [&](const Generator& g) { n += is_pbs(g.kind); });
  return n;
}

std::size_t count_neg(const DiagramTerm& d) {
  std::size_t n = 0;
  for_each_gen(d, [&](const Generator& g) { n += is_neg(g.kind); });
  return n;
}

std::size_t count_generators(const DiagramTerm& d) {
  std::size_t n = 0;
  for_each_gen(d, [&](const Generator& g) { n += !is_structural(g.kind); });
  return n;
}

std::size_t term_size(const DiagramTerm& d) {
  std::size_t n = count_traces(d);
  for_each_gen(d, [&](const Generator& g) { n += is_gate(g.kind) ? g.label.size() : 1; });
  return n;
}

std::vector<std::string> letters_of(const DiagramTerm& d) {
  std::set<std::string> s;
  for_each_gen(d, [&](const Generator& g) { s.insert(g.label.begin(), g.label.end()); });
  return {s.begin(), s.end()};
}

namespace {

Generator mirror(const Generator& g) {
  Generator r = g;
  switch (g.kind) {
    case GenKind::PbsTvVt:
      r.kind = GenKind::PbsVtTv;
      break;
    case GenKind::PbsVtTv:
      r.kind = GenKind::PbsTvVt;
      break;
    case GenKind::SplitVH:
      r.kind = GenKind::MergeVH;
      break;
    case GenKind::SplitHV:
      r.kind = GenKind::MergeHV;
      break;
    case GenKind::MergeVH:
      r.kind = GenKind::SplitVH;
      break;
    case GenKind::MergeHV:
      r.kind = GenKind::SplitHV;
      break;
    case GenKind::NegVH:
      r.kind = GenKind::NegHV;
      break;
    case GenKind::NegHV:
      r.kind = GenKind::NegVH;
      break;
    case GenKind::GateT:
    case GenKind::GateV:
    case GenKind::GateH:
      std::reverse(r.label.begin(), r.label.end());
      break;
    case GenKind::Swap:
      std::swap(r.c1, r.c2);
      break;
    default:
      break;
  }
  return r;
}

}  // namespace

DiagramTerm reflect(const DiagramTerm& d) {
  switch (d.tag()) {
    case DiagramTerm::Tag::Empty:
      return d;
    case DiagramTerm::Tag::Gen:
      return DiagramTerm::gen(mirror(d.generator()));
    case DiagramTerm::Tag::Seq:
      return DiagramTerm::seq(reflect(d.right()), reflect(d.left()));
    case DiagramTerm::Tag::Par:
      return DiagramTerm::par(reflect(d.left()), reflect(d.right()));
    case DiagramTerm::Tag::Trace:
      return DiagramTerm::trace(d.traced(), reflect(d.body()));
  }
  return d;
}

DiagramTerm identity_term(const ObjectType& a) {
  std::vector<DiagramTerm> ids;
  for (WireType c : a) ids.push_back(DiagramTerm::gen(make_id(c)));
  return DiagramTerm::par_all(ids);
}

DiagramTerm permutation_term(const ObjectType& a, const std::vector<int>& perm) {
  if (perm.size() != a.size()) throw InternalError("permutation size mismatch");
  // Bubble sort the wires by destination, emitting one swap layer per exchange.
  std::vector<int> dest = perm;
  ObjectType cur = a;
  std::vector<DiagramTerm> layers;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < dest.size(); ++i) {
      if (dest[i] > dest[i + 1]) {
        std::vector<DiagramTerm> parts;
        for (std::size_t j = 0; j < i; ++j) parts.push_back(DiagramTerm::gen(make_id(cur[j])));
        parts.push_back(DiagramTerm::gen(make_swap(cur[i], cur[i + 1])));
        for (std::size_t j = i + 2; j < cur.size(); ++j) parts.push_back(DiagramTerm::gen(make_id(cur[j])));
        layers.push_back(DiagramTerm::par_all(parts));
        std::swap(dest[i], dest[i + 1]);
        std::swap(cur[i], cur[i + 1]);
        changed = true;
      }
    }
  }
  if (layers.empty()) return identity_term(a);
  return DiagramTerm::seq_all(layers);
}

}  // namespace cpbs
