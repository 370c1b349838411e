#include "random_diagram.hpp"

#include <algorithm>

namespace cpbs::testing {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

WireType random_colour(std::mt19937_64& rng) {
  static const WireType cs[] = {WireType::T, WireType::T, WireType::V, WireType::H};
  return cs[pick(rng, 4)];
}

std::vector<Generator> candidates(const RandomDiagramOptions& opt, std::mt19937_64& rng) {
  std::vector<Generator> gs;
  for (GenKind k : {GenKind::Pbs4, GenKind::PbsTvVt, GenKind::PbsVtTv, GenKind::PbsHtHt, GenKind::PbsThTh,
                    GenKind::SplitVH, GenKind::SplitHV, GenKind::MergeVH, GenKind::MergeHV}) {
    gs.push_back(make_gen(k));
  }
  if (opt.allow_negations) {
    for (GenKind k : {GenKind::NegT, GenKind::NegVH, GenKind::NegHV}) gs.push_back(make_gen(k));
  }
  if (opt.allow_gates && !opt.letters.empty()) {
    for (WireType c : {WireType::T, WireType::V, WireType::H}) {
      Word w;
      std::size_t len = 1 + pick(rng, 2);
      for (std::size_t i = 0; i < len; ++i) w.push_back(opt.letters[pick(rng, opt.letters.size())]);
      gs.push_back(make_gate(c, w));
      gs.push_back(make_gate(c, w));
    }
  }
  return gs;
}

}  // namespace

DiagramTerm random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opt) {
  ObjectType wires;
  std::size_t start = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < start; ++i) wires.push_back(random_colour(rng));
  DiagramTerm d = identity_term(wires);
  std::size_t budget = pick(rng, opt.max_generators + 1);
  for (std::size_t n = 0; n < budget; ++n) {
    auto gs = candidates(opt, rng);
    std::vector<std::pair<std::size_t, Generator>> fits;
    for (const auto& g : gs) {
      ObjectType in = gen_in_type(g), out = gen_out_type(g);
      if (wires.size() - in.size() + out.size() > opt.max_wires) continue;
      for (std::size_t i = 0; i + in.size() <= wires.size(); ++i) {
        if (std::equal(in.begin(), in.end(), wires.begin() + static_cast<long>(i))) fits.push_back({i, g});
      }
    }
    if (fits.empty()) break;
    auto [at, g] = fits[pick(rng, fits.size())];
    ObjectType in = gen_in_type(g), out = gen_out_type(g);
    std::vector<DiagramTerm> parts;
    for (std::size_t j = 0; j < at; ++j) parts.push_back(DiagramTerm::gen(make_id(wires[j])));
    parts.push_back(DiagramTerm::gen(g));
    for (std::size_t j = at + in.size(); j < wires.size(); ++j) parts.push_back(DiagramTerm::gen(make_id(wires[j])));
    d = DiagramTerm::seq(d, DiagramTerm::par_all(parts));
    ObjectType next(wires.begin(), wires.begin() + static_cast<long>(at));
    next.insert(next.end(), out.begin(), out.end());
    next.insert(next.end(), wires.begin() + static_cast<long>(at + in.size()), wires.end());
    wires = next;

    if (pick(rng, 4) == 0 && wires.size() > 1) {
      std::vector<int> perm(wires.size());
      for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = static_cast<int>(j);
      std::shuffle(perm.begin(), perm.end(), rng);
      d = DiagramTerm::seq(d, permutation_term(wires, perm));
      ObjectType moved(wires.size());
      for (std::size_t j = 0; j < wires.size(); ++j) moved[perm[j]] = wires[j];
      wires = moved;
    }
  }
  if (opt.allow_traces) {
    for (int t = 0; t < 2 && pick(rng, 2) == 0; ++t) {
      auto [a, b] = type_of(d);
      if (a.size() < 2 || b.size() < 2) break;
      std::vector<std::size_t> same;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == a.back()) same.push_back(j);
      }
      if (same.empty()) break;
      std::size_t j = same[pick(rng, same.size())];
      std::vector<int> perm(b.size());
      int next = 0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i != j) perm[i] = next++;
      }
      perm[j] = static_cast<int>(b.size() - 1);
      d = DiagramTerm::trace(a.back(), DiagramTerm::seq(d, permutation_term(b, perm)));
    }
  }
  return d;
}

}  // namespace cpbs::testing
