#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpbs/diagram.hpp"
#include "cpbs/netlist.hpp"
#include "cpbs/rewrite.hpp"
#include "cpbs/semantics.hpp"

namespace cpbs {

// One internal line of the normal form: the input configuration it carries,
// its gate word, whether it is negated and the output slot it reaches.
struct NfLine {
  Configuration src;
  Word word;
  bool negated = false;
  Configuration dst;

  WireType colour() const { return src.pol == Pol::Vert ? WireType::V : WireType::H; }
  bool operator==(const NfLine&) const = default;
};

// Splitters, gates, negations, a permutation and mergers, in that order. Lines
// are kept in the order of configurations(in_type).
struct NormalForm {
  ObjectType in_type;
  ObjectType out_type;
  std::vector<NfLine> lines;

  DiagramTerm to_term() const;
  bool operator==(const NormalForm&) const = default;
};

NormalForm synthesize_nf(const SemanticsTable& t);
NormalForm normalize(const DiagramTerm& d);
bool equivalent(const DiagramTerm& a, const DiagramTerm& b);

// Reads a netlist that already has normal-form shape.
NormalForm nf_from_netlist(const Netlist& n);

struct RewriteRun {
  NormalForm nf;
  Netlist result;
  ProofTrace trace;
};

// Reaches the normal form by applying rules only. Small diagrams only.
RewriteRun nf_by_rewriting(const DiagramTerm& d, std::size_t max_generators = 8);

}  // namespace cpbs
