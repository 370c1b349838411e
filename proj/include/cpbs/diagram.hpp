#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cpbs {

enum class WireType : std::uint8_t { T, V, H };

using ObjectType = std::vector<WireType>;

// Letters are stored in trajectory order: the first letter is applied first.
using Word = std::vector<std::string>;

char wire_char(WireType c);
std::string type_string(const ObjectType& a);
Word concat(const Word& a, const Word& b);
// Function-composition order, last-applied letter leftmost ("VU").
std::string word_display(const Word& w);
// Trajectory order joined with '.', "1" for the empty word.
std::string word_text(const Word& w);

enum class GenKind : std::uint8_t {
  Pbs4,
  PbsTvVt,
  PbsVtTv,
  PbsHtHt,
  PbsThTh,
  SplitVH,
  SplitHV,
  MergeVH,
  MergeHV,
  NegT,
  NegVH,
  NegHV,
  GateT,
  GateV,
  GateH,
  Id,
  Swap,
};

struct Generator {
  GenKind kind = GenKind::Id;
  Word label;                      // gates only
  WireType c1 = WireType::T;       // id colour, swap first colour
  WireType c2 = WireType::T;       // swap second colour

  bool operator==(const Generator&) const = default;
};

Generator make_gen(GenKind k);
Generator make_gate(WireType colour, Word w);
Generator make_id(WireType c);
Generator make_swap(WireType c1, WireType c2);

ObjectType gen_in_type(const Generator& g);
ObjectType gen_out_type(const Generator& g);
bool is_pbs(GenKind k);
bool is_neg(GenKind k);
bool is_gate(GenKind k);
bool is_structural(GenKind k);
WireType gate_colour(GenKind k);
GenKind gate_kind(WireType colour);
std::string kind_name(GenKind k);

class DiagramTerm {
 public:
  enum class Tag : std::uint8_t { Gen, Seq, Par, Trace, Empty };

  DiagramTerm();  // Empty

  static DiagramTerm gen(Generator g);
  static DiagramTerm seq(DiagramTerm a, DiagramTerm b);
  static DiagramTerm par(DiagramTerm a, DiagramTerm b);
  static DiagramTerm trace(WireType c, DiagramTerm body);
  static DiagramTerm empty();
  // Left-nested fold; empty list gives Empty (par) or fails (seq).
  static DiagramTerm seq_all(const std::vector<DiagramTerm>& ds);
  static DiagramTerm par_all(const std::vector<DiagramTerm>& ds);

  Tag tag() const;
  const Generator& generator() const;
  const DiagramTerm& left() const;
  const DiagramTerm& right() const;
  const DiagramTerm& body() const;
  WireType traced() const;

 private:
  struct Node;
  explicit DiagramTerm(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

std::pair<ObjectType, ObjectType> type_of(const DiagramTerm& d);

std::size_t count_queries(const DiagramTerm& d, const std::string& u);
std::size_t count_pbs(const DiagramTerm& d);
std::size_t count_neg(const DiagramTerm& d);
// Number of non-structural generators.
std::size_t count_generators(const DiagramTerm& d);
// |D|: gate contributes its word length, trace contributes 1, others 1.
std::size_t term_size(const DiagramTerm& d);
std::vector<std::string> letters_of(const DiagramTerm& d);

// Horizontal reflection (mirror image, paths reversed).
DiagramTerm reflect(const DiagramTerm& d);

// Identity on an object type, Empty for the unit object.
DiagramTerm identity_term(const ObjectType& a);
// Wire permutation: input wire i goes to output position perm[i].
DiagramTerm permutation_term(const ObjectType& a, const std::vector<int>& perm);

}  // namespace cpbs
