#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cpbs/diagram.hpp"
#include "cpbs/errors.hpp"
#include "cpbs/netlist.hpp"
#include "cpbs/text.hpp"
#include "random_diagram.hpp"

using namespace cpbs;
using W = WireType;

namespace {

DiagramTerm g(Generator x) { return DiagramTerm::gen(std::move(x)); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DiagramTerm corpus(const std::string& name) {
  return parse(read_file(std::filesystem::path(CPBS_CORPUS_DIR) / "diagrams" / (name + ".cpbs")));
}

}  // namespace

TEST(Types, Generators) {
  EXPECT_EQ(type_of(g(make_gen(GenKind::SplitVH))), std::make_pair(ObjectType{W::T}, ObjectType{W::V, W::H}));
  EXPECT_EQ(type_of(g(make_gen(GenKind::MergeHV))), std::make_pair(ObjectType{W::H, W::V}, ObjectType{W::T}));
  EXPECT_EQ(type_of(g(make_gen(GenKind::PbsTvVt))), std::make_pair(ObjectType{W::T, W::V}, ObjectType{W::V, W::T}));
  EXPECT_EQ(type_of(g(make_gen(GenKind::NegHV))), std::make_pair(ObjectType{W::H}, ObjectType{W::V}));
  EXPECT_EQ(type_of(DiagramTerm::empty()), std::make_pair(ObjectType{}, ObjectType{}));
}

TEST(Types, Composition) {
  auto d = DiagramTerm::seq(g(make_gate(W::V, {"U"})), g(make_gen(GenKind::NegVH)));
  EXPECT_EQ(type_of(d), std::make_pair(ObjectType{W::V}, ObjectType{W::H}));
  EXPECT_THROW(type_of(DiagramTerm::seq(g(make_gen(GenKind::SplitVH)), g(make_gen(GenKind::MergeHV)))), TypeError);
  EXPECT_THROW(type_of(DiagramTerm::trace(W::V, g(make_gen(GenKind::Pbs4)))), TypeError);
  EXPECT_NO_THROW(type_of(DiagramTerm::trace(W::T, g(make_gen(GenKind::Pbs4)))));
}

TEST(Counts, Literal) {
  EXPECT_EQ(count_queries(g(make_gate(W::T, {"U", "V", "U"})), "U"), 2u);
  EXPECT_EQ(count_queries(DiagramTerm::empty(), "U"), 0u);
  EXPECT_EQ(count_queries(corpus("switch"), "U"), 1u);
  EXPECT_EQ(count_queries(corpus("switch"), "V"), 1u);
  EXPECT_EQ(count_pbs(corpus("parallel_queries")), 0u);
  EXPECT_EQ(count_pbs(corpus("merged_query")), 2u);
  EXPECT_EQ(count_neg(g(make_gen(GenKind::NegT))), 1u);
  EXPECT_EQ(term_size(g(make_gate(W::T, {"U", "V"}))), 2u);
  EXPECT_EQ(term_size(DiagramTerm::trace(W::T, g(make_gen(GenKind::Pbs4)))), 2u);
}

TEST(Netlist, Shapes) {
  Netlist id = to_netlist(g(make_id(W::T)));
  EXPECT_EQ(id.nodes.size(), 0u);
  EXPECT_EQ(wires_of(id).size(), 1u);

  Netlist right = to_netlist(corpus("half_switch"));
  EXPECT_EQ(netlist_pbs(right), 2u);
  EXPECT_EQ(netlist_queries(right, "U") + netlist_queries(right, "V"), 2u);

  Netlist left = to_netlist(corpus("half_switch_pbs"));
  EXPECT_EQ(netlist_pbs(left), 2u);
  // The traced wire runs from the second splitter back into the first.
  bool feedback = false;
  for (const Wire& w : wires_of(left)) {
    if (!w.source.is_boundary() && !w.sink.is_boundary() && netlist_pbs(left) == 2 &&
        is_pbs(left.nodes[w.source.node].kind) && is_pbs(left.nodes[w.sink.node].kind)) {
      feedback = true;
    }
  }
  EXPECT_TRUE(feedback);
}

TEST(Netlist, Isomorphism) {
  auto uv = DiagramTerm::seq(g(make_gate(W::V, {"U"})), g(make_gate(W::V, {"V"})));
  auto vu = DiagramTerm::seq(g(make_gate(W::V, {"V"})), g(make_gate(W::V, {"U"})));
  EXPECT_FALSE(netlists_isomorphic(to_netlist(uv), to_netlist(vu)));
  auto left = corpus("half_switch_pbs");
  EXPECT_TRUE(netlists_isomorphic(to_netlist(left), to_netlist(left)));

  auto a = g(make_gate(W::T, {"A"})), b = g(make_gate(W::T, {"B"}));
  auto ab = DiagramTerm::par(a, b);
  auto sw = g(make_swap(W::T, W::T));
  auto ba = DiagramTerm::seq_all({sw, DiagramTerm::par(b, a), sw});
  EXPECT_TRUE(netlists_isomorphic(to_netlist(ab), to_netlist(ba)));
  EXPECT_FALSE(netlists_isomorphic(to_netlist(ab), to_netlist(DiagramTerm::par(b, a))));
}

TEST(Netlist, RoundTripThroughTerm) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto d = cpbs::testing::random_diagram(rng);
    Netlist n = to_netlist(d);
    EXPECT_TRUE(netlists_isomorphic(n, to_netlist(netlist_to_term(n)))) << print(d);
  }
}

TEST(Reflect, Involution) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    auto d = cpbs::testing::random_diagram(rng);
    auto r = reflect(d);
    auto [a, b] = type_of(d);
    auto [ra, rb] = type_of(r);
    EXPECT_EQ(ra, b);
    EXPECT_EQ(rb, a);
    EXPECT_TRUE(netlists_isomorphic(to_netlist(reflect(r)), to_netlist(d)));
  }
}

TEST(Permutation, MovesWires) {
  ObjectType a{W::V, W::T, W::H};
  auto p = permutation_term(a, {2, 0, 1});
  EXPECT_EQ(type_of(p).second, (ObjectType{W::T, W::H, W::V}));
  EXPECT_EQ(count_generators(p), 0u);
}

TEST(Text, ParseExamples) {
  auto d = parse("split ; (gate[U,V] | id[H]) ; merge");
  ASSERT_EQ(d.tag(), DiagramTerm::Tag::Seq);
  EXPECT_EQ(type_of(d), std::make_pair(ObjectType{W::T}, ObjectType{W::T}));
  EXPECT_EQ(count_queries(d, "U"), 1u);

  auto t = parse("tr[T](pbs)");
  ASSERT_EQ(t.tag(), DiagramTerm::Tag::Trace);
  EXPECT_EQ(t.traced(), W::T);
  EXPECT_EQ(t.body().generator().kind, GenKind::Pbs4);

  auto w = parse("gate[U.V]");
  EXPECT_EQ(w.generator().kind, GenKind::GateT);
  EXPECT_EQ(w.generator().label, (Word{"U", "V"}));

  EXPECT_EQ(parse("gate[1]").generator().label, Word{});
  EXPECT_EQ(parse("pbs[HT.HT]").generator().kind, GenKind::PbsHtHt);
  EXPECT_EQ(parse("neg[VH]").generator().kind, GenKind::NegVH);
  EXPECT_EQ(parse("empty").tag(), DiagramTerm::Tag::Empty);
}

TEST(Text, Precedence) {
  // '|' binds tighter than ';'.
  auto d = parse("id[T] | id[V] ; swap[T,V]");
  ASSERT_EQ(d.tag(), DiagramTerm::Tag::Seq);
  EXPECT_EQ(d.left().tag(), DiagramTerm::Tag::Par);
}

TEST(Text, Errors) {
  EXPECT_THROW(parse("pbs ;"), SyntaxError);
  EXPECT_THROW(parse("gate[]"), SyntaxError);
  EXPECT_THROW(parse("frob"), SyntaxError);
  EXPECT_THROW(parse("pbs[XX.YY]"), SyntaxError);
  EXPECT_THROW(parse("pbs ; gate[U]"), TypeError);
  try {
    parse("pbs ;\n  (gate[U] | )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Text, RoundTripCorpus) {
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(CPBS_CORPUS_DIR) / "diagrams")) {
    auto d = parse(read_file(entry.path()));
    auto again = parse(print(d));
    EXPECT_TRUE(netlists_isomorphic(to_netlist(d), to_netlist(again))) << entry.path();
    EXPECT_EQ(print(again), print(d));
  }
}

TEST(Text, RoundTripRandom) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    auto d = cpbs::testing::random_diagram(rng);
    EXPECT_TRUE(netlists_isomorphic(to_netlist(d), to_netlist(parse(print(d))))) << print(d);
  }
}

TEST(Text, Assignment) {
  auto a = parse_assignment("# pauli\nX\t0,0 1,0 1,0 0,0\nZ\t1,0 0,0 0,0 -1,0\n");
  EXPECT_EQ(a.dim, 2);
  ASSERT_EQ(a.map.size(), 2u);
  EXPECT_EQ(a.map.at("X")(0, 1), std::complex<double>(1, 0));
  EXPECT_EQ(a.map.at("Z")(1, 1), std::complex<double>(-1, 0));
  EXPECT_THROW(parse_assignment("X\t1,0 0,0 0,0\n"), SyntaxError);
  EXPECT_THROW(parse_assignment("X\t1,0\nY\t1,0 0,0 0,0 1,0\n"), SyntaxError);
  EXPECT_THROW(parse_assignment("X\t1;0\n"), SyntaxError);
}

TEST(Dot, ColoursFollowWireTypes) {
  std::string dot = export_dot(to_netlist(corpus("half_switch")));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("color=red"), std::string::npos);
  EXPECT_NE(dot.find("color=blue"), std::string::npos);
  EXPECT_NE(dot.find("color=black"), std::string::npos);
}
