#include <gtest/gtest.h>
#include <gmock/gmock.h>

#include <random>
#include <set>

#include "cpbs/errors.hpp"
#include "cpbs/normal_form.hpp"
#include "cpbs/rewrite.hpp"
#include "cpbs/semantics.hpp"
#include "cpbs/text.hpp"
#include "random_diagram.hpp"

using namespace cpbs;

namespace {

cpbs::testing::RandomDiagramOptions small() {
  cpbs::testing::RandomDiagramOptions o;
  o.letters = {"U", "V", "W"};
  o.max_generators = 8;
  return o;
}

}  // namespace

TEST(Synthesis, IdentityWire) {
  auto nf = synthesize_nf(semantics_table(parse("id[T]")));
  ASSERT_EQ(nf.lines.size(), 2u);
  for (const auto& l : nf.lines) {
    EXPECT_TRUE(l.word.empty());
    EXPECT_FALSE(l.negated);
    EXPECT_EQ(l.dst, l.src);
  }
  auto d = nf.to_term();
  EXPECT_EQ(count_pbs(d), 2u);  // one splitter, one merger
  EXPECT_EQ(count_neg(d), 0u);
  EXPECT_EQ(semantics_table(d), semantics_table(parse("id[T]")));
}

TEST(Synthesis, GateThenNegation) {
  auto nf = synthesize_nf(semantics_table(parse("gate[U] ; neg")));
  ASSERT_EQ(nf.lines.size(), 2u);
  for (const auto& l : nf.lines) {
    EXPECT_EQ(l.word, Word{"U"});
    EXPECT_TRUE(l.negated);
    EXPECT_NE(l.dst.pol, l.src.pol);
  }
  EXPECT_EQ(semantics_table(nf.to_term()), semantics_table(parse("gate[U] ; neg")));
}

TEST(Normalize, EquivalentPairsShareNormalForm) {
  EXPECT_EQ(normalize(parse("tr[T](pbs ; (gate[U] | gate[V]) ; pbs)")),
            normalize(parse("split ; (gate[U,V] | gate[V,H]) ; merge")));
  EXPECT_EQ(normalize(parse("neg[VH] ; neg[HV]")), normalize(parse("id[V]")));
}

TEST(Equivalent, Examples) {
  EXPECT_TRUE(equivalent(parse("gate[U,H] | gate[U,V]"), parse("merge[HV] ; gate[U] ; split[HV]")));
  EXPECT_TRUE(equivalent(parse("pbs ; (gate[U] | gate[U]) ; pbs"), parse("gate[U] | gate[U]")));
  EXPECT_FALSE(equivalent(parse("gate[U.V]"), parse("gate[V.U]")));
  EXPECT_THROW(equivalent(parse("id[T]"), parse("id[V]")), TypeMismatch);
}

TEST(Rewriting, NegationChain) {
  auto run = nf_by_rewriting(parse("neg"));
  EXPECT_EQ(run.nf, normalize(parse("neg")));
  std::set<std::string> used;
  for (const auto& s : run.trace.steps) used.insert(s.rule);
  EXPECT_THAT(used, ::testing::IsSupersetOf({"AX9", "AX4", "AX11"}));
}

TEST(Rewriting, FourLegSplitterIsItsDecomposition) {
  auto run = nf_by_rewriting(parse("pbs"));
  EXPECT_TRUE(netlists_isomorphic(run.result, rule("AX13").rhs));
}

TEST(Rewriting, Guard) {
  auto big = parse("gate[U] ; gate[U] ; gate[U] ; gate[U] ; gate[U]");
  EXPECT_THROW(nf_by_rewriting(big, 4), GuardViolation);
  EXPECT_NO_THROW(nf_by_rewriting(big, 5));
}

TEST(Property, RewritingReachesSynthesis) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 300; ++i) {
    auto d = cpbs::testing::random_diagram(rng, small());
    auto run = nf_by_rewriting(d);
    EXPECT_EQ(run.nf, synthesize_nf(semantics_table(d))) << print(d);
    EXPECT_EQ(semantics_table(run.result), semantics_table(d)) << print(d);
  }
}

TEST(Property, NormalizeIdempotent) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 300; ++i) {
    auto nf = normalize(cpbs::testing::random_diagram(rng));
    EXPECT_EQ(normalize(nf.to_term()), nf);
  }
}

TEST(Property, NetlistReaderInvertsSynthesis) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    auto nf = normalize(cpbs::testing::random_diagram(rng));
    EXPECT_EQ(nf_from_netlist(to_netlist(nf.to_term())), nf);
  }
}

TEST(Property, EquivalenceMatchesTables) {
  std::mt19937_64 rng(54);
  auto o = small();
  o.max_generators = 3;
  o.max_wires = 2;
  o.letters = {"U", "V"};
  std::vector<DiagramTerm> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(cpbs::testing::random_diagram(rng, o));
  std::size_t hits = 0;
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      auto ta = semantics_table(a), tb = semantics_table(b);
      if (ta.in_type != tb.in_type || ta.out_type != tb.out_type) {
        EXPECT_THROW(equivalent(a, b), TypeMismatch);
        continue;
      }
      bool same = tables_equal(ta, tb);
      EXPECT_EQ(equivalent(a, b), same);
      hits += same;
    }
  }
  EXPECT_GT(hits, pool.size());  // some non-trivial equivalent pairs occur
}
