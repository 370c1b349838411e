#include <gtest/gtest.h>

#include <random>

#include "cpbs/errors.hpp"
#include "cpbs/normal_form.hpp"
#include "cpbs/pgt.hpp"
#include "cpbs/query_opt.hpp"
#include "cpbs/semantics.hpp"
#include "cpbs/text.hpp"
#include "oracles.hpp"
#include "random_diagram.hpp"

using namespace cpbs;

namespace {

SemanticsTable table(const char* src) { return semantics_table(parse(src)); }

cpbs::testing::RandomDiagramOptions gate_free_options() {
  cpbs::testing::RandomDiagramOptions o;
  o.allow_gates = false;
  return o;
}

}  // namespace

TEST(Partition, Identity) {
  auto p = analyse_partition(table("id[T] | id[T]"));
  EXPECT_EQ(p.k, 2u);
  EXPECT_EQ(p.s_L, 0u);
  EXPECT_EQ(pbs_lower_bound(table("id[T] | id[T]")), 0u);
}

TEST(Partition, Splitter) {
  auto p = analyse_partition(table("split"));
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_EQ(p.blocks[0].case_, 4);
  EXPECT_EQ(p.blocks[0].outputs.size(), 2u);
  EXPECT_EQ(pbs_lower_bound(table("split")), 1u);
}

TEST(Partition, FourLegSplitter) {
  auto p = analyse_partition(table("pbs"));
  EXPECT_EQ(p.k, 1u);
  EXPECT_EQ(p.s_L, 0u);
  EXPECT_EQ(p.blocks[0].case_, 1);
  EXPECT_EQ(pbs_lower_bound(table("pbs")), 1u);
}

TEST(Partition, RejectsGates) { EXPECT_THROW(analyse_partition(table("gate[U]")), HasGates); }

TEST(StairForm, Examples) {
  auto sf = synthesize_stair_form(table("split ; merge"));
  EXPECT_EQ(sf.pbs(), 0u);
  EXPECT_EQ(count_pbs(sf.to_term()), 0u);

  sf = synthesize_stair_form(table("pbs"));
  ASSERT_EQ(sf.cases.size(), 1u);
  EXPECT_EQ(sf.cases[0].kind, StaircaseKind::BlackLadder);
  EXPECT_EQ(sf.cases[0].wires, 2u);
  EXPECT_EQ(semantics_table(sf.to_term()), table("pbs"));
}

TEST(Staircase, Families) {
  for (auto kind : {StaircaseKind::BlackLadder, StaircaseKind::RedLadder, StaircaseKind::BlueLadder,
                    StaircaseKind::RedMerge, StaircaseKind::RedMergeInverse}) {
    for (std::size_t m = 2; m <= 5; ++m) {
      Staircase s{kind, m};
      auto d = s.to_term();
      EXPECT_EQ(count_pbs(d), s.size()) << staircase_name(kind) << m;
      EXPECT_EQ(s.size(), m - 1);
      EXPECT_EQ(type_of(d), std::make_pair(s.in_type(), s.out_type()));
      auto t = semantics_table(d);
      // Each staircase is one block meeting the bound with equality.
      EXPECT_EQ(analyse_partition(t).blocks.size(), 1u) << staircase_name(kind) << m;
      EXPECT_EQ(pbs_lower_bound(t), s.size()) << staircase_name(kind) << m;
      EXPECT_EQ(t, cpbs::testing::oracle_table(d));
    }
  }
}

TEST(Property, StairFormMeetsBound) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 500; ++i) {
    auto t = semantics_table(cpbs::testing::random_diagram(rng, gate_free_options()));
    auto sf = synthesize_stair_form(t);
    auto d = sf.to_term();
    EXPECT_EQ(semantics_table(d), t);
    EXPECT_EQ(count_pbs(d), pbs_lower_bound(t));
    EXPECT_EQ(sf.pbs(), count_pbs(d));
  }
}

TEST(Pgt, RequiresQueryOptimal) {
  EXPECT_THROW(
      to_pgt_form(parse("split ; (gate[U,V] | id[H]) ; merge ; gate[V] ; split ; (id[V] | gate[U,H]) ; merge")),
      NotQueryOptimal);
}

TEST(Pgt, SwitchKeepsTwoSplitters) {
  auto d = parse("tr[T](pbs ; (gate[U] | gate[V]) ; swap[T,T] ; pbs)");
  auto p = to_pgt_form(d);
  EXPECT_EQ(p.gates.size(), 2u);
  auto r = p.to_term();
  EXPECT_TRUE(equivalent(r, d));
  EXPECT_EQ(count_pbs(r), 2u);
}

TEST(Pgt, RepeatedOracleIsNotPbsOptimal) {
  auto top = parse("pbs ; (gate[U] | gate[U]) ; pbs");
  auto r = to_pgt_form(top).to_term();
  EXPECT_EQ(count_pbs(r), 2u);
  EXPECT_EQ(count_queries(r, "U"), 2u);
  auto bf = brute_force_min_pbs(semantics_table(top), BruteForceOptions{});
  EXPECT_EQ(bf.pbs, 0u);
  EXPECT_EQ(semantics_table(bf.witness), semantics_table(top));
}

TEST(Pgt, Idempotent) {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 100; ++i) {
    auto d = optimize_queries(cpbs::testing::random_diagram(rng));
    auto once = to_pgt_form(d).to_term();
    auto twice = to_pgt_form(once).to_term();
    EXPECT_EQ(count_pbs(twice), count_pbs(once));
    EXPECT_LE(count_pbs(once), count_pbs(d));
    EXPECT_TRUE(equivalent(once, d));
  }
}

TEST(SingleQuery, Examples) {
  EXPECT_TRUE(is_query_pbs_optimal_single(parse("id[T]")));
  // One query and two splitters; no splitter-free single-query equivalent exists.
  EXPECT_TRUE(is_query_pbs_optimal_single(parse("merge[HV] ; gate[U] ; split[HV]")));
  EXPECT_THROW(is_query_pbs_optimal_single(parse("gate[U,H] | gate[U,V]")), PreconditionViolated);
  EXPECT_FALSE(is_query_pbs_optimal_single(parse("pbs ; pbs ; gate[U] | id[T]")));
}

TEST(BruteForce, Small) {
  EXPECT_EQ(brute_force_min_pbs(table("id[T]"), 4), 0u);
  EXPECT_EQ(brute_force_min_pbs(table("split"), 4), 1u);
  EXPECT_EQ(brute_force_min_pbs(table("pbs ; pbs"), 4), 0u);
  EXPECT_EQ(brute_force_min_pbs(table("merge[HV] ; gate[U] ; split[HV]"), 4), 2u);
  EXPECT_EQ(brute_force_min_pbs(table("tr[T](pbs ; (gate[U] | gate[V]) ; swap[T,T] ; pbs)"), 4), 2u);
}

TEST(BruteForce, Budgets) {
  EXPECT_THROW(brute_force_min_pbs(table("merge[HV] ; gate[U] ; split[HV]"), 1), NotFound);
  BruteForceOptions tight;
  tight.node_limit = 3;
  EXPECT_THROW(brute_force_min_pbs(table("merge[HV] ; gate[U] ; split[HV]"), tight), BudgetExceeded);
}

TEST(Property, BruteForceAgreesWithBound) {
  std::mt19937_64 rng(73);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto t = semantics_table(cpbs::testing::random_diagram(rng, gate_free_options()));
    if (configurations(t.in_type).size() > 6) continue;
    std::size_t lb = pbs_lower_bound(t);
    if (lb > 4) continue;
    auto r = brute_force_min_pbs(t, BruteForceOptions{});
    EXPECT_EQ(r.pbs, lb);
    EXPECT_EQ(semantics_table(r.witness), t);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Property, SingleQueryPipelineMatchesBruteForce) {
  std::mt19937_64 rng(74);
  cpbs::testing::RandomDiagramOptions o;
  o.max_wires = 2;
  o.max_generators = 6;
  int checked = 0;
  for (int i = 0; i < 400 && checked < 30; ++i) {
    auto d = optimize_queries(cpbs::testing::random_diagram(rng, o));
    bool single = true;
    for (const auto& e : query_profile(d).entries) single &= e.count <= 1;
    if (!single) continue;
    auto t = semantics_table(d);
    if (configurations(t.in_type).size() > 4) continue;
    auto p = count_pbs(to_pgt_form(d).to_term());
    if (p > 4) continue;
    EXPECT_EQ(brute_force_min_pbs(t, BruteForceOptions{}).pbs, p) << print(d);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}
