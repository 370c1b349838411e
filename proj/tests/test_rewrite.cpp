#include <gtest/gtest.h>
#include <gmock/gmock.h>

#include <chrono>
#include <random>
#include <set>

#include "cpbs/errors.hpp"
#include "cpbs/rewrite.hpp"
#include "cpbs/semantics.hpp"
#include "cpbs/text.hpp"
#include "random_diagram.hpp"

using namespace cpbs;
using ::testing::Contains;

namespace {

Netlist net(const std::string& src) { return to_netlist(parse(src)); }

std::set<std::string> rules_used(const ProofTrace& t) {
  std::set<std::string> s;
  for (const auto& step : t.steps) s.insert(step.rule);
  return s;
}

}  // namespace

TEST(Rules, Catalogue) {
  EXPECT_EQ(rule_ids("AX").size(), 17u);
  EXPECT_EQ(rule_ids("DER").size(), 7u);
  EXPECT_EQ(rule_ids("APPE").size(), 14u);
  EXPECT_EQ(rule_ids("APPC").size(), 2u);
  EXPECT_THROW(rule("AX99"), NotFound);
}

TEST(Match, SplitMerge) {
  auto ms = find_matches(net("split ; merge"), "AX9", Direction::L2R);
  EXPECT_EQ(ms.size(), 1u);
  EXPECT_TRUE(find_matches(net("gate[U,V] ; gate[V,V]"), "AX1", Direction::L2R).empty());
}

TEST(Match, RedFusionBindsBothLabels) {
  auto ms = find_matches(net("gate[U,V] ; gate[V,V]"), "AX2", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].bindings.at("U"), Word{"U"});
  EXPECT_EQ(ms[0].bindings.at("W"), Word{"V"});
}

TEST(Match, SplittingEnumeratesFactorisations) {
  // The first parameter is a single letter, the rest a non-empty word.
  auto ms = find_matches(net("gate[U.V.W,V]"), "DER18", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].bindings.at("U"), Word{"U"});
  EXPECT_EQ(ms[0].bindings.at("W"), (Word{"V", "W"}));
  EXPECT_TRUE(find_matches(net("gate[U,V]"), "DER18", Direction::L2R).empty());
}

TEST(Apply, SplitMergeBecomesWire) {
  Netlist n = net("split ; merge");
  auto ms = find_matches(n, "AX9", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_TRUE(netlists_isomorphic(apply(n, ms[0]), net("id[T]")));
}

TEST(Apply, RedDoubleNegation) {
  Netlist n = net("neg[VH] ; neg[HV]");
  auto ms = find_matches(n, "AX7", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_TRUE(netlists_isomorphic(apply(n, ms[0]), net("id[V]")));
}

TEST(Apply, LoopWithGateDisappears) {
  Netlist n = net("tr[V](gate[U,V])");
  auto ms = find_matches(n, "AX6", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  Netlist r = apply(n, ms[0]);
  EXPECT_TRUE(r.nodes.empty());
  EXPECT_TRUE(r.loops.empty());
}

TEST(Apply, RightToLeftInsertsSplitMerge) {
  Netlist n = net("gate[U]");
  auto ms = find_matches(n, "AX9", Direction::R2L);
  ASSERT_EQ(ms.size(), 2u);  // before and after the gate
  Netlist r = apply(n, ms[0]);
  EXPECT_EQ(netlist_pbs(r), 2u);
  EXPECT_EQ(semantics_table(r), semantics_table(n));
}

TEST(Apply, StaleInstance) {
  Netlist n = net("neg[VH] ; neg[HV]");
  auto ms = find_matches(n, "AX7", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  Netlist other = net("gate[U,V] ; neg[VH] ; neg[HV]");
  EXPECT_THROW(apply(other, ms[0]), StaleInstance);
}

TEST(Apply, SurvivorIds) {
  Netlist n = net("gate[A] ; neg ; neg ; gate[B]");
  auto ms = find_matches(n, "APPE25", Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  auto ids = surviving_node_ids(n, ms[0]);
  Netlist r = apply(n, ms[0]);
  ASSERT_EQ(ids.size(), n.nodes.size());
  for (std::size_t v = 0; v < ids.size(); ++v) {
    if (ids[v] < 0) continue;
    EXPECT_EQ(r.nodes[ids[v]], n.nodes[v]);
  }
  EXPECT_EQ(std::count(ids.begin(), ids.end(), -1), 2);
}

TEST(Soundness, EveryRule) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& r : all_rules()) EXPECT_TRUE(check_soundness(r, 5, 0)) << r.id;
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
}

TEST(Soundness, CorruptedRuleRejected) {
  Rule bad = make_rule("BAD", "corrupted red double negation", "neg[VH] ; neg[HV]", "id[H]");
  EXPECT_FALSE(check_soundness(bad));
  auto ms = find_matches(net("neg[VH] ; neg[HV]"), bad, Direction::L2R);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_THROW(apply(net("neg[VH] ; neg[HV]"), ms[0], bad), TypeMismatch);
  Rule wrong_order = make_rule("BAD2", "fusion in the wrong order", "gate[U,V] ; gate[W,V]", "gate[W.U,V]",
                               {{"U", VarKind::AnyWord}, {"W", VarKind::AnyWord}});
  EXPECT_FALSE(check_soundness(wrong_order));
}

TEST(Derivations, AllReplay) {
  for (const auto& id : derivable_rules()) {
    ProofTrace t;
    EXPECT_NO_THROW(t = replay_derivation(id)) << id;
    EXPECT_FALSE(t.steps.empty()) << id;
  }
}

TEST(Derivations, UseExpectedAxioms) {
  EXPECT_THAT(rules_used(replay_derivation("DER19")), ::testing::IsSupersetOf({"AX8", "AX3", "AX2"}));
  EXPECT_THAT(rules_used(replay_derivation("DER21")), ::testing::IsSupersetOf({"AX10", "AX5"}));
  EXPECT_THAT(rules_used(replay_derivation("APPE25")), ::testing::IsSupersetOf({"AX9", "AX4", "AX7", "AX8"}));
}

TEST(Trace, TextFormat) {
  auto t = replay_derivation("DER21");
  std::string text = t.text();
  ASSERT_FALSE(text.empty());
  std::istringstream in(text);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    EXPECT_THAT(line, ::testing::MatchesRegex("[A-Z_0-9]+ (L2R|R2L) @ [0-9a-f]{8}"));
  }
  EXPECT_EQ(lines, t.steps.size());
}

TEST(Property, RewritesPreserveSemantics) {
  std::mt19937_64 rng(41);
  std::size_t applied = 0;
  for (int i = 0; i < 150; ++i) {
    Netlist n = to_netlist(cpbs::testing::random_diagram(rng));
    auto before = semantics_table(n);
    for (const auto& r : all_rules()) {
      if (r.structural) continue;
      for (Direction d : {Direction::L2R, Direction::R2L}) {
        if (!r.allows(d)) continue;
        for (const auto& m : find_matches(n, r, d)) {
          EXPECT_EQ(semantics_table(apply(n, m, r)), before) << r.id;
          ++applied;
        }
      }
    }
  }
  EXPECT_GT(applied, 500u);
}
