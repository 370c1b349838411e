#include <gtest/gtest.h>

#include <random>

#include "cpbs/normal_form.hpp"
#include "cpbs/query_opt.hpp"
#include "cpbs/semantics.hpp"
#include "cpbs/text.hpp"
#include "oracles.hpp"
#include "random_diagram.hpp"

using namespace cpbs;
using Bounds = std::map<std::string, std::size_t>;

namespace {

const char* kSwitch = "tr[T](pbs ; (gate[U] | gate[V]) ; swap[T,T] ; pbs)";
const char* kCircuit = "split ; (gate[U,V] | id[H]) ; merge ; gate[V] ; split ; (id[V] | gate[U,H]) ; merge";

}  // namespace

TEST(Bounds, Examples) {
  EXPECT_EQ(query_lower_bounds(semantics_table(parse(kSwitch))), (Bounds{{"U", 1}, {"V", 1}}));
  EXPECT_TRUE(query_lower_bounds(semantics_table(parse("pbs ; neg | id[T]"))).empty());
  EXPECT_EQ(query_lower_bounds(semantics_table(parse("gate[U] | gate[U,V]"))), (Bounds{{"U", 2}}));
}

TEST(Profile, SwitchAgainstCircuit) {
  auto sw = query_profile(parse(kSwitch));
  EXPECT_EQ(sw.tsv(), "U\t1\t1\nV\t1\t1\n");
  auto circ = query_profile(parse(kCircuit));
  EXPECT_EQ(circ.tsv(), "U\t2\t1\nV\t1\t1\n");
  EXPECT_TRUE(is_query_optimal(parse(kSwitch)));
  EXPECT_FALSE(is_query_optimal(parse(kCircuit)));
  EXPECT_TRUE(is_query_optimal(DiagramTerm::empty()));
}

TEST(Optimise, TwoRedGatesShareOneQuery) {
  auto d = parse("gate[U,V] | gate[U,V]");
  auto r = optimize_queries(d);
  EXPECT_EQ(count_queries(r, "U"), 1u);
  EXPECT_TRUE(equivalent(r, d));
  auto tr = optimize_queries_traced(d).trace;
  bool merged = false;
  for (const auto& s : tr.steps) merged |= s.rule == "DER23";
  EXPECT_TRUE(merged);
}

TEST(Optimise, AlreadyOptimalKeepsCounts) {
  auto r = optimize_queries(parse("gate[U]"));
  EXPECT_EQ(count_queries(r, "U"), 1u);
  EXPECT_TRUE(is_query_optimal(r));
}

TEST(Optimise, CircuitBecomesTwoQueries) {
  auto r = optimize_queries(parse(kCircuit));
  EXPECT_EQ(count_queries(r, "U"), 1u);
  EXPECT_EQ(count_queries(r, "V"), 1u);
  EXPECT_TRUE(equivalent(r, parse(kCircuit)));
}

TEST(Property, MeetsBoundsExactly) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    auto d = cpbs::testing::random_diagram(rng);
    auto r = optimize_queries(d);
    auto t = semantics_table(d);
    EXPECT_EQ(semantics_table(r), t) << print(d);
    for (const auto& [u, b] : cpbs::testing::oracle_query_bounds(t)) EXPECT_EQ(count_queries(r, u), b) << print(d);
    EXPECT_TRUE(is_query_optimal(r));
  }
}

TEST(Property, TraceStepsAreSoundRules) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 50; ++i) {
    auto run = optimize_queries_traced(cpbs::testing::random_diagram(rng));
    for (const auto& s : run.trace.steps) {
      EXPECT_TRUE(s.rule.rfind("DER", 0) == 0) << s.rule;
    }
  }
}

TEST(Property, Deterministic) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 50; ++i) {
    auto d = cpbs::testing::random_diagram(rng);
    EXPECT_EQ(print(optimize_queries(d)), print(optimize_queries(d)));
  }
}
