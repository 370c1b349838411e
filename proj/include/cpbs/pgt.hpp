#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cpbs/diagram.hpp"
#include "cpbs/netlist.hpp"
#include "cpbs/semantics.hpp"

namespace cpbs {

// Positions of a gate-free table that are linked by some configuration, closed
// transitively. Each block is one of four shapes (see classify notes in pgt.cpp).
struct PartitionBlock {
  std::vector<int> inputs;
  std::vector<int> outputs;
  int case_ = 1;  // 1 all black, 2 one coloured end per side, 3 two coloured inputs, 4 two coloured outputs
};

struct PartitionAnalysis {
  std::vector<PartitionBlock> blocks;  // sorted by least input position
  std::size_t k = 0;
  std::size_t s_L = 0;
  std::size_t s_R = 0;
};

PartitionAnalysis analyse_partition(const SemanticsTable& t);
std::size_t pbs_lower_bound(const SemanticsTable& t);

enum class StaircaseKind : std::uint8_t { BlackLadder, RedLadder, BlueLadder, RedMerge, RedMergeInverse };
std::string staircase_name(StaircaseKind k);

struct Staircase {
  StaircaseKind kind = StaircaseKind::BlackLadder;
  std::size_t wires = 1;  // inputs for every kind but RedMergeInverse, which counts outputs

  std::size_t size() const;  // number of PBS
  ObjectType in_type() const;
  ObjectType out_type() const;
  DiagramTerm to_term() const;
};

// sigma1 ; pre-negations ; staircases side by side ; post-negations ; sigma2.
struct StairForm {
  ObjectType in_type;
  ObjectType out_type;
  std::vector<int> sigma1;     // input position -> staircase input wire
  std::vector<bool> pre_negs;  // per staircase input wire
  std::vector<Staircase> cases;
  std::vector<bool> post_negs;  // per staircase output wire
  std::vector<int> sigma2;      // staircase output wire -> output position

  std::size_t pbs() const;
  DiagramTerm to_term() const;
};

StairForm synthesize_stair_form(const SemanticsTable& t);

// Tr^l(P ; (id_b | U_1 | ... | U_l)) with P in stair form.
struct PgtForm {
  ObjectType in_type;
  ObjectType out_type;
  std::vector<Generator> gates;
  StairForm core;

  DiagramTerm to_term() const;
};

PgtForm to_pgt_form(const DiagramTerm& d);
bool is_query_pbs_optimal_single(const DiagramTerm& d);

struct BruteForceOptions {
  std::size_t max_pbs = 4;
  std::optional<std::size_t> max_negs;  // defaults to the most the pruned search can place
  std::size_t node_limit = 5'000'000;   // search nodes before BudgetExceeded
};

struct BruteForceResult {
  std::size_t pbs = 0;
  Netlist witness;
  std::size_t explored = 0;
};

// Least PBS count of a diagram with table t whose gate letters meet the query
// lower bounds exactly. Throws NotFound when none exists within max_pbs.
BruteForceResult brute_force_min_pbs(const SemanticsTable& t, const BruteForceOptions& opt = {});
std::size_t brute_force_min_pbs(const SemanticsTable& t, std::size_t max_pbs);

}  // namespace cpbs
