#pragma once

// Reference implementations used only by the tests. They work directly on the
// term structure (or on edge bitmasks) and share no code with the library's
// netlist evaluator, so agreement is meaningful.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpbs/diagram.hpp"
#include "cpbs/quantum.hpp"
#include "cpbs/semantics.hpp"

namespace cpbs::testing {

SemanticsTable oracle_table(const DiagramTerm& d);

// Compositional matrix semantics; traces use the feedback sum A + B (sum_k D^k) C.
ComplexMatrix oracle_matrix(const DiagramTerm& d, const GateAssignment& g);

// Largest number of cycles in an edge partition, by dynamic programming over
// edge subsets. A subset is a cycle when it is connected and every vertex
// touched has degree two (a self-loop counts twice).
std::size_t oracle_max_ecd(const std::vector<std::pair<std::string, std::string>>& edges);

// Half the occurrences of each letter across all rows, rounded up.
std::map<std::string, std::size_t> oracle_query_bounds(const SemanticsTable& t);

}  // namespace cpbs::testing
