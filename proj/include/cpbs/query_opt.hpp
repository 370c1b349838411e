#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cpbs/diagram.hpp"
#include "cpbs/rewrite.hpp"
#include "cpbs/semantics.hpp"

namespace cpbs {

struct QueryCount {
  std::string oracle;
  std::size_t count = 0;
  std::size_t lower_bound = 0;
};

struct QueryProfile {
  std::vector<QueryCount> entries;  // sorted by oracle name

  std::string tsv() const;
};

// Per letter, half the total number of occurrences over all rows, rounded up.
std::map<std::string, std::size_t> query_lower_bounds(const SemanticsTable& t);
QueryProfile query_profile(const DiagramTerm& d);

struct QueryOptimisation {
  DiagramTerm result;
  ProofTrace trace;  // gate splitting and merging, after normalisation
};

QueryOptimisation optimize_queries_traced(const DiagramTerm& d);
DiagramTerm optimize_queries(const DiagramTerm& d);
bool is_query_optimal(const DiagramTerm& d);

}  // namespace cpbs
