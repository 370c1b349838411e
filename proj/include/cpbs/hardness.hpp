#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cpbs/diagram.hpp"

namespace cpbs {

// Undirected multigraph; self-loops and parallel edges allowed.
struct EulerianGraph {
  std::vector<std::string> vertices;                          // first-appearance order
  std::vector<std::pair<std::string, std::string>> edges;     // input order

  void validate() const;  // throws NotEulerian
};

// One `u v` pair per line, '#' comments.
EulerianGraph parse_edge_list(const std::string& text);

struct Orientation {
  std::vector<std::pair<std::string, std::string>> arcs;  // arcs[p] orients edges[p]: (tail, head)
  Word w;                                                 // w[p] = tail of arc p
  std::vector<int> sigma;                                 // head of arc p = w[sigma[p]]
};

Orientation orient_eulerian(const EulerianGraph& g, std::uint64_t seed = 0);

// Black router on n wires: vertical stays, horizontal goes from p to sigma(p).
DiagramTerm build_D_sigma(const std::vector<int>& sigma);
DiagramTerm build_C_w_sigma(const Word& w, const std::vector<int>& sigma);

struct CycleStep {
  int edge = 0;
  bool forward = true;  // traversed as (first, second) of the undirected edge
};

struct CycleDecomposition {
  std::vector<std::vector<CycleStep>> cycles;  // each a closed walk, steps in traversal order

  std::size_t r() const { return cycles.size(); }
};

void validate_decomposition(const EulerianGraph& g, const CycleDecomposition& d);  // InvalidDecomposition
CycleDecomposition max_ecd_bruteforce(const EulerianGraph& g, std::size_t max_edges = 10);

// One black ladder per cycle sandwiching the gates; negations pair up on the
// edges whose traversal runs against the reference orientation.
DiagramTerm diagram_from_decomposition(const EulerianGraph& g, const Orientation& o, const CycleDecomposition& d);

}  // namespace cpbs
