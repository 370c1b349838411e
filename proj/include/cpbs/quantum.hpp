#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "cpbs/diagram.hpp"
#include "cpbs/semantics.hpp"

namespace cpbs {

using ComplexMatrix = Eigen::MatrixXcd;

struct GateAssignment {
  int dim = 1;
  std::map<std::string, ComplexMatrix> map;
};

// Product over the word in trajectory order: the first letter acts first, so
// it is the rightmost factor.
ComplexMatrix word_matrix(const Word& w, const GateAssignment& g);

ComplexMatrix quantum_matrix(const SemanticsTable& t, const GateAssignment& g);

// A diagram whose gates carry matrices instead of words.
struct InterpretedGate {
  Generator gate;
  ComplexMatrix matrix;
};
struct InterpretedDiagram {
  DiagramTerm shape;
  std::vector<InterpretedGate> gates;  // in term traversal order
};
InterpretedDiagram interpret(const DiagramTerm& d, const GateAssignment& g);

GateAssignment random_separating_assignment(const std::set<std::string>& letters, int dim, std::uint64_t seed);
GateAssignment random_unitary_assignment(const std::set<std::string>& letters, int dim, std::uint64_t seed);

double isometry_defect(const ComplexMatrix& m);  // max |M^dagger M - I|
double max_abs(const ComplexMatrix& m);

}  // namespace cpbs
