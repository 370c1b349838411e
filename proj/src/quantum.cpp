#include "cpbs/quantum.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cpbs/errors.hpp"

namespace cpbs {

ComplexMatrix word_matrix(const Word& w, const GateAssignment& g) {
  ComplexMatrix m = ComplexMatrix::Identity(g.dim, g.dim);
  for (const auto& letter : w) {
    auto it = g.map.find(letter);
    if (it == g.map.end()) throw MissingAssignment("no matrix for letter '" + letter + "'");
    m = it->second * m;
  }
  return m;
}

ComplexMatrix quantum_matrix(const SemanticsTable& t, const GateAssignment& g) {
  const int d = g.dim;
  const int rows = static_cast<int>(configurations(t.out_type).size()) * d;
  const int cols = static_cast<int>(configurations(t.in_type).size()) * d;
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    int r = configuration_index(t.out_type, t.rows[i].out);
    m.block(r * d, static_cast<int>(i) * d, d, d) = word_matrix(t.rows[i].word, g);
  }
  return m;
}

namespace {

void collect(const DiagramTerm& d, const GateAssignment& g, std::vector<InterpretedGate>& out) {
  switch (d.tag()) {
    case DiagramTerm::Tag::Gen:
      if (is_gate(d.generator().kind)) out.push_back({d.generator(), word_matrix(d.generator().label, g)});
      return;
    case DiagramTerm::Tag::Seq:
    case DiagramTerm::Tag::Par:
      collect(d.left(), g, out);
      collect(d.right(), g, out);
      return;
    case DiagramTerm::Tag::Trace:
      collect(d.body(), g, out);
      return;
    case DiagramTerm::Tag::Empty:
      return;
  }
}

ComplexMatrix embed_2x2(const Eigen::Matrix2cd& u, int dim) {
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  m.topLeftCorner(2, 2) = u;
  return m;
}

}  // namespace

InterpretedDiagram interpret(const DiagramTerm& d, const GateAssignment& g) {
  InterpretedDiagram r;
  r.shape = d;
  collect(d, g, r.gates);
  return r;
}

GateAssignment random_separating_assignment(const std::set<std::string>& letters, int dim, std::uint64_t seed) {
  if (dim < 2) throw PreconditionViolated("separating assignment needs dim >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd had;
  had << s, s, s, -s;
  GateAssignment g;
  g.dim = dim;
  for (const auto& u : letters) {
    double theta = angle(rng);
    Eigen::Matrix2cd phase = Eigen::Matrix2cd::Zero();
    phase(0, 0) = 1.0;
    phase(1, 1) = std::polar(1.0, theta);
    g.map[u] = embed_2x2(had * phase, dim);
  }
  return g;
}

GateAssignment random_unitary_assignment(const std::set<std::string>& letters, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GateAssignment g;
  g.dim = dim;
  for (const auto& u : letters) {
    ComplexMatrix z(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) z(i, j) = {normal(rng), normal(rng)};
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    g.map[u] = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  }
  return g;
}

double isometry_defect(const ComplexMatrix& m) {
  ComplexMatrix e = m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols());
  return max_abs(e);
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace cpbs
