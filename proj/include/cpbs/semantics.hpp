#pragma once

#include <string>
#include <vector>

#include "cpbs/diagram.hpp"
#include "cpbs/netlist.hpp"

namespace cpbs {

enum class Pol : std::uint8_t { Vert, Horiz };

inline Pol flip(Pol c) { return c == Pol::Vert ? Pol::Horiz : Pol::Vert; }
char pol_char(Pol c);  // 'V' for vertical, 'H' for horizontal

struct Configuration {
  Pol pol = Pol::Vert;
  int pos = 0;

  bool operator==(const Configuration&) const = default;
  auto operator<=>(const Configuration&) const = default;
};

bool admits(WireType c, Pol p);
// [a], ordered by position then vertical before horizontal.
std::vector<Configuration> configurations(const ObjectType& a);
bool valid_configuration(const ObjectType& a, Configuration c);
// Index of c in configurations(a), or -1.
int configuration_index(const ObjectType& a, Configuration c);

struct Row {
  Configuration in;
  Configuration out;
  Word word;

  bool operator==(const Row&) const = default;
};

struct SemanticsTable {
  ObjectType in_type;
  ObjectType out_type;
  std::vector<Row> rows;  // one per element of configurations(in_type), same order

  bool operator==(const SemanticsTable&) const = default;
};

// Routing of a single non-structural generator: input port and polarisation to
// output port and polarisation. Gates keep the polarisation; the label is
// appended by the caller.
std::pair<int, Pol> route(GenKind k, int in_port, Pol c);

std::pair<Configuration, Word> evaluate(const Netlist& n, Configuration start);
SemanticsTable semantics_table(const Netlist& n);
SemanticsTable semantics_table(const DiagramTerm& d);
bool tables_equal(const SemanticsTable& a, const SemanticsTable& b);
bool is_bijective(const SemanticsTable& t);
bool gate_free(const SemanticsTable& t);

std::string table_tsv(const SemanticsTable& t);

}  // namespace cpbs
