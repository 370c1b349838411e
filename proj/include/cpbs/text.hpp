#pragma once

#include <string>

#include "cpbs/diagram.hpp"
#include "cpbs/netlist.hpp"
#include "cpbs/quantum.hpp"

namespace cpbs {

// Text format:
//   term := par (';' par)*          ';' is left-to-right (first operand first)
//   par  := atom ('|' atom)*
//   atom := gen | '(' term ')' | 'tr[' type '](' term ')' | 'empty'
//   gen  := id[t] | swap[t,t] | neg | neg[VH] | neg[HV] | gate[word(,t)?]
//         | pbs | pbs[TV.VT|VT.TV|HT.HT|TH.TH] | split | split[HV] | merge | merge[HV]
//   word := '1' | letter ('.' letter)*
// '#' starts a comment running to the end of the line.
DiagramTerm parse(const std::string& src);
std::string print(const DiagramTerm& d);

// Assignment files: one oracle per line, `letter<TAB>re,im re,im ...` giving a
// square matrix in row-major order. All matrices must share one dimension.
GateAssignment parse_assignment(const std::string& src);

std::string export_dot(const Netlist& n, const std::string& name = "cpbs");

}  // namespace cpbs
