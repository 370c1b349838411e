#pragma once

#include <string>
#include <vector>

#include "cpbs/diagram.hpp"

namespace cpbs {

// A port reference. node == kBoundary denotes a boundary port: as a source it
// is an input boundary port, as a sink an output boundary port.
struct Endpoint {
  static constexpr int kBoundary = -1;
  int node = kBoundary;
  int port = 0;

  bool is_boundary() const { return node == kBoundary; }
  bool operator==(const Endpoint&) const = default;
  auto operator<=>(const Endpoint&) const = default;
};

// Port graph form of a diagram. Every sink (output boundary port or node input
// port) stores its unique source; sources are therefore wired exactly once when
// the netlist is valid. Closed node-free loops are kept as a colour list.
struct Netlist {
  ObjectType in_type;
  ObjectType out_type;
  std::vector<Generator> nodes;
  std::vector<std::vector<Endpoint>> in_src;  // per node, per input port
  std::vector<Endpoint> out_src;              // per output boundary port
  std::vector<WireType> loops;

  int add_node(const Generator& g);
  Endpoint source_of(Endpoint sink) const;
  void connect(Endpoint source, Endpoint sink);
  WireType source_type(Endpoint source) const;
  WireType sink_type(Endpoint sink) const;
};

// Reverse map from sources to sinks.
class SinkIndex {
 public:
  explicit SinkIndex(const Netlist& n);
  Endpoint sink_of(Endpoint source) const;

 private:
  std::vector<Endpoint> from_input_;
  std::vector<std::vector<Endpoint>> from_node_;
};

// A wire, identified by its endpoints.
struct Wire {
  Endpoint source;
  Endpoint sink;
  WireType type;
};

// All wires in deterministic order: by source, boundary inputs first.
std::vector<Wire> wires_of(const Netlist& n);

Netlist to_netlist(const DiagramTerm& d);
void validate(const Netlist& n);
std::string canonical_form(const Netlist& n);
bool netlists_isomorphic(const Netlist& a, const Netlist& b);
DiagramTerm netlist_to_term(const Netlist& n);

std::size_t netlist_pbs(const Netlist& n);
std::size_t netlist_negs(const Netlist& n);
std::size_t netlist_queries(const Netlist& n, const std::string& u);

}  // namespace cpbs
