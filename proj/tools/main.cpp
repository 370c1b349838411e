// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage.
#include <CLI11.hpp>
#include <fmt/core.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cpbs/errors.hpp"
#include "cpbs/hardness.hpp"
#include "cpbs/normal_form.hpp"
#include "cpbs/pgt.hpp"
#include "cpbs/quantum.hpp"
#include "cpbs/query_opt.hpp"
#include "cpbs/semantics.hpp"
#include "cpbs/text.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

cpbs::DiagramTerm load(const std::string& path) { return cpbs::parse(slurp(path)); }

std::uint64_t default_seed() {
  const char* s = std::getenv("CPBS_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(std::string("CPBS_SEED is not an integer: ") + s);
  }
}

std::string counts_comment(const cpbs::DiagramTerm& d) {
  std::string s = fmt::format("# pbs={} neg={}", cpbs::count_pbs(d), cpbs::count_neg(d));
  for (const auto& u : cpbs::letters_of(d)) s += fmt::format(" {}={}", u, cpbs::count_queries(d, u));
  return s;
}

std::string entry(std::complex<double> z) { return fmt::format("{:.12g}\t{:.12g}", z.real(), z.imag()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coloured PBS-diagram toolkit"};
  app.require_subcommand(1);

  std::string file, file_b, assign_file, graph_file;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int dim = 2;

  auto* check = app.add_subcommand("check", "Type-check a diagram and print its type");
  auto* table = app.add_subcommand("table", "Print the action semantics as TSV");
  auto* normalize = app.add_subcommand("normalize", "Print the normal form");
  auto* equal = app.add_subcommand("equal", "Decide whether two diagrams are equivalent");
  auto* opt_q = app.add_subcommand("opt-queries", "Rewrite to a query-optimal diagram");
  auto* opt_p = app.add_subcommand("opt-pbs", "Query optimisation followed by the PGT form");
  auto* bounds = app.add_subcommand("bounds", "Print query and PBS lower bounds");
  auto* simulate = app.add_subcommand("simulate", "Print the nonzero entries of the quantum semantics");
  auto* dot = app.add_subcommand("export-dot", "Render the diagram as Graphviz DOT");
  auto* ecd = app.add_subcommand("reduce-ecd", "Build the PBS diagram of a maximum cycle decomposition");

  for (auto* sub : {check, table, normalize, equal, opt_q, opt_p, bounds, simulate, dot}) {
    sub->add_option("file", file, "diagram file, - for stdin")->required();
  }
  equal->add_option("other", file_b, "second diagram file")->required();
  simulate->add_option("--assign", assign_file, "oracle matrices; random unitaries when omitted");
  simulate->add_option("--dim", dim, "dimension of random unitaries")->check(CLI::Range(1, 16));
  ecd->add_option("graph", graph_file, "edge list, one `u v` per line")->required();
  for (auto* sub : {simulate, ecd}) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; }, "overrides CPBS_SEED");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (check->parsed()) {
      auto d = load(file);
      auto [a, b] = cpbs::type_of(d);
      std::cout << cpbs::type_string(a) << " -> " << cpbs::type_string(b) << '\n';
    } else if (table->parsed()) {
      std::cout << cpbs::table_tsv(cpbs::semantics_table(load(file)));
    } else if (normalize->parsed()) {
      std::cout << cpbs::print(cpbs::normalize(load(file)).to_term()) << '\n';
    } else if (equal->parsed()) {
      std::cout << (cpbs::equivalent(load(file), load(file_b)) ? "equivalent" : "not equivalent") << '\n';
    } else if (opt_q->parsed()) {
      auto d = cpbs::optimize_queries(load(file));
      std::cout << cpbs::print(d) << '\n' << counts_comment(d) << '\n';
    } else if (opt_p->parsed()) {
      auto d = cpbs::to_pgt_form(cpbs::optimize_queries(load(file))).to_term();
      std::cout << cpbs::print(d) << '\n' << counts_comment(d) << '\n';
    } else if (bounds->parsed()) {
      auto t = cpbs::semantics_table(load(file));
      for (const auto& [u, n] : cpbs::query_lower_bounds(t)) std::cout << u << ':' << n << '\n';
      // The PBS bound is only established for gate-free tables.
      if (cpbs::gate_free(t)) std::cout << "pbs:" << cpbs::pbs_lower_bound(t) << '\n';
    } else if (simulate->parsed()) {
      auto d = load(file);
      auto t = cpbs::semantics_table(d);
      cpbs::GateAssignment g;
      if (!assign_file.empty()) {
        g = cpbs::parse_assignment(slurp(assign_file));
      } else {
        auto ls = cpbs::letters_of(d);
        g = cpbs::random_unitary_assignment({ls.begin(), ls.end()}, dim, seed);
      }
      auto m = cpbs::quantum_matrix(t, g);
      std::cout << "# " << m.rows() << 'x' << m.cols() << '\n';
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          if (std::abs(m(r, c)) > 1e-12) std::cout << r << '\t' << c << '\t' << entry(m(r, c)) << '\n';
        }
      }
    } else if (dot->parsed()) {
      std::cout << cpbs::export_dot(cpbs::to_netlist(load(file)));
    } else if (ecd->parsed()) {
      auto g = cpbs::parse_edge_list(slurp(graph_file));
      auto o = cpbs::orient_eulerian(g, seed);
      auto dec = cpbs::max_ecd_bruteforce(g);
      auto d = cpbs::diagram_from_decomposition(g, o, dec);
      std::cout << fmt::format("# edges={} cycles={} pbs={}\n", g.edges.size(), dec.r(), cpbs::count_pbs(d));
      std::cout << cpbs::print(d) << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cpbs::CpbsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
