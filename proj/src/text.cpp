#include "cpbs/text.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cpbs/errors.hpp"

namespace cpbs {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : src_(s) {}

  DiagramTerm parse_all() {
    DiagramTerm t = term();
    skip();
    if (i_ < src_.size()) fail("unexpected '" + std::string(1, src_[i_]) + "'");
    try {
      type_of(t);
    } catch (const TypeError& e) {
      throw TypeError(std::string(e.what()) + " (in input ending at " + where() + ")");
    }
    return t;
  }

 private:
  const std::string& src_;
  std::size_t i_ = 0;

  std::string where() const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < i_ && k < src_.size(); ++k) {
      if (src_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(where() + ": " + msg); }

  void skip() {
    while (i_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
        ++i_;
      } else if (src_[i_] == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return i_ < src_.size() && src_[i_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  std::string ident() {
    skip();
    std::size_t b = i_;
    if (i_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[i_]))) {
      ++i_;
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
    }
    if (b == i_) fail("expected identifier");
    return src_.substr(b, i_ - b);
  }

  WireType type() {
    std::string s = ident();
    if (s == "T") return WireType::T;
    if (s == "V") return WireType::V;
    if (s == "H") return WireType::H;
    fail("unknown wire type '" + s + "'");
  }

  Word word() {
    Word w;
    if (peek('1')) {
      ++i_;
      return w;
    }
    w.push_back(ident());
    while (peek('.')) {
      ++i_;
      w.push_back(ident());
    }
    return w;
  }

  DiagramTerm term() {
    DiagramTerm t = par();
    while (peek(';')) {
      ++i_;
      t = DiagramTerm::seq(t, par());
    }
    return t;
  }

  DiagramTerm par() {
    DiagramTerm t = atom();
    while (peek('|')) {
      ++i_;
      t = DiagramTerm::par(t, atom());
    }
    return t;
  }

  // Reads "[A.B]" style signatures verbatim.
  std::string bracket_text() {
    expect('[');
    std::size_t b = i_;
    while (i_ < src_.size() && src_[i_] != ']') ++i_;
    if (i_ >= src_.size()) fail("unterminated '['");
    std::string s = src_.substr(b, i_ - b);
    ++i_;
    std::string r;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) r += c;
    }
    return r;
  }

  DiagramTerm atom() {
    if (peek('(')) {
      ++i_;
      DiagramTerm t = term();
      expect(')');
      return t;
    }
    std::string kw = ident();
    if (kw == "empty") return DiagramTerm::empty();
    if (kw == "tr") {
      expect('[');
      WireType c = type();
      expect(']');
      expect('(');
      DiagramTerm body = term();
      expect(')');
      return DiagramTerm::trace(c, body);
    }
    if (kw == "id") {
      expect('[');
      WireType c = type();
      expect(']');
      return DiagramTerm::gen(make_id(c));
    }
    if (kw == "swap") {
      expect('[');
      WireType a = type();
      expect(',');
      WireType b = type();
      expect(']');
      return DiagramTerm::gen(make_swap(a, b));
    }
    if (kw == "gate") {
      expect('[');
      Word w = word();
      WireType c = WireType::T;
      if (peek(',')) {
        ++i_;
        c = type();
      }
      expect(']');
      return DiagramTerm::gen(make_gate(c, w));
    }
    bool sig = peek('[');
    if (kw == "neg") {
      if (!sig) return DiagramTerm::gen(make_gen(GenKind::NegT));
      std::string s = bracket_text();
      if (s == "VH") return DiagramTerm::gen(make_gen(GenKind::NegVH));
      if (s == "HV") return DiagramTerm::gen(make_gen(GenKind::NegHV));
      fail("unknown negation '" + s + "'");
    }
    if (kw == "pbs") {
      if (!sig) return DiagramTerm::gen(make_gen(GenKind::Pbs4));
      std::string s = bracket_text();
      if (s == "TV.VT") return DiagramTerm::gen(make_gen(GenKind::PbsTvVt));
      if (s == "VT.TV") return DiagramTerm::gen(make_gen(GenKind::PbsVtTv));
      if (s == "HT.HT") return DiagramTerm::gen(make_gen(GenKind::PbsHtHt));
      if (s == "TH.TH") return DiagramTerm::gen(make_gen(GenKind::PbsThTh));
      fail("unknown beam splitter signature '" + s + "'");
    }
    if (kw == "split" || kw == "merge") {
      bool split = kw == "split";
      if (!sig) return DiagramTerm::gen(make_gen(split ? GenKind::SplitVH : GenKind::MergeVH));
      std::string s = bracket_text();
      if (s == "HV") return DiagramTerm::gen(make_gen(split ? GenKind::SplitHV : GenKind::MergeHV));
      if (s == "VH") return DiagramTerm::gen(make_gen(split ? GenKind::SplitVH : GenKind::MergeVH));
      fail("unknown " + kw + " signature '" + s + "'");
    }
    fail("unknown generator '" + kw + "'");
  }
};

std::string gen_text(const Generator& g) {
  switch (g.kind) {
    case GenKind::Id:
      return std::string("id[") + wire_char(g.c1) + "]";
    case GenKind::Swap:
      return std::string("swap[") + wire_char(g.c1) + "," + wire_char(g.c2) + "]";
    case GenKind::GateT:
      return "gate[" + word_text(g.label) + "]";
    case GenKind::GateV:
      return "gate[" + word_text(g.label) + ",V]";
    case GenKind::GateH:
      return "gate[" + word_text(g.label) + ",H]";
    default:
      return kind_name(g.kind);
  }
}

std::string print_rec(const DiagramTerm& d, bool in_par) {
  switch (d.tag()) {
    case DiagramTerm::Tag::Empty:
      return "empty";
    case DiagramTerm::Tag::Gen:
      return gen_text(d.generator());
    case DiagramTerm::Tag::Seq: {
      std::string s = print_rec(d.left(), false) + " ; " + print_rec(d.right(), false);
      return in_par ? "(" + s + ")" : s;
    }
    case DiagramTerm::Tag::Par:
      return print_rec(d.left(), true) + " | " + print_rec(d.right(), true);
    case DiagramTerm::Tag::Trace:
      return std::string("tr[") + wire_char(d.traced()) + "](" + print_rec(d.body(), false) + ")";
  }
  return "";
}

const char* dot_colour(WireType c) {
  switch (c) {
    case WireType::V:
      return "red";
    case WireType::H:
      return "blue";
    default:
      return "black";
  }
}

}  // namespace

DiagramTerm parse(const std::string& src) { return Parser(src).parse_all(); }

std::string print(const DiagramTerm& d) { return print_rec(d, false); }

GateAssignment parse_assignment(const std::string& src) {
  GateAssignment g;
  g.dim = 0;
  std::istringstream in(src);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string letter, entry;
    if (!(ls >> letter)) continue;
    auto bad = [&](const std::string& msg) { return SyntaxError("line " + std::to_string(lineno) + ": " + msg); };
    std::vector<std::complex<double>> xs;
    while (ls >> entry) {
      auto comma = entry.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument(entry);
        std::size_t used_re = 0, used_im = 0;
        double re = std::stod(entry.substr(0, comma), &used_re);
        double im = std::stod(entry.substr(comma + 1), &used_im);
        if (used_re != comma || used_im != entry.size() - comma - 1) throw std::invalid_argument(entry);
        xs.emplace_back(re, im);
      } catch (const std::logic_error&) {
        throw bad("expected re,im but got '" + entry + "'");
      }
    }
    int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(xs.size()))));
    if (d == 0 || static_cast<std::size_t>(d * d) != xs.size()) throw bad("entry count is not a square");
    if (g.dim != 0 && d != g.dim) throw bad("matrix dimension differs from earlier lines");
    if (g.map.count(letter)) throw bad("oracle " + letter + " assigned twice");
    g.dim = d;
    ComplexMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) m(r, c) = xs[static_cast<std::size_t>(r * d + c)];
    }
    g.map[letter] = m;
  }
  if (g.dim == 0) g.dim = 1;
  return g;
}

std::string export_dot(const Netlist& n, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (std::size_t k = 0; k < n.in_type.size(); ++k) os << "  in" << k << " [shape=point];\n";
  for (std::size_t k = 0; k < n.out_type.size(); ++k) os << "  out" << k << " [shape=point];\n";
  for (std::size_t v = 0; v < n.nodes.size(); ++v) {
    const Generator& g = n.nodes[v];
    std::string shape = is_gate(g.kind) ? "box" : is_neg(g.kind) ? "circle" : "diamond";
    os << "  n" << v << " [shape=" << shape << ",label=\"" << gen_text(g) << "\"";
    if (is_gate(g.kind)) os << ",color=" << dot_colour(gate_colour(g.kind));
    os << "];\n";
  }
  for (const Wire& w : wires_of(n)) {
    auto name_of = [](Endpoint e, bool source) {
      if (e.is_boundary()) return std::string(source ? "in" : "out") + std::to_string(e.port);
      return "n" + std::to_string(e.node);
    };
    os << "  " << name_of(w.source, true) << " -> " << name_of(w.sink, false) << " [color=" << dot_colour(w.type);
    if (!w.source.is_boundary()) os << ",taillabel=\"" << w.source.port << "\"";
    if (!w.sink.is_boundary()) os << ",headlabel=\"" << w.sink.port << "\"";
    os << "];\n";
  }
  for (std::size_t k = 0; k < n.loops.size(); ++k) {
    os << "  loop" << k << " [shape=point];\n  loop" << k << " -> loop" << k << " [color=" << dot_colour(n.loops[k])
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cpbs
