#ifndef COALG_SYSTEM_FILE_HPP
#define COALG_SYSTEM_FILE_HPP

// Reading and writing systems.
//
// System files are line based; '#' starts a comment:
//
//   functor: Lts(a,b)
//   system X: x0 x1
//     x0 -> {(a,x1)}
//     x1 -> {}
//   system Y: y0
//     y0 -> {}
//   relation R: (x1,y0)
//     (x0,y0)
//
// One or two systems may be declared; with one, it is compared with itself.
// Relations relate the first system to the second and may continue on
// indented lines.
//
// Aldebaran (.aut) files hold one LTS: a header `des (initial, transitions,
// states)` followed by lines `(from, "label", to)`.

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "coalg/bisim.hpp"
#include "coalg/errors.hpp"
#include "coalg/text.hpp"

namespace coalg {

struct NamedSystem {
  std::string name;
  Coalgebra coalgebra;
};

struct NamedRelation {
  std::string name;
  Relation relation;
};

struct SystemFile {
  FunctorExpr functor;
  std::vector<NamedSystem> systems;
  std::vector<NamedRelation> relations;

  /// The two declared systems, or the single one with itself.
  CoalgebraPair pair() const {
    if (systems.empty()) throw validation_error("no system declared");
    return CoalgebraPair(systems.front().coalgebra, systems.back().coalgebra);
  }

  const Relation& relation(const std::string& name) const {
    for (const auto& r : relations)
      if (r.name == name) return r.relation;
    throw validation_error("no relation named '" + name + "'");
  }
};

namespace detail {

inline std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
      return std::string(line.substr(0, i));
    if (line[i] == '\\' && quoted) ++i;
  }
  return std::string(line);
}

inline bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

struct Body {
  std::string state;
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct PendingSystem {
  std::string name;
  std::size_t line;
  std::vector<std::string> states;
  std::vector<Body> bodies;  // parsed once all states are known
};

struct PendingRelation {
  std::string name;
  std::size_t line;
  std::vector<std::pair<std::string, std::size_t>> chunks;
};

}  // namespace detail

inline SystemFile parse_system(std::string_view text) {
  std::optional<FunctorExpr> functor;
  std::vector<detail::PendingSystem> systems;
  std::vector<detail::PendingRelation> relations;
  enum class Section { None, System, Relation } section = Section::None;

  std::istringstream lines{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    const std::string line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;
    const bool indented = std::isspace(static_cast<unsigned char>(line[0])) != 0;
    TextCursor in(line, lineno, 1);
    if (indented) {
      if (section == Section::System) {
        const std::string state = in.name();
        in.expect('-');
        in.expect('>');
        const std::size_t col = in.column();
        systems.back().bodies.push_back({state, line.substr(col - 1), lineno, col});
      } else if (section == Section::Relation) {
        relations.back().chunks.emplace_back(line, lineno);
      } else {
        in.fail("indented line outside a system or relation");
      }
      continue;
    }
    const std::string keyword = in.name();
    if (keyword == "functor") {
      in.expect(':');
      if (functor) in.fail("functor declared twice");
      functor = detail::parse_functor(in);
      if (!in.at_end()) in.fail("trailing input after functor expression");
      section = Section::None;
    } else if (keyword == "system") {
      detail::PendingSystem s;
      s.name = in.name();
      s.line = lineno;
      in.expect(':');
      while (!in.at_end()) s.states.push_back(in.name());
      if (systems.size() == 2) in.fail("at most two systems may be declared");
      systems.push_back(std::move(s));
      section = Section::System;
    } else if (keyword == "relation") {
      detail::PendingRelation r;
      r.name = in.name();
      r.line = lineno;
      in.expect(':');
      const std::size_t col = in.column();
      r.chunks.emplace_back(std::string(col - 1, ' ') + line.substr(col - 1), lineno);
      relations.push_back(std::move(r));
      section = Section::Relation;
    } else {
      throw parse_error("unknown declaration '" + keyword + "'", lineno, 1);
    }
  }

  if (!functor) throw validation_error("missing 'functor:' declaration");
  SystemFile out;
  out.functor = *functor;
  for (auto& s : systems) {
    FinSet carrier;
    try {
      carrier = FinSet(s.states);
    } catch (const domain_error& e) {
      throw validation_error("system " + s.name + ": " + e.what());
    }
    std::vector<std::optional<FElem>> structure(carrier.size());
    for (const auto& body : s.bodies) {
      const std::string where = "line " + std::to_string(body.line) + ": state '" + body.state + "'";
      auto idx = carrier.find(body.state);
      if (!idx) throw validation_error("line " + std::to_string(body.line) + ": undeclared state '" + body.state + "'");
      if (structure[*idx]) throw validation_error(where + " defined twice");
      TextCursor in(body.text, body.line, body.column);
      structure[*idx] = parse_felem(in, out.functor, carrier);
      if (!in.at_end()) in.fail("trailing input after value");
    }
    std::vector<FElem> values;
    for (std::size_t i = 0; i < structure.size(); ++i) {
      if (!structure[i]) throw validation_error("system " + s.name + ": state '" + carrier[i] + "' has no structure");
      values.push_back(std::move(*structure[i]));
    }
    out.systems.push_back({s.name, Coalgebra(out.functor, carrier, std::move(values))});
  }
  if (!relations.empty() && out.systems.empty()) throw validation_error("relations need a system to refer to");
  for (const auto& r : relations) {
    const FinSet& left = out.systems.front().coalgebra.carrier();
    const FinSet& right = out.systems.back().coalgebra.carrier();
    std::vector<Relation::Pair> pairs;
    for (const auto& [chunk, line] : r.chunks) {
      TextCursor in(chunk, line, 1);
      while (!in.at_end()) {
        in.expect('(');
        const std::string x = in.name();
        in.expect(',');
        const std::string y = in.name();
        in.expect(')');
        auto xi = left.find(x);
        auto yi = right.find(y);
        if (!xi || !yi)
          throw validation_error("line " + std::to_string(line) + ": undeclared state '" + (xi ? y : x) + "'");
        pairs.emplace_back(*xi, *yi);
      }
    }
    for (const auto& other : out.relations)
      if (other.name == r.name) throw validation_error("relation '" + r.name + "' declared twice");
    out.relations.push_back({r.name, Relation(left, right, std::move(pairs))});
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SystemFile read_system(const std::string& path) { return parse_system(read_text_file(path)); }

inline std::string write_system(const SystemFile& file) {
  std::string out = "functor: " + file.functor.text() + "\n";
  for (const auto& s : file.systems) {
    out += "system " + quote_name(s.name) + ":";
    for (const auto& n : s.coalgebra.carrier().elements()) out += " " + quote_name(n);
    out += "\n";
    for (std::size_t i = 0; i < s.coalgebra.size(); ++i)
      out += "  " + quote_name(s.coalgebra.carrier()[i]) + " -> " + s.coalgebra.text_of(i) + "\n";
  }
  for (const auto& r : file.relations) {
    out += "relation " + quote_name(r.name) + ":";
    for (const auto& [x, y] : r.relation.pairs())
      out += " (" + quote_name(r.relation.left()[x]) + "," + quote_name(r.relation.right()[y]) + ")";
    out += "\n";
  }
  return out;
}

/// One LTS read from Aldebaran text, with labels still as strings.
struct AutGraph {
  std::size_t initial = 0;
  std::size_t states = 0;
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> transitions;
};

inline AutGraph parse_aut(std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  AutGraph g;
  bool header = false;
  std::size_t declared = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    if (detail::blank(raw)) continue;
    TextCursor in(raw, lineno, 1);
    if (!header) {
      if (in.name() != "des") in.fail("expected 'des' header");
      in.expect('(');
      g.initial = static_cast<std::size_t>(in.integer());
      in.expect(',');
      declared = static_cast<std::size_t>(in.integer());
      in.expect(',');
      g.states = static_cast<std::size_t>(in.integer());
      in.expect(')');
      if (!in.at_end()) in.fail("trailing input after header");
      if (g.states == 0) in.fail("an .aut file needs at least one state");
      if (g.initial >= g.states) in.fail("initial state out of range");
      header = true;
      continue;
    }
    in.expect('(');
    const auto from = static_cast<std::size_t>(in.integer());
    in.expect(',');
    const std::string label = in.name();
    if (label.empty()) in.fail("empty label");
    in.expect(',');
    const auto to = static_cast<std::size_t>(in.integer());
    in.expect(')');
    if (!in.at_end()) in.fail("trailing input after transition");
    if (from >= g.states || to >= g.states) in.fail("state index out of range");
    g.transitions.emplace_back(from, label, to);
  }
  if (!header) throw parse_error("missing 'des' header", lineno + 1, 1);
  if (g.transitions.size() != declared)
    throw parse_error("header declares " + std::to_string(declared) + " transitions, found " +
                          std::to_string(g.transitions.size()),
                      1, 1);
  return g;
}

/// Builds Lts(labels) coalgebras over states 0..n-1; `labels` must cover
/// every label used.
inline Coalgebra aut_coalgebra(const AutGraph& g, const FinSet& labels) {
  std::vector<std::vector<FElem>> moves(g.states);
  for (const auto& [from, label, to] : g.transitions)
    moves[from].push_back(FElem::tuple({FElem::constant(labels.index_of(label)), FElem::atom(to)}));
  std::vector<FElem> structure;
  for (auto& m : moves) structure.push_back(FElem::set(std::move(m)));
  return Coalgebra(FunctorExpr::labelled_transitions(labels), FinSet::range("", g.states), std::move(structure));
}

inline FinSet aut_labels(const std::vector<const AutGraph*>& graphs) {
  std::set<std::string> labels;
  for (const auto* g : graphs)
    for (const auto& t : g->transitions) labels.insert(std::get<1>(t));
  return FinSet(std::vector<std::string>(labels.begin(), labels.end()));
}

/// A single .aut file; labels are those that occur, sorted.
inline Coalgebra import_aut(std::string_view text) {
  const AutGraph g = parse_aut(text);
  return aut_coalgebra(g, aut_labels({&g}));
}

/// Two .aut files over the union of their labels.
inline CoalgebraPair import_aut_pair(std::string_view left, std::string_view right) {
  const AutGraph a = parse_aut(left), b = parse_aut(right);
  const FinSet labels = aut_labels({&a, &b});
  return CoalgebraPair(aut_coalgebra(a, labels), aut_coalgebra(b, labels));
}

namespace detail {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace detail

inline std::string write_aut(const Coalgebra& c, std::size_t initial = 0) {
  if (!c.functor().is_lts()) throw domain_error("only Lts coalgebras can be written as .aut");
  std::vector<std::string> lines;
  for (std::size_t s = 0; s < c.size(); ++s)
    for (const FElem& t : c(s).items())
      lines.push_back("(" + std::to_string(s) + "," + detail::quoted(c.functor().constants()[t.items()[0].index()]) + "," +
                      std::to_string(t.items()[1].index()) + ")");
  std::string out = "des (" + std::to_string(initial) + "," + std::to_string(lines.size()) + "," +
                    std::to_string(c.size()) + ")\n";
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace coalg

#endif
