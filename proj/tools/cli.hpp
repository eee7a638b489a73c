#ifndef COALG_TOOLS_CLI_HPP
#define COALG_TOOLS_CLI_HPP

// The coalg command line: check, fixpoint, sequence, props, compare, minimize.
// Exit codes: 0 success, 1 violation or counterexample found, 2 usage or
// input error, 3 enumeration cap exceeded.

#include <cctype>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coalg/coalg.hpp"

namespace coalg::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;
inline constexpr int kSize = 3;

struct Loaded {
  SystemFile file;
  CoalgebraPair pair;
};

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// One system file, or one or two .aut files.
inline Loaded load_inputs(const std::vector<std::string>& inputs) {
  if (inputs.empty() || inputs.size() > 2) throw validation_error("expected one system file or one or two .aut files");
  if (ends_with(inputs[0], ".aut")) {
    const std::string left = read_text_file(inputs[0]);
    const std::string right = inputs.size() == 2 ? read_text_file(inputs[1]) : left;
    CoalgebraPair pair = import_aut_pair(left, right);
    SystemFile file{pair.functor(), {{"X", pair.left()}, {"Y", pair.right()}}, {}};
    if (inputs.size() == 1) file.systems.pop_back();
    return {std::move(file), std::move(pair)};
  }
  if (inputs.size() != 1) throw validation_error("a system file must be given on its own");
  SystemFile file = read_system(inputs[0]);
  CoalgebraPair pair = file.pair();
  return {std::move(file), std::move(pair)};
}

inline std::uint64_t seed_from_env() {
  const char* s = std::getenv("COALG_SEED");
  if (!s || !*s) return 0;
  if (!std::isdigit(static_cast<unsigned char>(*s))) throw validation_error("COALG_SEED must be a non-negative integer");
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  if (*end) throw validation_error("COALG_SEED must be a non-negative integer");
  return v;
}

struct Options {
  std::vector<std::string> inputs;
  std::string op = "hj";
  std::uint64_t cap = EvalOptions{}.cap;
  std::optional<std::size_t> bound;
  std::uint32_t grid = EvalOptions{}.grid;
  std::string format = "json";
  std::string relation;
  std::optional<std::size_t> steps;
  std::string functor;
  std::string property;

  EvalOptions eval() const { return EvalOptions{cap, grid}; }
  bool dot() const { return format == "dot"; }
};

inline int cmd_check(const Options& o, std::ostream& out) {
  const Loaded in = load_inputs(o.inputs);
  const Relation& r = in.file.relation(o.relation);
  const FunctorVerdicts verdicts = functor_verdicts(in.pair.functor(), default_property_corpus(), o.eval());
  const Classification c = classify_relation(in.pair, r, verdicts, o.bound);
  if (o.dot()) {
    out << report::relation_dot(r, o.relation);
  } else {
    report::Json j{{"command", "check"},
                   {"functor", in.pair.functor().text()},
                   {"relation", o.relation},
                   {"pairs", report::relation_json(r)},
                   {"functorVerdicts", report::functor_verdicts_json(verdicts)}};
    report::merge(j, report::classification_json(c));
    out << report::dump(j);
  }
  return c.consistent() ? kOk : kViolation;
}

inline int cmd_fixpoint(const Options& o, std::ostream& out) {
  const Loaded in = load_inputs(o.inputs);
  const Operator op = o.op == "am" ? Operator::AM : Operator::HJ;
  const Chain chain = greatest_fixpoint(in.pair, op);
  if (o.dot()) {
    out << report::chain_dot(chain.steps, std::string("fixpoint_") + operator_name(op));
  } else {
    report::Json j{{"command", "fixpoint"}, {"functor", in.pair.functor().text()}};
    report::merge(j, report::chain_json(chain, op));
    out << report::dump(j);
  }
  return kOk;
}

inline int cmd_sequence(const Options& o, std::ostream& out) {
  const Loaded in = load_inputs(o.inputs);
  const std::size_t n = o.steps.value_or(in.pair.left().size() * in.pair.right().size() + 1);
  TerminalSequence seq(in.pair, static_cast<std::size_t>(o.cap));
  std::vector<Relation> ws;
  report::Json steps = report::Json::array();
  report::Json injective = report::Json::array();
  for (std::size_t i = 0; i <= n; ++i) {
    ws.push_back(seq.relation(i));
    steps.push_back(report::relation_json(ws.back()));
    if (i < n) injective.push_back(seq.step_injective_on_realized(i));
  }
  if (o.dot()) {
    out << report::chain_dot(ws, "terminal_sequence");
  } else {
    out << report::dump(report::Json{{"command", "sequence"},
                                     {"functor", in.pair.functor().text()},
                                     {"steps", std::move(steps)},
                                     {"stepInjectiveOnRealized", std::move(injective)},
                                     {"terms", seq.store().size()}});
  }
  return kOk;
}

inline int cmd_props(const Options& o, std::ostream& out) {
  if (o.dot()) throw CLI::ValidationError("--format", "dot output is not available for props");
  const FunctorExpr f = parse_functor(o.functor);
  std::vector<PropertyName> props;
  if (!o.property.empty()) {
    auto p = parse_property_name(o.property);
    if (!p) throw CLI::ValidationError("--property", "unknown property '" + o.property + "'");
    props.push_back(*p);
  } else {
    props.assign(std::begin(kPullbackProperties), std::end(kPullbackProperties));
    props.insert(props.end(), std::begin(kKernelPairProperties), std::end(kKernelPairProperties));
  }
  const PropertyCorpus corpus = default_property_corpus();
  report::Json verdicts = report::Json::array();
  bool counterexample = false, capped = false;
  for (auto p : props) {
    const Verdict v = check_property(f, p, corpus, o.eval());
    counterexample = counterexample || !v.holds();
    capped = capped || v.cap_errors > 0;
    verdicts.push_back(report::verdict_json(v));
  }
  out << report::dump(report::Json{{"command", "props"}, {"functor", f.text()}, {"verdicts", std::move(verdicts)}});
  // A counterexample is definite; otherwise undecided inputs make the sweep inconclusive.
  if (counterexample) return kViolation;
  return capped ? kSize : kOk;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
  if (o.dot()) throw CLI::ValidationError("--format", "dot output is not available for compare");
  const Loaded in = load_inputs(o.inputs);
  const std::uint64_t seed = seed_from_env();
  const FunctorVerdicts verdicts = functor_verdicts(in.pair.functor(), default_property_corpus(), o.eval());
  const CompareReport rep = compare_notions(in.pair, verdicts, seed, o.bound);
  report::Json patterns = report::Json::object();
  for (const auto& [k, n] : rep.patterns)
    patterns[k] = report::Json{{"count", n}, {"example", report::relation_json(rep.examples.at(k))}};
  report::Json violations = report::Json::array();
  for (const auto& [r, c] : rep.violating) {
    report::Json v{{"relation", report::relation_json(r)}};
    report::merge(v, report::classification_json(c));
    violations.push_back(std::move(v));
  }
  report::Json j{{"command", "compare"},
                 {"functor", in.pair.functor().text()},
                 {"exhaustive", rep.exhaustive},
                 {"relations", rep.relations}};
  if (!rep.exhaustive) j["seed"] = seed;
  j["functorVerdicts"] = report::functor_verdicts_json(verdicts);
  j["patternKey"] = "am,hj,precongruence,kernel";
  j["patterns"] = std::move(patterns);
  j["violations"] = std::move(violations);
  out << report::dump(j);
  return rep.violating.empty() ? kOk : kViolation;
}

inline int cmd_minimize(const Options& o, std::ostream& out) {
  const Loaded in = load_inputs(o.inputs);
  const Relation r = partition_refinement_lts(in.pair);
  if (o.dot()) {
    out << report::relation_dot(r, "minimize");
    return kOk;
  }
  report::Json blocks = report::Json::array();
  const Partition part = minimize_lts(in.pair.left());
  for (std::size_t b = 0; b < part.blocks; ++b) {
    report::Json block = report::Json::array();
    for (std::size_t s = 0; s < part.block_of.size(); ++s)
      if (part.block_of[s] == b) block.push_back(in.pair.left().carrier()[s]);
    blocks.push_back(std::move(block));
  }
  out << report::dump(report::Json{{"command", "minimize"},
                                   {"functor", in.pair.functor().text()},
                                   {"leftBlocks", std::move(blocks)},
                                   {"relation", report::relation_json(r)}});
  return kOk;
}

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coalgebraic bisimulation toolkit for finite systems", "coalg"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub, bool inputs) {
    if (inputs) sub->add_option("inputs", o.inputs, "system file, or one or two .aut files")->required()->expected(1, 2);
    sub->add_option("--cap", o.cap, "largest enumeration allowed")->capture_default_str();
    sub->add_option("--grid", o.grid, "denominator of enumerated distribution weights")
        ->capture_default_str()
        ->check(CLI::Range(1U, 1000U));
    sub->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "classify a named relation under all four notions");
  common(check, true);
  check->add_option("--relation", o.relation, "relation declared in the system file")->required();
  check->add_option("--bound", o.bound, "largest cospan apex searched for kernel bisimulations");

  auto* fixpoint = app.add_subcommand("fixpoint", "greatest fixpoint of a refinement operator");
  common(fixpoint, true);
  fixpoint->add_option("--op", o.op, "hj or am")->check(CLI::IsMember({"hj", "am"}))->capture_default_str();

  auto* sequence = app.add_subcommand("sequence", "relations W_0..W_n from the terminal sequence");
  common(sequence, true);
  sequence->add_option("--steps", o.steps, "last stage n (default |X x Y| + 1)");

  auto* props = app.add_subcommand("props", "sweep the functor properties over the default corpus");
  common(props, false);
  props->add_option("--functor", o.functor, "functor expression, e.g. Pf(Id)")->required();
  props->add_option("--property", o.property, "check a single property");

  auto* compare = app.add_subcommand("compare", "classify every (or sampled) relation and check the implications");
  common(compare, true);
  compare->add_option("--bound", o.bound, "largest cospan apex searched for kernel bisimulations");

  auto* minimize = app.add_subcommand("minimize", "partition refinement for labelled transition systems");
  common(minimize, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "coalg: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*fixpoint) return cmd_fixpoint(o, out);
    if (*sequence) return cmd_sequence(o, out);
    if (*props) return cmd_props(o, out);
    if (*compare) return cmd_compare(o, out);
    if (*minimize) return cmd_minimize(o, out);
  } catch (const size_error& e) {
    err << "coalg: " << e.what() << " (" << (e.is_lower_bound() ? "at least " : "") << e.count() << ")\n";
    return kSize;
  } catch (const CLI::ParseError& e) {
    err << "coalg: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "coalg: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace coalg::cli

#endif
