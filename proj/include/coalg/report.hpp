#ifndef COALG_REPORT_HPP
#define COALG_REPORT_HPP

// JSON and Graphviz renderings of relations, chains, verdicts and
// classifications. Key order and element order are canonical, so equal
// inputs give byte-identical output.

#include <string>
#include <vector>

#include "coalg/bisim.hpp"
#include "coalg/props.hpp"
#include "json.hpp"

namespace coalg::report {

using Json = nlohmann::ordered_json;

inline Json carrier_json(const FinSet& s) {
  Json out = Json::array();
  for (const auto& n : s.elements()) out.push_back(n);
  return out;
}

inline Json relation_json(const Relation& r) {
  Json out = Json::array();
  for (const auto& [x, y] : r.pairs()) out.push_back(Json::array({r.left()[x], r.right()[y]}));
  return out;
}

inline Json function_json(const FinFunction& f) {
  Json out = Json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) out[f.dom()[i]] = f.cod()[f(i)];
  return out;
}

inline Json cospan_json(const Cospan& c) {
  return Json{{"A1", carrier_json(c.from().dom())},
              {"A2", carrier_json(c.to().dom())},
              {"Z", carrier_json(c.apex())},
              {"f", function_json(c.from())},
              {"g", function_json(c.to())}};
}

inline Json chain_json(const Chain& chain, Operator op) {
  Json steps = Json::array();
  for (const auto& r : chain.steps) steps.push_back(relation_json(r));
  return Json{{"operator", operator_name(op)},
              {"steps", std::move(steps)},
              {"converged", chain.converged},
              {"stepsToConverge", chain.steps_to_converge}};
}

inline Json coalgebra_json(const Coalgebra& c) {
  Json out = Json::object();
  for (std::size_t s = 0; s < c.size(); ++s) out[c.carrier()[s]] = c.text_of(s);
  return out;
}

inline Json witness_json(const PropertyWitness& w) {
  Json out{{"kind", w.kind}};
  if (w.cospan) out["cospan"] = cospan_json(*w.cospan);
  if (w.span)
    out["span"] = Json{{"left", carrier_json(w.span->left())},
                       {"right", carrier_json(w.span->right())},
                       {"pairs", relation_json(*w.span)}};
  out["elements"] = w.texts;
  return out;
}

inline Json verdict_json(const Verdict& v) {
  Json out{{"functor", v.functor}, {"property", property_name(v.property)}, {"status", status_name(v.status)}};
  if (v.witness) out["witness"] = witness_json(*v.witness);
  out["corpusSize"] = v.corpus_size;
  out["capErrors"] = v.cap_errors;
  return out;
}

inline Json kernel_json(const KernelVerdict& k) {
  if (!k.witness) return Json{{"status", "NotFoundWithinBound"}, {"bound", k.bound}};
  return Json{{"status", "Yes"},
              {"phase", k.witness->phase},
              {"cospan", cospan_json(k.witness->cospan)},
              {"apex", coalgebra_json(k.witness->apex)}};
}

inline Json functor_verdicts_json(const FunctorVerdicts& v) {
  return Json{{"PreservesRelations", v.preserves_relations},
              {"PreservesWeakPullbacks", v.preserves_weak_pullbacks},
              {"CoversPullbacks", v.covers_pullbacks},
              {"PreservesPullbacksAlongMonos", v.preserves_pullbacks_along_monos}};
}

inline Json classification_json(const Classification& c) {
  Json flags{{"amBisim", c.flags.am_bisimulation()},
             {"hjBisim", c.flags.hj},
             {"amPrecongruence", c.flags.precongruence},
             {"kernelBisim", kernel_json(c.flags.kernel)}};
  if (c.flags.am) flags["amWitness"] = coalgebra_json(c.flags.am->structure);
  Json violations = Json::array();
  for (const auto& v : c.violations) violations.push_back(Json{{"rule", v.rule}, {"detail", v.detail}});
  return Json{{"flags", std::move(flags)},
              {"checkedRules", c.checked},
              {"violations", std::move(violations)},
              {"consistent", c.consistent()}};
}

/// Appends the members of `from` to the object `into`.
inline void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// One bipartite block of nodes and edges; `prefix` keeps node ids distinct
/// across blocks.
inline void relation_block(std::string& out, const Relation& r, const std::string& prefix, const std::string& indent) {
  out += indent + "subgraph " + dot_id("cluster_" + prefix + "left") + " {\n";
  out += indent + "  label=\"left\";\n";
  for (const auto& x : r.left().elements()) out += indent + "  " + dot_id(prefix + "l:" + x) + " [label=" + dot_id(x) + "];\n";
  out += indent + "}\n";
  out += indent + "subgraph " + dot_id("cluster_" + prefix + "right") + " {\n";
  out += indent + "  label=\"right\";\n";
  for (const auto& y : r.right().elements()) out += indent + "  " + dot_id(prefix + "r:" + y) + " [label=" + dot_id(y) + "];\n";
  out += indent + "}\n";
  for (const auto& [x, y] : r.pairs())
    out += indent + dot_id(prefix + "l:" + r.left()[x]) + " -- " + dot_id(prefix + "r:" + r.right()[y]) + ";\n";
}

}  // namespace detail

/// A relation as a bipartite graph.
inline std::string relation_dot(const Relation& r, const std::string& name) {
  std::string out = "graph " + detail::dot_id(name) + " {\n  rankdir=LR;\n";
  detail::relation_block(out, r, "", "  ");
  return out + "}\n";
}

/// A sequence of relations, one cluster per step.
inline std::string chain_dot(const std::vector<Relation>& steps, const std::string& name) {
  std::string out = "graph " + detail::dot_id(name) + " {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string prefix = "s" + std::to_string(i) + ":";
    out += "  subgraph " + detail::dot_id("cluster_step" + std::to_string(i)) + " {\n";
    out += "    label=" + detail::dot_id("step " + std::to_string(i)) + ";\n";
    detail::relation_block(out, steps[i], prefix, "    ");
    out += "  }\n";
  }
  return out + "}\n";
}

}  // namespace coalg::report

#endif
