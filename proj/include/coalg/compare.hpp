#ifndef COALG_COMPARE_HPP
#define COALG_COMPARE_HPP

// Classifies many relations over one coalgebra pair and tallies the notions
// against the functor's on-corpus property verdicts.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coalg/bisim.hpp"
#include "coalg/corpus.hpp"
#include "coalg/props.hpp"

namespace coalg {

/// On-corpus verdicts for the properties that guard the conditional implications.
/// A sweep with cap errors never enables an implication.
inline FunctorVerdicts functor_verdicts(const FunctorExpr& f, const PropertyCorpus& corpus, const EvalOptions& opts = {}) {
  auto holds = [&](PropertyName p) { return check_property(f, p, corpus, opts).holds_without_cap_errors(); };
  FunctorVerdicts v;
  v.preserves_relations = holds(PropertyName::PreservesRelations);
  v.preserves_weak_pullbacks = holds(PropertyName::PreservesWeakPullbacks);
  v.covers_pullbacks = holds(PropertyName::CoversPullbacks);
  v.preserves_pullbacks_along_monos = holds(PropertyName::PreservesPullbacksAlongMonos);
  return v;
}

struct CompareReport {
  bool exhaustive = true;
  std::size_t relations = 0;
  /// Flag pattern "am,hj,precong,kernel" as 0/1 digits, with counts.
  std::map<std::string, std::size_t> patterns;
  /// Relations with at least one violation, with their classification.
  std::vector<std::pair<Relation, Classification>> violating;
  /// The first relation per flag pattern, as an example.
  std::map<std::string, Relation> examples;
};

inline std::string flag_pattern(const NotionFlags& f) {
  std::string out;
  out += f.am_bisimulation() ? '1' : '0';
  out += f.hj ? '1' : '0';
  out += f.precongruence ? '1' : '0';
  out += f.kernel.found() ? '1' : '0';
  return out;
}

/// Every relation when |X x Y| <= `exhaustive_limit`, otherwise `samples`
/// seeded random relations.
inline CompareReport compare_notions(const CoalgebraPair& p, const FunctorVerdicts& verdicts, std::uint64_t seed,
                                     std::optional<std::size_t> bound = std::nullopt,
                                     std::size_t exhaustive_limit = 12, std::size_t samples = 256) {
  CompareReport report;
  const FinSet& x = p.left().carrier();
  const FinSet& y = p.right().carrier();
  std::vector<Relation> inputs;
  if (x.size() * y.size() <= exhaustive_limit) {
    inputs = all_relations(x, y);
  } else {
    report.exhaustive = false;
    SeededRng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) inputs.push_back(random_relation(x, y, rng));
  }
  for (const auto& r : inputs) {
    Classification c = classify_relation(p, r, verdicts, bound);
    const std::string key = flag_pattern(c.flags);
    ++report.patterns[key];
    report.examples.emplace(key, r);
    if (!c.consistent()) report.violating.emplace_back(r, std::move(c));
  }
  report.relations = inputs.size();
  return report;
}

}  // namespace coalg

#endif
