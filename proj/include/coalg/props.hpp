#ifndef COALG_PROPS_HPP
#define COALG_PROPS_HPP

// Bounded falsifiers for the pullback-related properties of a functor. Every
// positive verdict is relative to the corpus it was computed on.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/finset.hpp"
#include "coalg/functor.hpp"

namespace coalg {

enum class PropertyName {
  PreservesRelations,
  PreservesPullbacks,
  PreservesWeakPullbacks,
  CoversPullbacks,
  PreservesPullbacksAlongMonos,
  PreservesKernelPairs,
  WeaklyPreservesKernelPairs,
  CoversKernelPairs,
};

inline constexpr PropertyName kPullbackProperties[] = {
    PropertyName::PreservesRelations, PropertyName::PreservesPullbacks, PropertyName::PreservesWeakPullbacks,
    PropertyName::CoversPullbacks, PropertyName::PreservesPullbacksAlongMonos};

inline constexpr PropertyName kKernelPairProperties[] = {
    PropertyName::PreservesKernelPairs, PropertyName::WeaklyPreservesKernelPairs, PropertyName::CoversKernelPairs};

inline const char* property_name(PropertyName p) {
  switch (p) {
    case PropertyName::PreservesRelations: return "PreservesRelations";
    case PropertyName::PreservesPullbacks: return "PreservesPullbacks";
    case PropertyName::PreservesWeakPullbacks: return "PreservesWeakPullbacks";
    case PropertyName::CoversPullbacks: return "CoversPullbacks";
    case PropertyName::PreservesPullbacksAlongMonos: return "PreservesPullbacksAlongMonos";
    case PropertyName::PreservesKernelPairs: return "PreservesKernelPairs";
    case PropertyName::WeaklyPreservesKernelPairs: return "WeaklyPreservesKernelPairs";
    case PropertyName::CoversKernelPairs: return "CoversKernelPairs";
  }
  return "?";
}

inline std::optional<PropertyName> parse_property_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(PropertyName::CoversKernelPairs); ++i)
    if (s == property_name(static_cast<PropertyName>(i))) return static_cast<PropertyName>(i);
  return std::nullopt;
}

/// The image of F applied to the pullback, compared with the pullback of the
/// F-images: m(t) = (F p1 (t), F p2 (t)).
struct MediatingMap {
  Relation pullback;
  std::vector<FElem> domain;                        // F(P), canonical order
  std::vector<std::pair<FElem, FElem>> codomain;    // F(A1) x_{F(Z)} F(A2), sorted
  std::vector<std::size_t> map;                     // indices into codomain
  bool injective = false;
  bool surjective = false;

  /// Iso, SplitEpi and Cover labels; the last two coincide on finite sets.
  std::vector<std::string> labels() const {
    if (injective && surjective) return {"Iso", "SplitEpi", "Cover"};
    if (surjective) return {"SplitEpi", "Cover"};
    return {"Neither"};
  }

  /// m as a function between carriers named by the canonical value text.
  FinFunction as_function(const FunctorExpr& f, const Cospan& c) const {
    std::vector<std::string> dom, cod;
    for (const auto& t : domain) dom.push_back(felem_text(f, t, pullback.carrier()));
    for (const auto& [a, b] : codomain)
      cod.push_back("(" + felem_text(f, a, c.from().dom()) + "," + felem_text(f, b, c.to().dom()) + ")");
    return FinFunction(FinSet(std::move(dom)), FinSet(std::move(cod)), map);
  }
};

namespace detail {

inline std::vector<FElem> pushed_values(const FunctorExpr& f, const std::vector<FElem>& values, const FinFunction& g) {
  std::vector<FElem> out;
  out.reserve(values.size());
  for (const auto& v : values)
    out.push_back(fmap(f, v, [&g](const FElem& leaf) { return FElem::atom(g(leaf.index())); }));
  return out;
}

/// The pullback of F f and F g, by grouping both sides on their image.
inline std::vector<std::pair<FElem, FElem>> image_pullback(const FunctorExpr& f, const Cospan& c, const EvalOptions& opts) {
  const auto left = eval_object(f, c.from().dom(), opts);
  const auto right = eval_object(f, c.to().dom(), opts);
  const auto left_img = pushed_values(f, left, c.from());
  const auto right_img = pushed_values(f, right, c.to());
  std::vector<std::pair<FElem, std::size_t>> keyed;
  for (std::size_t j = 0; j < right.size(); ++j) keyed.emplace_back(right_img[j], j);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::pair<FElem, FElem>> out;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    auto lo = std::lower_bound(keyed.begin(), keyed.end(), std::make_pair(left_img[i], std::size_t{0}));
    for (auto it = lo; it != keyed.end() && it->first == left_img[i]; ++it) {
      check_cap(++count, opts, "pullback of " + f.text() + " images");
      out.emplace_back(left[i], right[it->second]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::pair<FElem, FElem> project(const FunctorExpr& f, const Relation& p, const FElem& t) {
  const auto pairs = p.pairs();
  return {fmap(f, t, [&](const FElem& l) { return FElem::atom(pairs[l.index()].first); }),
          fmap(f, t, [&](const FElem& l) { return FElem::atom(pairs[l.index()].second); })};
}

}  // namespace detail

inline MediatingMap mediating_map(const FunctorExpr& f, const Cospan& c, const EvalOptions& opts = {}) {
  MediatingMap out;
  out.pullback = pullback(c);
  out.codomain = detail::image_pullback(f, c, opts);
  out.domain = eval_object(f, out.pullback.carrier(), opts);
  std::vector<char> hit(out.codomain.size(), 0);
  out.injective = true;
  for (const auto& t : out.domain) {
    const auto image = detail::project(f, out.pullback, t);
    auto it = std::lower_bound(out.codomain.begin(), out.codomain.end(), image);
    if (it == out.codomain.end() || !(*it == image)) throw std::logic_error("mediating map left the pullback");
    const auto k = static_cast<std::size_t>(it - out.codomain.begin());
    if (hit[k]) out.injective = false;
    hit[k] = 1;
    out.map.push_back(k);
  }
  out.surjective = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  return out;
}

/// Replayable evidence against a property.
struct PropertyWitness {
  /// "no-preimage": `values` is a codomain pair (a1, a2) that m misses.
  /// "non-monic": `values` are two elements of F(P) (or F(R)) with one image.
  std::string kind;
  std::optional<Cospan> cospan;
  std::optional<Relation> span;
  std::vector<FElem> values;
  std::vector<std::string> texts;
};

enum class VerdictStatus { HoldsOnCorpus, Counterexample };

inline const char* status_name(VerdictStatus s) {
  return s == VerdictStatus::HoldsOnCorpus ? "HoldsOnCorpus" : "Counterexample";
}

/// Result for one corpus input.
enum class Outcome { Holds, Fails, CapError, NotApplicable };

struct Verdict {
  std::string functor;
  PropertyName property = PropertyName::PreservesRelations;
  VerdictStatus status = VerdictStatus::HoldsOnCorpus;
  std::optional<PropertyWitness> witness;
  std::size_t corpus_size = 0;
  std::size_t cap_errors = 0;
  std::vector<Outcome> outcomes;

  bool holds() const noexcept { return status == VerdictStatus::HoldsOnCorpus; }
  /// Holds and every corpus input was actually decided.
  bool holds_without_cap_errors() const noexcept { return holds() && cap_errors == 0; }
};

/// Cospans, spans and literal kernel pairs to sweep over.
struct PropertyCorpus {
  std::vector<Cospan> cospans;
  std::vector<Relation> spans;
  std::vector<Cospan> kernel_pairs;
};

namespace detail {

inline Cospan cospan_from_fibres(const std::vector<std::pair<std::size_t, std::size_t>>& fibres) {
  std::vector<std::size_t> f, g;
  for (std::size_t z = 0; z < fibres.size(); ++z) {
    f.insert(f.end(), fibres[z].first, z);
    g.insert(g.end(), fibres[z].second, z);
  }
  FinSet z = FinSet::range("z", fibres.size());
  return Cospan(FinFunction(FinSet::range("a", f.size()), z, f), FinFunction(FinSet::range("b", g.size()), z, g));
}

inline bool is_kernel_pair_shape(const Cospan& c) {
  const auto& z = c.apex();
  std::vector<std::size_t> lf(z.size(), 0), rf(z.size(), 0);
  for (std::size_t i = 0; i < c.from().dom().size(); ++i) ++lf[c.from()(i)];
  for (std::size_t i = 0; i < c.to().dom().size(); ++i) ++rf[c.to()(i)];
  return lf == rf;
}

}  // namespace detail

/// Every cospan with |A1|, |A2| <= 3 and |Z| <= 2 up to isomorphism, plus 20
/// seeded random cospans on carriers of size <= 4; their pullback spans and
/// all relations between carriers of size <= 2; and each cospan isomorphic
/// to a kernel pair, rebuilt literally as (f, f).
inline PropertyCorpus default_property_corpus(std::uint64_t seed = 20090101) {
  PropertyCorpus corpus;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t n1 = 0; n1 <= 3; ++n1)
    for (std::size_t n2 = 0; n2 <= 3; ++n2) shapes.emplace_back(n1, n2);
  corpus.cospans.push_back(detail::cospan_from_fibres({}));
  for (std::size_t i = 0; i < shapes.size(); ++i) corpus.cospans.push_back(detail::cospan_from_fibres({shapes[i]}));
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i; j < shapes.size(); ++j)
      if (shapes[i].first + shapes[j].first <= 3 && shapes[i].second + shapes[j].second <= 3)
        corpus.cospans.push_back(detail::cospan_from_fibres({shapes[i], shapes[j]}));

  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  for (int k = 0; k < 20; ++k) {
    const std::size_t nz = 1 + draw(4), n1 = draw(5), n2 = draw(5);
    std::vector<std::size_t> f(n1), g(n2);
    for (auto& v : f) v = draw(nz);
    for (auto& v : g) v = draw(nz);
    FinSet z = FinSet::range("z", nz);
    corpus.cospans.emplace_back(FinFunction(FinSet::range("a", n1), z, f), FinFunction(FinSet::range("b", n2), z, g));
  }

  for (const auto& c : corpus.cospans) {
    corpus.spans.push_back(pullback(c));
    if (detail::is_kernel_pair_shape(c)) corpus.kernel_pairs.emplace_back(c.from(), c.from());
  }
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * m)); ++mask)
        corpus.spans.push_back(Relation::from_mask(FinSet::range("a", n), FinSet::range("b", m), mask));
  return corpus;
}

namespace detail {

inline std::string pair_text(const FunctorExpr& f, const Cospan& c, const std::pair<FElem, FElem>& v) {
  return "(" + felem_text(f, v.first, c.from().dom()) + "," + felem_text(f, v.second, c.to().dom()) + ")";
}

/// Whether <F p, F q> is injective on F(R).
inline std::optional<PropertyWitness> relation_check(const FunctorExpr& f, const Relation& r, const EvalOptions& opts) {
  const auto values = eval_object(f, r.carrier(), opts);
  std::vector<std::pair<std::pair<FElem, FElem>, std::size_t>> images;
  for (std::size_t i = 0; i < values.size(); ++i) images.emplace_back(project(f, r, values[i]), i);
  std::sort(images.begin(), images.end());
  for (std::size_t i = 1; i < images.size(); ++i)
    if (images[i].first == images[i - 1].first) {
      const FElem& t = values[images[i - 1].second];
      const FElem& u = values[images[i].second];
      return PropertyWitness{"non-monic", std::nullopt, r, {t, u},
                             {felem_text(f, t, r.carrier()), felem_text(f, u, r.carrier())}};
    }
  return std::nullopt;
}

/// Section route: every codomain pair has a lifting witness, checked by replay.
inline std::optional<PropertyWitness> section_check(const FunctorExpr& f, const Cospan& c, const EvalOptions& opts) {
  const Relation p = pullback(c);
  for (const auto& v : image_pullback(f, c, opts)) {
    auto s = lifting_witness(f, p, v.first, v.second);
    if (s && !(project(f, p, *s) == v)) throw std::logic_error("section failed its replay");
    if (!s) return PropertyWitness{"no-preimage", c, std::nullopt, {v.first, v.second}, {pair_text(f, c, v)}};
  }
  return std::nullopt;
}

/// Enumeration route: classify m and report the first failure.
inline std::optional<PropertyWitness> mediating_check(const FunctorExpr& f, const Cospan& c, bool need_injective,
                                                      const EvalOptions& opts) {
  const MediatingMap m = mediating_map(f, c, opts);
  if (!m.surjective) {
    std::vector<char> hit(m.codomain.size(), 0);
    for (auto k : m.map) hit[k] = 1;
    const auto k = static_cast<std::size_t>(std::find(hit.begin(), hit.end(), 0) - hit.begin());
    const auto& v = m.codomain[k];
    return PropertyWitness{"no-preimage", c, std::nullopt, {v.first, v.second}, {pair_text(f, c, v)}};
  }
  if (need_injective && !m.injective) {
    std::vector<std::size_t> first(m.codomain.size(), m.domain.size());
    for (std::size_t i = 0; i < m.map.size(); ++i) {
      if (first[m.map[i]] == m.domain.size()) {
        first[m.map[i]] = i;
        continue;
      }
      const FElem& t = m.domain[first[m.map[i]]];
      const FElem& u = m.domain[i];
      return PropertyWitness{"non-monic", c, std::nullopt, {t, u},
                             {felem_text(f, t, m.pullback.carrier()), felem_text(f, u, m.pullback.carrier())}};
    }
  }
  return std::nullopt;
}

inline std::optional<PropertyWitness> check_one(const FunctorExpr& f, PropertyName prop, const Cospan& c,
                                                const EvalOptions& opts) {
  switch (prop) {
    case PropertyName::PreservesPullbacks:
    case PropertyName::PreservesKernelPairs:
    case PropertyName::PreservesPullbacksAlongMonos:
      return mediating_check(f, c, true, opts);
    case PropertyName::PreservesWeakPullbacks:
    case PropertyName::WeaklyPreservesKernelPairs:
      return section_check(f, c, opts);
    case PropertyName::CoversPullbacks:
    case PropertyName::CoversKernelPairs:
      return mediating_check(f, c, false, opts);
    case PropertyName::PreservesRelations:
      break;
  }
  throw domain_error("property is not checked on cospans");
}

}  // namespace detail

/// Sweeps the corpus. Inputs that exceed the cap are counted, not fatal.
inline Verdict check_property(const FunctorExpr& f, PropertyName prop, const PropertyCorpus& corpus,
                              const EvalOptions& opts = {}) {
  Verdict v;
  v.functor = f.text();
  v.property = prop;
  auto record = [&](auto&& run) {
    try {
      auto w = run();
      v.outcomes.push_back(w ? Outcome::Fails : Outcome::Holds);
      if (w && !v.witness) v.witness = std::move(w);
    } catch (const size_error&) {
      v.outcomes.push_back(Outcome::CapError);
      ++v.cap_errors;
    }
  };

  const bool kernel = prop == PropertyName::PreservesKernelPairs || prop == PropertyName::WeaklyPreservesKernelPairs ||
                      prop == PropertyName::CoversKernelPairs;
  if (prop == PropertyName::PreservesRelations) {
    if (corpus.spans.empty()) throw domain_error("empty span corpus");
    for (const auto& r : corpus.spans) record([&] { return detail::relation_check(f, r, opts); });
  } else {
    const auto& inputs = kernel ? corpus.kernel_pairs : corpus.cospans;
    if (inputs.empty()) throw domain_error("empty cospan corpus");
    for (const auto& c : inputs) {
      if (prop == PropertyName::PreservesPullbacksAlongMonos && !c.from().is_injective() && !c.to().is_injective()) {
        v.outcomes.push_back(Outcome::NotApplicable);
        continue;
      }
      record([&] { return detail::check_one(f, prop, c, opts); });
    }
  }
  v.corpus_size = v.outcomes.size();
  if (v.witness) v.status = VerdictStatus::Counterexample;
  return v;
}

}  // namespace coalg

#endif
