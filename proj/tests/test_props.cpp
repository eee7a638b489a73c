#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coalg;

namespace {

const PropertyCorpus& corpus() {
  static const PropertyCorpus c = default_property_corpus();
  return c;
}

/// The cospans and spans whose carriers have at most two elements.
PropertyCorpus small_corpus() {
  PropertyCorpus out;
  for (const auto& c : corpus().cospans)
    if (c.from().dom().size() <= 2 && c.to().dom().size() <= 2) out.cospans.push_back(c);
  for (const auto& c : corpus().kernel_pairs)
    if (c.from().dom().size() <= 2) out.kernel_pairs.push_back(c);
  for (const auto& r : corpus().spans)
    if (r.left().size() <= 2 && r.right().size() <= 2) out.spans.push_back(r);
  return out;
}

Cospan constant_cospan() {
  const FinSet z({"z"});
  return Cospan(FinFunction(FinSet({"a", "a'"}), z, {0, 0}), FinFunction(FinSet({"b", "b'"}), z, {0, 0}));
}

std::map<PropertyName, Verdict> sweep(const FunctorExpr& f, const PropertyCorpus& c, const EvalOptions& opts = {}) {
  std::map<PropertyName, Verdict> out;
  for (auto p : kPullbackProperties) out.emplace(p, check_property(f, p, c, opts));
  for (auto p : kKernelPairProperties) out.emplace(p, check_property(f, p, c, opts));
  return out;
}

/// Small enough that the costliest composites cap out quickly.
constexpr EvalOptions kQuick{20000, 2};

/// Re-checks a witness without the routine that produced it.
void replay(const FunctorExpr& f, const PropertyWitness& w) {
  if (w.kind == "non-monic") {
    ASSERT_EQ(w.values.size(), 2U);
    EXPECT_FALSE(w.values[0] == w.values[1]);
    const Relation p = w.span ? *w.span : pullback(*w.cospan);
    EXPECT_EQ(detail::project(f, p, w.values[0]), detail::project(f, p, w.values[1]));
    return;
  }
  ASSERT_EQ(w.kind, "no-preimage");
  ASSERT_TRUE(w.cospan.has_value());
  const Cospan& c = *w.cospan;
  const auto a = w.values.at(0), b = w.values.at(1);
  EXPECT_EQ(eval_morphism(f, c.from(), a), eval_morphism(f, c.to(), b));
  const Relation p = pullback(c);
  for (const auto& t : eval_object(f, p.carrier())) EXPECT_FALSE(detail::project(f, p, t) == std::make_pair(a, b));
}

}  // namespace

TEST(Corpus, ShapeAndDeterminism) {
  const PropertyCorpus a = default_property_corpus(), b = default_property_corpus();
  EXPECT_EQ(a.cospans.size(), b.cospans.size());
  for (std::size_t i = 0; i < a.cospans.size(); ++i) {
    EXPECT_EQ(a.cospans[i].from(), b.cospans[i].from());
    EXPECT_EQ(a.cospans[i].to(), b.cospans[i].to());
  }
  EXPECT_GT(a.cospans.size(), 20U);
  EXPECT_FALSE(a.spans.empty());
  EXPECT_FALSE(a.kernel_pairs.empty());
  for (const auto& c : a.kernel_pairs) EXPECT_EQ(c.from(), c.to());
}

TEST(MediatingMap, IdentityIsIso) {
  for (const auto& c : corpus().cospans) {
    const MediatingMap m = mediating_map(FunctorExpr::identity(), c);
    EXPECT_TRUE(m.injective && m.surjective);
    EXPECT_EQ(m.labels().front(), "Iso");
  }
}

TEST(MediatingMap, PolynomialProductIsIso) {
  const FunctorExpr f = parse_functor("Times(Id,Id)");
  for (const auto& c : corpus().cospans) {
    const MediatingMap m = mediating_map(f, c);
    EXPECT_TRUE(m.injective && m.surjective);
    EXPECT_EQ(m.domain.size(), m.codomain.size());
  }
}

TEST(MediatingMap, AtMostTwoOfThreeMissesAPairOverAPoint) {
  const FunctorExpr f = FunctorExpr::at_most_two_of_three();
  const Cospan c = constant_cospan();
  const MediatingMap m = mediating_map(f, c);
  EXPECT_FALSE(m.surjective);
  EXPECT_EQ(m.labels(), std::vector<std::string>{"Neither"});
  // Exhaustive image oracle: a pair (s, t) lies in the image iff some triple
  // of pullback pairs projects onto both.
  std::set<std::pair<FElem, FElem>> image;
  for (const auto& t : eval_object(f, m.pullback.carrier())) image.insert(detail::project(f, m.pullback, t));
  std::size_t missed = 0;
  for (const auto& v : m.codomain) missed += image.count(v) ? 0 : 1;
  EXPECT_GT(missed, 0U);
  EXPECT_EQ(image.size() + missed, m.codomain.size());
  const auto w = detail::mediating_check(f, c, false, {});
  ASSERT_TRUE(w.has_value());
  replay(f, *w);
  EXPECT_EQ(w->texts.at(0), "((a,a,a'),(b,b',b))");
}

TEST(MediatingMap, AsFunctionMatchesMap) {
  const FunctorExpr f = parse_functor("Pf(Id)");
  const Cospan c = constant_cospan();
  const MediatingMap m = mediating_map(f, c);
  const FinFunction g = m.as_function(f, c);
  EXPECT_EQ(g.dom().size(), m.domain.size());
  EXPECT_EQ(g.is_surjective(), m.surjective);
  EXPECT_EQ(g.is_injective(), m.injective);
}

TEST(CheckProperty, PowersetPreservesWeakPullbacks) {
  const Verdict v = check_property(parse_functor("Pf(Id)"), PropertyName::PreservesWeakPullbacks, corpus());
  EXPECT_TRUE(v.holds());
  EXPECT_EQ(v.cap_errors, 0U);
  EXPECT_EQ(v.corpus_size, corpus().cospans.size());
}

TEST(CheckProperty, AtMostTwoOfThreeFailsWeakPullbacks) {
  const FunctorExpr f = FunctorExpr::at_most_two_of_three();
  const Verdict v = check_property(f, PropertyName::PreservesWeakPullbacks, corpus());
  ASSERT_FALSE(v.holds());
  ASSERT_TRUE(v.witness.has_value());
  replay(f, *v.witness);
  EXPECT_LE(v.witness->cospan->from().dom().size(), 3U);
  EXPECT_LE(v.witness->cospan->to().dom().size(), 3U);
}

TEST(CheckProperty, DistributionsPreserveWeakPullbacks) {
  const Verdict v = check_property(parse_functor("D(Id)"), PropertyName::PreservesWeakPullbacks, corpus(), EvalOptions{200000, 2});
  EXPECT_TRUE(v.holds());
  EXPECT_EQ(v.cap_errors, 0U);
}

TEST(CheckProperty, IdentityHoldsForEveryVariant) {
  for (const auto& [p, v] : sweep(FunctorExpr::identity(), corpus())) EXPECT_TRUE(v.holds()) << property_name(p);
}

TEST(CheckProperty, KnownVerdictTable) {
  // Pf(Id), Lts and D(Id) are not relation- or pullback-preserving but split
  // every mediating map; P32 is relation-preserving but splits nothing.
  const std::map<std::string, std::set<PropertyName>> failing = {
      {"Times(Id,Id)", {}},
      {"Pf(Id)", {PropertyName::PreservesRelations, PropertyName::PreservesPullbacks, PropertyName::PreservesKernelPairs}},
      {"Lts(a)", {PropertyName::PreservesRelations, PropertyName::PreservesPullbacks, PropertyName::PreservesKernelPairs}},
      {"D(Id)", {PropertyName::PreservesRelations, PropertyName::PreservesPullbacks, PropertyName::PreservesKernelPairs}},
      {"P32",
       {PropertyName::PreservesPullbacks, PropertyName::PreservesWeakPullbacks, PropertyName::CoversPullbacks,
        PropertyName::PreservesKernelPairs, PropertyName::WeaklyPreservesKernelPairs, PropertyName::CoversKernelPairs}},
      {"Times(P32,Pf(Id))",
       {PropertyName::PreservesRelations, PropertyName::PreservesPullbacks, PropertyName::PreservesWeakPullbacks,
        PropertyName::CoversPullbacks, PropertyName::PreservesKernelPairs, PropertyName::WeaklyPreservesKernelPairs,
        PropertyName::CoversKernelPairs}},
  };
  for (const auto& [text, fails] : failing) {
    const FunctorExpr f = parse_functor(text);
    for (const auto& [p, v] : sweep(f, text == "Times(P32,Pf(Id))" ? small_corpus() : corpus())) {
      EXPECT_EQ(v.holds(), !fails.count(p)) << text << " " << property_name(p);
      if (v.witness) replay(f, *v.witness);
    }
  }
}

TEST(CheckProperty, EmptyCorpusIsRejected) {
  EXPECT_THROW(check_property(FunctorExpr::identity(), PropertyName::CoversPullbacks, PropertyCorpus{}), domain_error);
}

TEST(CheckProperty, CapErrorsAreCountedNotFatal) {
  const Verdict v = check_property(parse_functor("Pf(Pf(Id))"), PropertyName::CoversPullbacks, corpus(), EvalOptions{64, 2});
  EXPECT_GT(v.cap_errors, 0U);
  EXPECT_EQ(v.corpus_size, corpus().cospans.size());
}

TEST(Hierarchy, StrongerNeverHoldsWhereWeakerFails) {
  using P = PropertyName;
  // (stronger, weaker) over the same inputs: compared input by input.
  const std::pair<P, P> same_inputs[] = {{P::PreservesPullbacks, P::PreservesWeakPullbacks},
                                         {P::PreservesWeakPullbacks, P::CoversPullbacks},
                                         {P::PreservesPullbacks, P::PreservesPullbacksAlongMonos},
                                         {P::PreservesKernelPairs, P::WeaklyPreservesKernelPairs},
                                         {P::WeaklyPreservesKernelPairs, P::CoversKernelPairs}};
  for (const auto& f : fixture::functors()) {
    const auto v = sweep(f, small_corpus(), kQuick);
    for (const auto& [strong, weak] : same_inputs) {
      const auto& a = v.at(strong).outcomes;
      const auto& b = v.at(weak).outcomes;
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == Outcome::Holds) {
          EXPECT_NE(b[i], Outcome::Fails) << f.text() << " input " << i;
        }
      if (v.at(strong).holds_without_cap_errors() && v.at(weak).cap_errors == 0) {
        EXPECT_TRUE(v.at(weak).holds()) << f.text() << " " << property_name(weak);
      }
    }
    if (v.at(P::PreservesPullbacks).holds_without_cap_errors() && v.at(P::PreservesRelations).cap_errors == 0) {
      EXPECT_TRUE(v.at(P::PreservesRelations).holds()) << f.text();
    }
  }
}

TEST(Hierarchy, CapErrorsCanHideAFailure) {
  // Both failing inputs exceed the cap for the enumeration route, so the
  // sweep reports a hold it could not decide.
  const FunctorExpr f = parse_functor("Comp(Pf(Id),P32)");
  const Verdict strong = check_property(f, PropertyName::PreservesPullbacks, small_corpus());
  const Verdict weak = check_property(f, PropertyName::PreservesWeakPullbacks, small_corpus());
  EXPECT_TRUE(strong.holds());
  EXPECT_GT(strong.cap_errors, 0U);
  EXPECT_FALSE(strong.holds_without_cap_errors());
  EXPECT_FALSE(weak.holds());
}

TEST(Collapse, CoversAndWeakPullbacksAgreeOnEveryDecidedInput) {
  using P = PropertyName;
  for (const auto& f : fixture::functors()) {
    const auto v = sweep(f, small_corpus(), kQuick);
    for (const auto& [a, b] : {std::pair{P::PreservesWeakPullbacks, P::CoversPullbacks},
                               std::pair{P::WeaklyPreservesKernelPairs, P::CoversKernelPairs}}) {
      const auto& x = v.at(a).outcomes;
      const auto& y = v.at(b).outcomes;
      ASSERT_EQ(x.size(), y.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != Outcome::CapError && y[i] != Outcome::CapError) {
          EXPECT_EQ(x[i], y[i]) << f.text() << " input " << i;
        }
    }
  }
}

TEST(GummSchroeder, CoversIffCoversKernelPairsAndAlongMonos) {
  using P = PropertyName;
  for (const auto& f : fixture::functors()) {
    const auto v = sweep(f, small_corpus(), kQuick);
    const bool decided = v.at(P::CoversPullbacks).cap_errors == 0 && v.at(P::CoversKernelPairs).cap_errors == 0 &&
                         v.at(P::PreservesPullbacksAlongMonos).cap_errors == 0;
    if (!decided) continue;
    EXPECT_EQ(v.at(P::CoversPullbacks).holds(),
              v.at(P::CoversKernelPairs).holds() && v.at(P::PreservesPullbacksAlongMonos).holds())
        << f.text();
  }
}

TEST(Composition, PropertiesSurviveComposition) {
  const std::vector<std::string> base = {"Id", "Const(a)", "Times(Id,Id)", "Pf(Id)", "P32", "Pow(Id,2)", "D(Id)"};
  const PropertyCorpus c = small_corpus();
  std::map<std::string, std::map<PropertyName, Verdict>> verdicts;
  for (const auto& t : base) verdicts.emplace(t, sweep(parse_functor(t), c, kQuick));
  std::size_t checked = 0;
  for (const auto& a : base)
    for (const auto& b : base) {
      const FunctorExpr comp = FunctorExpr::compose(parse_functor(a), parse_functor(b));
      for (const auto& [p, verdict] : sweep(comp, c, kQuick)) {
        if (verdict.cap_errors) continue;
        if (verdicts.at(a).at(p).holds_without_cap_errors() && verdicts.at(b).at(p).holds_without_cap_errors()) {
          ++checked;
          EXPECT_TRUE(verdict.holds()) << comp.text() << " " << property_name(p);
        }
      }
    }
  EXPECT_GT(checked, 100U);
}

TEST(Witness, NamesRoundTrip) {
  for (auto p : kPullbackProperties) EXPECT_EQ(parse_property_name(property_name(p)), p);
  for (auto p : kKernelPairProperties) EXPECT_EQ(parse_property_name(property_name(p)), p);
  EXPECT_FALSE(parse_property_name("Nope").has_value());
}
