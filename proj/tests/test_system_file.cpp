#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coalg;

namespace {

template <class Error>
Error expect_error(const std::string& text) {
  try {
    (void)parse_system(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Error("", 0, 0);
}

}  // namespace

TEST(SystemFile, ReadsDataFiles) {
  const SystemFile d = read_system(fixture::data("deadlock.sys"));
  EXPECT_EQ(d.functor.text(), "Lts(a)");
  ASSERT_EQ(d.systems.size(), 2U);
  EXPECT_EQ(d.systems[0].name, "X");
  EXPECT_EQ(d.systems[0].coalgebra.text_of(0), "{(a,x1)}");
  EXPECT_EQ(d.systems[1].coalgebra.text_of(0), "{}");
  EXPECT_EQ(oracle::pair_set(d.relation("R")), (std::set<std::pair<std::size_t, std::size_t>>{{1, 0}}));
  EXPECT_EQ(d.relation("Full"), d.pair().full());
  EXPECT_THROW(d.relation("Nope"), validation_error);
}

TEST(SystemFile, RoundTripsEveryDataFile) {
  for (const char* name : {"deadlock.sys", "milner.sys", "p32_separator.sys", "coin.sys"}) {
    const SystemFile a = read_system(fixture::data(name));
    const std::string text = write_system(a);
    const SystemFile b = parse_system(text);
    EXPECT_EQ(write_system(b), text) << name;
    ASSERT_EQ(b.systems.size(), a.systems.size());
    for (std::size_t i = 0; i < a.systems.size(); ++i) {
      EXPECT_EQ(b.systems[i].coalgebra.carrier(), a.systems[i].coalgebra.carrier());
      EXPECT_EQ(b.systems[i].coalgebra.structure(), a.systems[i].coalgebra.structure());
    }
    for (const auto& r : a.relations) EXPECT_EQ(b.relation(r.name), r.relation);
  }
}

TEST(SystemFile, RoundTripsRandomSystems) {
  SeededRng rng(3);
  for (const auto& f : fixture::functors()) {
    if (f.kind() == FunctorExpr::Kind::Constant && f.constants().size() == 0) continue;
    for (int i = 0; i < 5; ++i) {
      const Coalgebra c = random_coalgebra(f, 1 + rng.below(5), rng);
      SystemFile file{f, {{"S", c}}, {{"D", Relation::diagonal(c.carrier())}}};
      const SystemFile back = parse_system(write_system(file));
      EXPECT_EQ(back.systems[0].coalgebra.structure(), c.structure()) << f.text();
      EXPECT_EQ(back.relation("D"), Relation::diagonal(c.carrier()));
    }
  }
}

TEST(SystemFile, SingleSystemIsComparedWithItself) {
  const SystemFile f = parse_system("functor: Pf(Id)\nsystem S: s t\n  s -> {t}\n  t -> {}\n");
  const CoalgebraPair p = f.pair();
  EXPECT_EQ(p.left().carrier(), p.right().carrier());
}

TEST(SystemFile, ContinuationLinesAndComments) {
  const SystemFile f = parse_system(
      "# leading comment\n"
      "functor: Lts(a)   # trailing\n"
      "system X: x0 x1\n"
      "  x0 -> {(a,x1)}\n"
      "  x1 -> {}\n"
      "relation R: (x0,x0)\n"
      "  (x1,x1)\n"
      "\n"
      "  (x0,x1)\n");
  EXPECT_EQ(f.relation("R").pairs().size(), 3U);
}

TEST(SystemFile, ValidationErrors) {
  EXPECT_THROW(parse_system("system X: x\n  x -> {}\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x\n  y -> {}\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x\n  x -> {(a,y)}\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x y\n  x -> {}\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x\n  x -> {}\n  x -> {}\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x x\n  x -> {}\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x\n  x -> {}\nrelation R: (x,z)\n"), validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem X: x\n  x -> {}\nrelation R: (x,x)\nrelation R: (x,x)\n"),
               validation_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nrelation R: (x,x)\n"), validation_error);
  EXPECT_THROW(parse_system("functor: P32\nsystem X: x y z\n  x -> (x,y,z)\n  y -> (y,y,y)\n  z -> (z,z,z)\n"),
               shape_error);
}

TEST(SystemFile, ParseErrorsCarryPosition) {
  const auto bad_value = expect_error<parse_error>("functor: Lts(a)\nsystem X: x\n  x -> {(a,x)\n");
  EXPECT_EQ(bad_value.line(), 3U);
  EXPECT_GT(bad_value.column(), 7U);
  const auto bad_keyword = expect_error<parse_error>("functor: Lts(a)\nsytem X: x\n");
  EXPECT_EQ(bad_keyword.line(), 2U);
  EXPECT_EQ(bad_keyword.column(), 1U);
  const auto bad_functor = expect_error<parse_error>("functor: Pf(Foo)\n");
  EXPECT_EQ(bad_functor.line(), 1U);
  EXPECT_EQ(bad_functor.column(), 13U);
  const auto bad_pair = expect_error<parse_error>("functor: Lts(a)\nsystem X: x\n  x -> {}\nrelation R: (x x)\n");
  EXPECT_EQ(bad_pair.line(), 4U);
  EXPECT_EQ(bad_pair.column(), 16U);
  EXPECT_THROW(parse_system("functor: Lts(a)\n  x -> {}\n"), parse_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nfunctor: Lts(a)\n"), parse_error);
  EXPECT_THROW(parse_system("functor: Lts(a)\nsystem A: a\n  a -> {}\nsystem B: b\n  b -> {}\nsystem C: c\n  c -> {}\n"),
               parse_error);
}

TEST(Aut, ReadsExample) {
  const Coalgebra c = import_aut(read_text_file(fixture::data("two_step.aut")));
  EXPECT_EQ(c.functor().text(), "Lts(a,b)");
  ASSERT_EQ(c.size(), 3U);
  EXPECT_EQ(c.text_of(0), "{(a,1),(a,2)}");
  EXPECT_EQ(c.text_of(1), "{(b,0)}");
  EXPECT_EQ(c.text_of(2), "{}");
}

TEST(Aut, DuplicateTransitionsCollapse) {
  const Coalgebra c = import_aut("des (0,3,2)\n(0,\"a\",1)\n(0,\"a\",1)\n(1,a,0)\n");
  EXPECT_EQ(transitions(c, 0).size(), 1U);
  EXPECT_EQ(write_aut(c), "des (0,2,2)\n(0,\"a\",1)\n(1,\"a\",0)\n");
}

TEST(Aut, HeaderValidation) {
  EXPECT_THROW(import_aut(""), parse_error);
  EXPECT_THROW(import_aut("(0,a,1)\n"), parse_error);
  EXPECT_THROW(import_aut("des (0,2,2)\n(0,a,1)\n"), parse_error);
  EXPECT_THROW(import_aut("des (0,1,2)\n(0,a,2)\n"), parse_error);
  EXPECT_THROW(import_aut("des (2,0,2)\n"), parse_error);
  EXPECT_THROW(import_aut("des (0,0,0)\n"), parse_error);
  EXPECT_THROW(import_aut("des (0,1,2)\n(0,\"\",1)\n"), parse_error);
  EXPECT_THROW(write_aut(read_system(fixture::data("coin.sys")).pair().left()), domain_error);
}

TEST(Aut, PairSharesLabels) {
  const CoalgebraPair p = import_aut_pair("des (0,1,1)\n(0,a,0)\n", "des (0,1,1)\n(0,b,0)\n");
  EXPECT_EQ(p.functor().text(), "Lts(a,b)");
  EXPECT_EQ(partition_refinement_lts(p), Relation::empty(p.left().carrier(), p.right().carrier()));
}

TEST(Aut, RandomRoundTripThroughSystemFiles) {
  SeededRng rng(5);
  for (int i = 0; i < 10; ++i) {
    const Coalgebra c = random_lts(30, FinSet({"a", "b", "tau"}), rng, 1, 10);
    const std::string aut = write_aut(c);
    const Coalgebra back = import_aut(aut);
    const SystemFile file{back.functor(), {{"A", back}}, {}};
    const SystemFile again = parse_system(write_system(file));
    EXPECT_EQ(write_aut(again.systems[0].coalgebra), aut);
    // Unused labels drop out of the imported alphabet, so compare behaviour.
    const Partition p1 = minimize_lts(back), p2 = minimize_lts(again.systems[0].coalgebra);
    EXPECT_EQ(oracle::blocks(p1.block_of), oracle::blocks(p2.block_of));
  }
}
