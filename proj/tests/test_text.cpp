#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace coalg;

TEST(FunctorText, RoundTrips) {
  for (const auto& t : fixture::functor_texts()) EXPECT_EQ(parse_functor(t).text(), t);
}

TEST(FunctorText, WhitespaceAndQuotingNormalise) {
  EXPECT_EQ(parse_functor(" Pf ( Times( Const( a , b ), Id ) ) ").text(), "Pf(Times(Const(a,b),Id))");
  EXPECT_EQ(parse_functor("Const(\"a b\",c)").text(), "Const(\"a b\",c)");
  EXPECT_EQ(parse_functor("Lts(a)").unfolded().text(), "Pf(Times(Const(a),Id))");
}

TEST(FunctorText, ErrorsCarryPosition) {
  try {
    (void)parse_functor("Pf(Foo)");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 1U);
    EXPECT_EQ(e.column(), 4U);
  }
  EXPECT_THROW(parse_functor("Pf(Id"), parse_error);
  EXPECT_THROW(parse_functor("Pow(Id,-1)"), parse_error);
  EXPECT_THROW(parse_functor("Id Id"), parse_error);
  EXPECT_THROW(parse_functor("Const(a,a)"), std::exception);
}

TEST(ValueText, RoundTripsOnRandomValues) {
  SeededRng rng(7);
  for (const auto& f : fixture::functors())
    for (std::size_t n = 1; n <= 3; ++n) {
      const FinSet x = FinSet::range("x", n);
      for (int i = 0; i < 20; ++i) {
        auto v = random_value(f, n, rng);
        if (!v) continue;
        const std::string t = felem_text(f, *v, x);
        EXPECT_EQ(parse_felem(t, f, x), *v) << f.text() << " " << t;
      }
    }
}

TEST(ValueText, CanonicalForms) {
  const FinSet x({"a", "b"});
  const FunctorExpr pf = parse_functor("Pf(Id)");
  EXPECT_EQ(felem_text(pf, parse_felem("{b,a,b}", pf, x), x), "{a,b}");
  const FunctorExpr d = parse_functor("D(Id)");
  EXPECT_EQ(felem_text(d, parse_felem("{b:1/4,a:1/2,b:1/4}", d, x), x), "{a:1/2,b:1/2}");
  EXPECT_EQ(felem_text(d, parse_felem("{a:2/4}", d, x), x), "{a:1/2}");
  const FunctorExpr plus = parse_functor("Plus(Const(z),Pow(Id,2))");
  EXPECT_EQ(felem_text(plus, parse_felem("inr((b,a))", plus, x), x), "inr((b,a))");
  const FunctorExpr p0 = parse_functor("Pow(Id,0)");
  EXPECT_EQ(felem_text(p0, parse_felem("()", p0, x), x), "()");
  const FinSet odd({"has space", "q\"uote"});
  const FElem v = parse_felem("{\"has space\",\"q\\\"uote\"}", pf, odd);
  EXPECT_EQ(parse_felem(felem_text(pf, v, odd), pf, odd), v);
}

TEST(ValueText, Errors) {
  const FinSet x({"a", "b", "c"});
  EXPECT_THROW(parse_felem("(a,b,c)", parse_functor("P32"), x), shape_error);
  EXPECT_THROW(parse_felem("{a:1,b:1/2}", parse_functor("D(Id)"), x), shape_error);
  EXPECT_THROW(parse_felem("{a:1/0}", parse_functor("D(Id)"), x), parse_error);
  EXPECT_THROW(parse_felem("{d}", parse_functor("Pf(Id)"), x), validation_error);
  EXPECT_THROW(parse_felem("e", parse_functor("Const(a)"), x), parse_error);
  EXPECT_THROW(parse_felem("left(a)", parse_functor("Plus(Id,Id)"), x), parse_error);
  EXPECT_THROW(parse_felem("{a} b", parse_functor("Pf(Id)"), x), parse_error);
  EXPECT_THROW(parse_felem("(a,b)", parse_functor("Pow(Id,3)"), x), parse_error);
}
