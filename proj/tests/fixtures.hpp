#ifndef COALG_TESTS_FIXTURES_HPP
#define COALG_TESTS_FIXTURES_HPP

// Shared inputs: the functor corpus, small named systems and data paths.

#include <string>
#include <vector>

#include "coalg/coalg.hpp"

namespace fixture {

using namespace coalg;

inline const std::vector<std::string>& functor_texts() {
  static const std::vector<std::string> texts = {
      "Id",        "Const(a,b)",        "Times(Id,Id)",        "Plus(Const(a,b),Pow(Id,2))",
      "Pow(Id,3)", "Pow(Id,0)",         "Pf(Id)",              "Lts(a,b)",
      "D(Id)",     "P32",               "Comp(Pf(Id),P32)",    "Times(P32,Pf(Id))",
      "D(Plus(Id,Const(u)))", "Comp(Pow(Id,2),Pf(Id))", "Const()"};
  return texts;
}

inline std::vector<FunctorExpr> functors() {
  std::vector<FunctorExpr> out;
  for (const auto& t : functor_texts()) out.push_back(parse_functor(t));
  return out;
}

inline std::string data(const std::string& name) { return std::string(COALG_DATA_DIR) + "/" + name; }

/// x0 -a-> x1, x1 deadlocked; y0 deadlocked.
inline CoalgebraPair deadlock_pair() {
  return read_system(data("deadlock.sys")).pair();
}

inline Coalgebra lts(const std::string& labels, const std::string& states, const std::vector<std::string>& values) {
  const FunctorExpr f = parse_functor("Lts(" + labels + ")");
  FinSet x = parse_functor("Const(" + states + ")").constants();
  std::vector<FElem> structure;
  for (const auto& v : values) structure.push_back(parse_felem(v, f, x));
  return Coalgebra(f, x, std::move(structure));
}

}  // namespace fixture

#endif
