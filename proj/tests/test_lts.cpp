#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coalg;

namespace {

std::vector<CoalgebraPair> random_lts_pairs(std::uint64_t seed, int count, std::size_t max_states) {
  SeededRng rng(seed);
  const FinSet labels({"a", "b", "c"});
  std::vector<CoalgebraPair> out;
  for (int i = 0; i < count; ++i)
    out.emplace_back(random_lts(1 + rng.below(max_states), labels, rng, 1, 4, "x"),
                     random_lts(1 + rng.below(max_states), labels, rng, 1, 4, "y"));
  return out;
}

}  // namespace

TEST(LtsDirect, MatchesStructuralOperator) {
  SeededRng rng(1);
  for (const auto& p : random_lts_pairs(2, 40, 6))
    for (int i = 0; i < 8; ++i) {
      const Relation r = random_relation(p.left().carrier(), p.right().carrier(), rng);
      EXPECT_EQ(lts_phi_direct(p, r), phi_hj(p, r));
      EXPECT_TRUE(relation_leq(phi_hj(p, r), phi_am(p, r)));
    }
}

TEST(LtsDirect, RejectsOtherFunctors) {
  const CoalgebraPair coin = read_system(fixture::data("coin.sys")).pair();
  EXPECT_THROW(lts_phi_direct(coin, coin.full()), domain_error);
  EXPECT_THROW(partition_refinement_lts(coin), domain_error);
  EXPECT_THROW(minimize_lts(coin.left()), domain_error);
  const FunctorExpr unfolded = parse_functor("Pf(Times(Const(a),Id))");
  const Coalgebra c(unfolded, FinSet({"s"}), {parse_felem("{(a,s)}", unfolded, FinSet({"s"}))});
  EXPECT_THROW(minimize_lts(c), domain_error);  // only the named form is accepted
}

TEST(PartitionRefinement, EqualsGreatestFixpoint) {
  for (const auto& p : random_lts_pairs(3, 60, 8))
    EXPECT_EQ(partition_refinement_lts(p), greatest_fixpoint(p, Operator::HJ).limit());
}

TEST(PartitionRefinement, Milner) {
  const SystemFile file = read_system(fixture::data("milner.sys"));
  const CoalgebraPair p = file.pair();
  const Relation r = partition_refinement_lts(p);
  EXPECT_FALSE(relation_leq(file.relation("Roots"), r));
  const Relation want = Relation::from_names(p.left().carrier(), p.right().carrier(),
                                             {{"p2", "q3"}, {"p2", "q4"}, {"p3", "q3"}, {"p3", "q4"}});
  EXPECT_EQ(r, want);
}

TEST(Minimize, MilnerBlocks) {
  const CoalgebraPair p = read_system(fixture::data("milner.sys")).pair();
  const Partition left = minimize_lts(p.left());
  EXPECT_EQ(left.blocks, 3U);
  EXPECT_EQ(oracle::blocks(left.block_of), (std::set<std::set<std::size_t>>{{0}, {1}, {2, 3}}));
  const Partition right = minimize_lts(p.right());
  EXPECT_EQ(right.blocks, 4U);
  EXPECT_EQ(oracle::blocks(right.block_of), (std::set<std::set<std::size_t>>{{0}, {1}, {2}, {3, 4}}));
}

TEST(Minimize, QuotientIsStableAndCoarsest) {
  SeededRng rng(4);
  for (int i = 0; i < 40; ++i) {
    const Coalgebra c = random_lts(1 + rng.below(12), FinSet({"a", "b"}), rng, 1, 3);
    const Partition part = minimize_lts(c);
    const CoalgebraPair self(c, c);
    const Relation g = greatest_fixpoint(self, Operator::HJ).limit();
    EXPECT_TRUE(is_equivalence(g));
    std::vector<Relation::Pair> same;
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < c.size(); ++y)
        if (part.block_of[x] == part.block_of[y]) same.emplace_back(x, y);
    EXPECT_EQ(Relation(c.carrier(), c.carrier(), same), g);
    std::set<std::size_t> used(part.block_of.begin(), part.block_of.end());
    EXPECT_EQ(used.size(), part.blocks);
  }
}

TEST(Minimize, EmptySystem) {
  const Coalgebra c(parse_functor("Lts(a)"), FinSet(std::vector<std::string>{}), {});
  EXPECT_EQ(minimize_lts(c).blocks, 0U);
}
