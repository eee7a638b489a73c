#ifndef COALG_CORPUS_HPP
#define COALG_CORPUS_HPP

// Seeded generators for values, coalgebras and relations.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/finset.hpp"
#include "coalg/functor.hpp"

namespace coalg {

/// Portable bounded draws from a fixed engine; the standard distributions are
/// implementation-defined, this is not.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool coin(std::size_t num = 1, std::size_t den = 2) { return below(den) < num; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

using LeafDraw = std::function<std::optional<FElem>()>;

/// A random value of F over the leaves produced by `leaf`, or nothing if the
/// draw hit an uninhabited part of the functor.
inline std::optional<FElem> draw_value(const FunctorExpr& expr, const LeafDraw& leaf, SeededRng& rng,
                                       std::uint32_t grid) {
  using K = FunctorExpr::Kind;
  const FunctorExpr& f = expr.unfolded();
  switch (f.kind()) {
    case K::Identity:
      return leaf();
    case K::Constant:
      if (f.constants().size() == 0) return std::nullopt;
      return FElem::constant(rng.below(f.constants().size()));
    case K::Product:
    case K::Power: {
      const std::size_t arity = f.kind() == K::Product ? 2 : f.exponent();
      std::vector<FElem> items;
      for (std::size_t i = 0; i < arity; ++i) {
        auto v = draw_value(f.kind() == K::Product && i == 1 ? f.second() : f.first(), leaf, rng, grid);
        if (!v) return std::nullopt;
        items.push_back(std::move(*v));
      }
      return FElem::tuple(std::move(items));
    }
    case K::Coproduct: {
      const bool left = rng.coin();
      for (int attempt = 0; attempt < 2; ++attempt) {
        const bool side = attempt == 0 ? left : !left;
        if (auto v = draw_value(side ? f.first() : f.second(), leaf, rng, grid))
          return side ? FElem::inl(std::move(*v)) : FElem::inr(std::move(*v));
      }
      return std::nullopt;
    }
    case K::Compose: {
      LeafDraw inner = [&]() { return draw_value(f.second(), leaf, rng, grid); };
      return draw_value(f.first(), inner, rng, grid);
    }
    case K::FinPowerset: {
      std::vector<FElem> items;
      const std::size_t n = rng.below(4);
      for (std::size_t i = 0; i < n; ++i)
        if (auto v = draw_value(f.first(), leaf, rng, grid)) items.push_back(std::move(*v));
      return FElem::set(std::move(items));
    }
    case K::SubDistribution: {
      std::vector<std::pair<FElem, Weight>> mass;
      std::size_t left = grid;  // remaining mass in units of 1/grid
      const std::size_t n = rng.below(4);
      for (std::size_t i = 0; i < n && left > 0; ++i) {
        const std::size_t units = 1 + rng.below(left);
        if (auto v = draw_value(f.first(), leaf, rng, grid)) {
          mass.emplace_back(std::move(*v), Weight(static_cast<std::int64_t>(units), grid));
          left -= units;
        }
      }
      return FElem::dist(std::move(mass));
    }
    case K::AtMostTwoOfThree: {
      auto a = leaf();
      auto b = leaf();
      if (!a || !b) return std::nullopt;
      std::vector<FElem> items;
      for (int i = 0; i < 3; ++i) items.push_back(rng.coin() ? *a : *b);
      return FElem::tuple(std::move(items));
    }
    case K::LabelledTransitions:
      break;
  }
  return std::nullopt;
}

}  // namespace detail

/// A random element of F(X); nothing if the draw found no inhabitant.
inline std::optional<FElem> random_value(const FunctorExpr& f, std::size_t carrier_size, SeededRng& rng,
                                         std::uint32_t grid = 2) {
  detail::LeafDraw leaf = [&]() -> std::optional<FElem> {
    if (carrier_size == 0) return std::nullopt;
    return FElem::atom(rng.below(carrier_size));
  };
  for (int attempt = 0; attempt < 32; ++attempt)
    if (auto v = detail::draw_value(f, leaf, rng, grid)) return v;
  return std::nullopt;
}

/// A random coalgebra on `n` states named prefix0, prefix1, ...
inline Coalgebra random_coalgebra(const FunctorExpr& f, std::size_t n, SeededRng& rng, const std::string& prefix = "s",
                                  std::uint32_t grid = 2) {
  std::vector<FElem> structure;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = random_value(f, n, rng, grid);
    if (!v) throw domain_error(f.text() + " has no values on " + std::to_string(n) + " states");
    structure.push_back(std::move(*v));
  }
  return Coalgebra(f, FinSet::range(prefix, n), std::move(structure));
}

/// A random LTS where each (state, label, target) is present with
/// probability num/den.
inline Coalgebra random_lts(std::size_t n, const FinSet& labels, SeededRng& rng, std::size_t num, std::size_t den,
                            const std::string& prefix = "s") {
  std::vector<FElem> structure;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<FElem> moves;
    for (std::size_t l = 0; l < labels.size(); ++l)
      for (std::size_t t = 0; t < n; ++t)
        if (rng.coin(num, den)) moves.push_back(FElem::tuple({FElem::constant(l), FElem::atom(t)}));
    structure.push_back(FElem::set(std::move(moves)));
  }
  return Coalgebra(FunctorExpr::labelled_transitions(labels), FinSet::range(prefix, n), std::move(structure));
}

/// Every relation between X and Y; requires |X x Y| < 64.
inline std::vector<Relation> all_relations(const FinSet& x, const FinSet& y) {
  const std::size_t cells = x.size() * y.size();
  if (cells >= 24) throw size_error("too many relations to enumerate", cells, false);
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) out.push_back(Relation::from_mask(x, y, mask));
  return out;
}

/// A random relation where each pair is present with probability 1/2.
inline Relation random_relation(const FinSet& x, const FinSet& y, SeededRng& rng) {
  std::vector<Relation::Pair> pairs;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (rng.coin()) pairs.emplace_back(i, j);
  return Relation(x, y, std::move(pairs));
}

}  // namespace coalg

#endif
