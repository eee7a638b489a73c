#ifndef COALG_FUNCTOR_HPP
#define COALG_FUNCTOR_HPP

// Object and morphism action of functor expressions, validation of values,
// coalgebras, and the relation lifting.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/felem.hpp"
#include "coalg/finset.hpp"
#include "coalg/flow.hpp"
#include "coalg/function_ref.hpp"

namespace coalg {

struct EvalOptions {
  /// Largest number of values an enumeration may produce.
  std::uint64_t cap = 200000;
  /// Distributions are enumerated with weights in multiples of 1/grid.
  std::uint32_t grid = 2;
};

using LeafCheck = function_ref<void(const FElem&)>;
using LeafMap = function_ref<FElem(const FElem&)>;
using LeafWitness = function_ref<std::optional<FElem>(const FElem&, const FElem&)>;

namespace detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

inline std::uint64_t sat_pow(std::uint64_t base, std::size_t exponent) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated) break;
  }
  return r;
}

/// C(m + q, q): ways to place at most q indivisible units on m items.
inline std::uint64_t grid_distributions(std::uint64_t m, std::uint32_t q) {
  unsigned __int128 r = 1;
  for (std::uint32_t i = 1; i <= q; ++i) {
    r = r * (static_cast<unsigned __int128>(m) + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

/// Number of values of F over a carrier with `leaves` elements (saturating).
inline std::uint64_t object_count(const FunctorExpr& expr, std::uint64_t leaves, std::uint32_t grid) {
  using K = FunctorExpr::Kind;
  const FunctorExpr& f = expr.unfolded();
  switch (f.kind()) {
    case K::Identity: return leaves;
    case K::Constant: return f.constants().size();
    case K::Product: return sat_mul(object_count(f.first(), leaves, grid), object_count(f.second(), leaves, grid));
    case K::Coproduct: return sat_add(object_count(f.first(), leaves, grid), object_count(f.second(), leaves, grid));
    case K::Power: return sat_pow(object_count(f.first(), leaves, grid), f.exponent());
    case K::Compose: return object_count(f.first(), object_count(f.second(), leaves, grid), grid);
    case K::FinPowerset: {
      const std::uint64_t m = object_count(f.first(), leaves, grid);
      return m >= 64 ? kSaturated : (std::uint64_t{1} << m);
    }
    case K::SubDistribution: return grid_distributions(object_count(f.first(), leaves, grid), grid);
    case K::AtMostTwoOfThree: {
      // n constant triples plus 3 n (n-1) triples with exactly two distinct entries
      const std::uint64_t two = leaves == 0 ? 0 : sat_mul(3, sat_mul(leaves, leaves - 1));
      return sat_add(leaves, two);
    }
    case K::LabelledTransitions: break;
  }
  return 0;
}

inline void check_cap(std::uint64_t count, const EvalOptions& opts, const std::string& what) {
  if (count > opts.cap)
    throw size_error(what + " has " + (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                         " values, cap is " + std::to_string(opts.cap),
                     count, count == kSaturated);
}

inline std::vector<FElem> enumerate(const FunctorExpr& expr, const std::vector<FElem>& leaves, const EvalOptions& opts) {
  using K = FunctorExpr::Kind;
  const FunctorExpr& f = expr.unfolded();
  check_cap(object_count(f, leaves.size(), opts.grid), opts, f.text());
  std::vector<FElem> out;
  switch (f.kind()) {
    case K::Identity:
      out = leaves;
      break;
    case K::Constant:
      for (std::size_t i = 0; i < f.constants().size(); ++i) out.push_back(FElem::constant(i));
      break;
    case K::Product: {
      if (object_count(f.first(), leaves.size(), opts.grid) == 0 || object_count(f.second(), leaves.size(), opts.grid) == 0)
        break;
      auto a = enumerate(f.first(), leaves, opts);
      auto b = enumerate(f.second(), leaves, opts);
      for (const auto& x : a)
        for (const auto& y : b) out.push_back(FElem::tuple({x, y}));
      break;
    }
    case K::Power: {
      std::vector<std::vector<FElem>> partial{{}};
      if (f.exponent() > 0) {
        if (object_count(f.first(), leaves.size(), opts.grid) == 0) break;
        auto base = enumerate(f.first(), leaves, opts);
        for (std::size_t k = 0; k < f.exponent(); ++k) {
          std::vector<std::vector<FElem>> next;
          for (const auto& prefix : partial)
            for (const auto& v : base) {
              next.push_back(prefix);
              next.back().push_back(v);
            }
          partial = std::move(next);
        }
      }
      for (auto& items : partial) out.push_back(FElem::tuple(std::move(items)));
      break;
    }
    case K::Coproduct:
      for (auto& v : enumerate(f.first(), leaves, opts)) out.push_back(FElem::inl(std::move(v)));
      for (auto& v : enumerate(f.second(), leaves, opts)) out.push_back(FElem::inr(std::move(v)));
      break;
    case K::Compose:
      out = enumerate(f.first(), enumerate(f.second(), leaves, opts), opts);
      break;
    case K::FinPowerset: {
      auto base = enumerate(f.first(), leaves, opts);
      const std::uint64_t subsets = std::uint64_t{1} << base.size();
      out.reserve(subsets);
      for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<FElem> items;
        for (std::size_t i = 0; i < base.size(); ++i)
          if ((mask >> i) & 1U) items.push_back(base[i]);
        out.push_back(FElem::set(std::move(items)));
      }
      break;
    }
    case K::SubDistribution: {
      auto base = enumerate(f.first(), leaves, opts);
      const std::uint32_t q = opts.grid;
      if (q == 0) throw domain_error("distribution grid must be positive");
      std::vector<std::uint32_t> units(base.size(), 0);
      // Odometer over unit assignments with total at most q.
      auto emit = [&] {
        std::vector<std::pair<FElem, Weight>> mass;
        for (std::size_t i = 0; i < base.size(); ++i)
          if (units[i] > 0) mass.emplace_back(base[i], Weight(units[i], q));
        out.push_back(FElem::dist(std::move(mass)));
      };
      std::uint32_t used = 0;
      while (true) {
        emit();
        std::size_t i = 0;
        while (i < units.size()) {
          if (used < q) {
            ++units[i];
            ++used;
            break;
          }
          used -= units[i];
          units[i] = 0;
          ++i;
        }
        if (i == units.size()) break;
      }
      break;
    }
    case K::AtMostTwoOfThree:
      for (const auto& a : leaves)
        for (const auto& b : leaves)
          for (const auto& c : leaves)
            if (a == b || b == c || a == c) out.push_back(FElem::tuple({a, b, c}));
      break;
    case K::LabelledTransitions:
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool strictly_sorted(const std::vector<FElem>& items) {
  for (std::size_t i = 1; i < items.size(); ++i)
    if (!(items[i - 1] < items[i])) return false;
  return true;
}

inline std::size_t distinct_count(const std::vector<FElem>& items) {
  std::vector<FElem> copy = items;
  std::sort(copy.begin(), copy.end());
  return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
}

}  // namespace detail

/// Throws shape_error unless `value` is a well-formed element of F over the
/// leaves accepted by `leaf`.
inline void validate(const FunctorExpr& expr, const FElem& value, LeafCheck leaf) {
  using K = FunctorExpr::Kind;
  using EK = FElem::Kind;
  const FunctorExpr& f = expr.unfolded();
  auto fail = [&](const std::string& why) { throw shape_error("not an element of " + f.text() + ": " + why); };
  switch (f.kind()) {
    case K::Identity:
      leaf(value);
      return;
    case K::Constant:
      if (value.kind() != EK::Const || value.index() >= f.constants().size()) fail("expected a constant");
      return;
    case K::Product:
      if (value.kind() != EK::Tuple || value.items().size() != 2) fail("expected a pair");
      validate(f.first(), value.items()[0], leaf);
      validate(f.second(), value.items()[1], leaf);
      return;
    case K::Power:
      if (value.kind() != EK::Tuple || value.items().size() != f.exponent())
        fail("expected a " + std::to_string(f.exponent()) + "-tuple");
      for (const auto& item : value.items()) validate(f.first(), item, leaf);
      return;
    case K::Coproduct:
      if (value.kind() == EK::Inl) validate(f.first(), value.inner(), leaf);
      else if (value.kind() == EK::Inr) validate(f.second(), value.inner(), leaf);
      else fail("expected an injection");
      return;
    case K::Compose:
      validate(f.first(), value, [&](const FElem& inner) { validate(f.second(), inner, leaf); });
      return;
    case K::FinPowerset:
      if (value.kind() != EK::Set) fail("expected a set");
      if (!detail::strictly_sorted(value.items())) fail("set items not canonical");
      for (const auto& item : value.items()) validate(f.first(), item, leaf);
      return;
    case K::SubDistribution: {
      if (value.kind() != EK::Dist || value.weights().size() != value.items().size()) fail("expected a distribution");
      if (!detail::strictly_sorted(value.items())) fail("distribution support not canonical");
      for (const auto& w : value.weights())
        if (w <= Weight(0)) fail("support weights must be positive");
      if (value.total_mass() > Weight(1)) fail("total mass exceeds 1");
      for (const auto& item : value.items()) validate(f.first(), item, leaf);
      return;
    }
    case K::AtMostTwoOfThree:
      if (value.kind() != EK::Tuple || value.items().size() != 3) fail("expected a triple");
      for (const auto& item : value.items()) leaf(item);
      if (detail::distinct_count(value.items()) > 2) fail("triple has three distinct entries");
      return;
    case K::LabelledTransitions:
      return;
  }
}

/// Validates `value` as an element of F(X) for a carrier of size `carrier_size`.
inline void validate(const FunctorExpr& f, const FElem& value, std::size_t carrier_size) {
  validate(f, value, [carrier_size](const FElem& leaf) {
    if (leaf.kind() != FElem::Kind::Atom || leaf.index() >= carrier_size)
      throw shape_error("leaf is not an element of the carrier");
  });
}

inline bool is_valid(const FunctorExpr& f, const FElem& value, std::size_t carrier_size) {
  try {
    validate(f, value, carrier_size);
    return true;
  } catch (const shape_error&) {
    return false;
  }
}

/// Structural action of F on a map of leaves. Sets are re-canonicalised,
/// distributions push weight forward and sum over fibres.
inline FElem fmap(const FunctorExpr& expr, const FElem& value, LeafMap leaf) {
  using K = FunctorExpr::Kind;
  const FunctorExpr& f = expr.unfolded();
  switch (f.kind()) {
    case K::Identity:
      return leaf(value);
    case K::Constant:
      return value;
    case K::Product:
      return FElem::tuple({fmap(f.first(), value.items().at(0), leaf), fmap(f.second(), value.items().at(1), leaf)});
    case K::Power: {
      std::vector<FElem> items;
      items.reserve(value.items().size());
      for (const auto& item : value.items()) items.push_back(fmap(f.first(), item, leaf));
      return FElem::tuple(std::move(items));
    }
    case K::Coproduct:
      return value.kind() == FElem::Kind::Inl ? FElem::inl(fmap(f.first(), value.inner(), leaf))
                                              : FElem::inr(fmap(f.second(), value.inner(), leaf));
    case K::Compose:
      return fmap(f.first(), value, [&](const FElem& inner) { return fmap(f.second(), inner, leaf); });
    case K::FinPowerset: {
      std::vector<FElem> items;
      items.reserve(value.items().size());
      for (const auto& item : value.items()) items.push_back(fmap(f.first(), item, leaf));
      return FElem::set(std::move(items));
    }
    case K::SubDistribution: {
      std::vector<std::pair<FElem, Weight>> mass;
      mass.reserve(value.items().size());
      for (std::size_t i = 0; i < value.items().size(); ++i)
        mass.emplace_back(fmap(f.first(), value.items()[i], leaf), value.weights()[i]);
      return FElem::dist(std::move(mass));
    }
    case K::AtMostTwoOfThree: {
      std::vector<FElem> items;
      for (const auto& item : value.items()) items.push_back(leaf(item));
      return FElem::tuple(std::move(items));
    }
    case K::LabelledTransitions:
      break;
  }
  return value;
}

/// F(f)(value); `value` must be an element of F(dom f).
inline FElem eval_morphism(const FunctorExpr& f, const FinFunction& fn, const FElem& value) {
  validate(f, value, fn.dom().size());
  return fmap(f, value, [&fn](const FElem& leaf) { return FElem::atom(fn(leaf.index())); });
}

/// All values of F(X) in canonical order; size_error past `opts.cap`.
inline std::vector<FElem> eval_object(const FunctorExpr& f, const FinSet& x, const EvalOptions& opts = {}) {
  std::vector<FElem> leaves;
  leaves.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) leaves.push_back(FElem::atom(i));
  return detail::enumerate(f, leaves, opts);
}

inline std::uint64_t object_size(const FunctorExpr& f, std::size_t carrier_size, std::uint32_t grid = 2) {
  return detail::object_count(f, carrier_size, grid);
}

/// Searches for w in F(R) with F(p)(w) = a and F(q)(w) = b, where R's leaf
/// pairs are resolved by `leaf`. Complete: if any such w exists one is
/// returned. Identical leaf pairs always receive identical witnesses.
inline std::optional<FElem> lift_witness(const FunctorExpr& expr, const FElem& a, const FElem& b, LeafWitness leaf) {
  using K = FunctorExpr::Kind;
  using EK = FElem::Kind;
  const FunctorExpr& f = expr.unfolded();
  switch (f.kind()) {
    case K::Identity:
      return leaf(a, b);
    case K::Constant:
      if (a == b) return a;
      return std::nullopt;
    case K::Product:
    case K::Power:
    case K::AtMostTwoOfThree: {
      if (a.items().size() != b.items().size()) return std::nullopt;
      std::vector<FElem> items;
      for (std::size_t i = 0; i < a.items().size(); ++i) {
        std::optional<FElem> w;
        if (f.kind() == K::AtMostTwoOfThree) w = leaf(a.items()[i], b.items()[i]);
        else w = lift_witness(f.kind() == K::Product ? (i == 0 ? f.first() : f.second()) : f.first(), a.items()[i],
                              b.items()[i], leaf);
        if (!w) return std::nullopt;
        items.push_back(std::move(*w));
      }
      if (f.kind() == K::AtMostTwoOfThree && detail::distinct_count(items) > 2) return std::nullopt;
      return FElem::tuple(std::move(items));
    }
    case K::Coproduct: {
      if (a.kind() != b.kind()) return std::nullopt;
      auto w = lift_witness(a.kind() == EK::Inl ? f.first() : f.second(), a.inner(), b.inner(), leaf);
      if (!w) return std::nullopt;
      return a.kind() == EK::Inl ? FElem::inl(std::move(*w)) : FElem::inr(std::move(*w));
    }
    case K::Compose:
      return lift_witness(f.first(), a, b,
                          [&](const FElem& la, const FElem& lb) { return lift_witness(f.second(), la, lb, leaf); });
    case K::FinPowerset: {
      // The union of all admissible witnesses is admissible, so it suffices
      // that every item on each side has some partner on the other.
      const auto& left = a.items();
      const auto& right = b.items();
      std::vector<char> left_hit(left.size(), 0), right_hit(right.size(), 0);
      std::vector<FElem> items;
      for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
          if (auto w = lift_witness(f.first(), left[i], right[j], leaf)) {
            left_hit[i] = right_hit[j] = 1;
            items.push_back(std::move(*w));
          }
      if (std::count(left_hit.begin(), left_hit.end(), 0) || std::count(right_hit.begin(), right_hit.end(), 0))
        return std::nullopt;
      return FElem::set(std::move(items));
    }
    case K::SubDistribution: {
      // A coupling of the two masses supported on liftable item pairs.
      if (a.total_mass() != b.total_mass()) return std::nullopt;
      const auto& left = a.items();
      const auto& right = b.items();
      const std::size_t source = left.size() + right.size();
      const std::size_t sink = source + 1;
      detail::RationalFlow network(sink + 1);
      for (std::size_t i = 0; i < left.size(); ++i) network.add_edge(source, i, a.weights()[i]);
      for (std::size_t j = 0; j < right.size(); ++j) network.add_edge(left.size() + j, sink, b.weights()[j]);
      std::vector<std::pair<std::size_t, FElem>> couplings;
      for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
          if (auto w = lift_witness(f.first(), left[i], right[j], leaf))
            couplings.emplace_back(network.add_edge(i, left.size() + j, std::nullopt), std::move(*w));
      if (network.max_flow(source, sink) != a.total_mass()) return std::nullopt;
      std::vector<std::pair<FElem, Weight>> mass;
      for (auto& [edge, w] : couplings) mass.emplace_back(std::move(w), network.flow_on(edge));
      return FElem::dist(std::move(mass));
    }
    case K::LabelledTransitions:
      break;
  }
  return std::nullopt;
}

/// Witness in F(R) (atoms index R.pairs()) for (a, b) in the lifting of R.
inline std::optional<FElem> lifting_witness(const FunctorExpr& f, const Relation& r, const FElem& a, const FElem& b) {
  return lift_witness(f, a, b, [&r](const FElem& x, const FElem& y) -> std::optional<FElem> {
    if (auto pos = r.position(x.index(), y.index())) return FElem::atom(*pos);
    return std::nullopt;
  });
}

inline bool lifting_contains(const FunctorExpr& f, const Relation& r, const FElem& a, const FElem& b) {
  return lifting_witness(f, r, a, b).has_value();
}

/// The image of <F p, F q> : F(R) -> F(X) x F(Y), by enumerating F(R).
inline std::vector<std::pair<FElem, FElem>> lifted_pairs(const FunctorExpr& f, const Relation& r,
                                                         const EvalOptions& opts = {}) {
  std::vector<FElem> leaves;
  for (std::size_t i = 0; i < r.size(); ++i) leaves.push_back(FElem::atom(i));
  const auto pairs = r.pairs();
  std::vector<std::pair<FElem, FElem>> out;
  for (const auto& w : detail::enumerate(f, leaves, opts)) {
    out.emplace_back(fmap(f, w, [&](const FElem& l) { return FElem::atom(pairs[l.index()].first); }),
                     fmap(f, w, [&](const FElem& l) { return FElem::atom(pairs[l.index()].second); }));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Lifting {
  std::vector<FElem> left_values;   // F(X), canonical order
  std::vector<FElem> right_values;  // F(Y), canonical order
  Relation relation;                // over carriers named by the values' text
};

/// The relation lifting as a relation between F(X) and F(Y).
inline Lifting relation_lifting(const FunctorExpr& f, const Relation& r, const EvalOptions& opts = {}) {
  Lifting out;
  out.left_values = eval_object(f, r.left(), opts);
  out.right_values = eval_object(f, r.right(), opts);
  auto name_all = [&](const std::vector<FElem>& values, const FinSet& carrier) {
    std::vector<std::string> names;
    names.reserve(values.size());
    for (const auto& v : values) names.push_back(felem_text(f, v, carrier));
    return FinSet(std::move(names));
  };
  FinSet left = name_all(out.left_values, r.left());
  FinSet right = name_all(out.right_values, r.right());
  auto index_in = [](const std::vector<FElem>& values, const FElem& v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) - values.begin());
  };
  std::vector<Relation::Pair> pairs;
  for (const auto& [a, b] : lifted_pairs(f, r, opts))
    pairs.emplace_back(index_in(out.left_values, a), index_in(out.right_values, b));
  out.relation = Relation(std::move(left), std::move(right), std::move(pairs));
  return out;
}

/// A carrier with a structure map into F(carrier).
class Coalgebra {
 public:
  Coalgebra() = default;

  Coalgebra(FunctorExpr functor, FinSet carrier, std::vector<FElem> structure)
      : functor_(std::move(functor)), carrier_(std::move(carrier)), structure_(std::move(structure)) {
    if (structure_.size() != carrier_.size()) throw domain_error("structure map must be defined on every state");
    for (std::size_t i = 0; i < structure_.size(); ++i) {
      try {
        validate(functor_, structure_[i], carrier_.size());
      } catch (const shape_error& e) {
        throw shape_error("state '" + carrier_[i] + "': " + e.what());
      }
    }
  }

  const FunctorExpr& functor() const noexcept { return functor_; }
  const FinSet& carrier() const noexcept { return carrier_; }
  const std::vector<FElem>& structure() const noexcept { return structure_; }
  const FElem& operator()(std::size_t state) const { return structure_.at(state); }
  std::size_t size() const noexcept { return carrier_.size(); }

  std::string text_of(std::size_t state) const { return felem_text(functor_, structure_.at(state), carrier_); }

 private:
  FunctorExpr functor_;
  FinSet carrier_;
  std::vector<FElem> structure_;
};

/// F(f) . h = k . f
inline bool is_homomorphism(const Coalgebra& from, const Coalgebra& to, const FinFunction& f) {
  if (!(f.dom() == from.carrier()) || !(f.cod() == to.carrier())) return false;
  for (std::size_t x = 0; x < from.size(); ++x)
    if (!(eval_morphism(from.functor(), f, from(x)) == to(f(x)))) return false;
  return true;
}

}  // namespace coalg

#endif
