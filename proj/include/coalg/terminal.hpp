#ifndef COALG_TERMINAL_HPP
#define COALG_TERMINAL_HPP

// Finite stages of the terminal sequence 1 <- F1 <- F^2 1 <- ..., represented
// by hash-consed symbolic terms, and the relations W_n obtained by pulling
// back the canonical cones of two coalgebras.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coalg/bisim.hpp"
#include "coalg/errors.hpp"
#include "coalg/felem.hpp"
#include "coalg/functor.hpp"

namespace coalg {

/// Interned elements of Z_n = F^n(1). Level 0 holds the single term Unit;
/// a level n+1 term is an F-value whose atoms are ids of level n terms.
class TermStore {
 public:
  using Id = std::uint32_t;

  explicit TermStore(FunctorExpr functor, std::size_t node_cap = 1000000)
      : functor_(std::move(functor)), node_cap_(node_cap) {
    entries_.push_back({0, FElem::constant(0)});
  }

  const FunctorExpr& functor() const noexcept { return functor_; }

  static constexpr Id unit() noexcept { return 0; }

  Id intern(std::size_t level, FElem value) {
    if (level == 0) return unit();
    Key key{level, std::move(value)};
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    if (entries_.size() >= node_cap_) throw size_error("symbolic term store exceeded its node cap", entries_.size(), true);
    const Id id = static_cast<Id>(entries_.size());
    entries_.push_back({level, key.value});
    index_.emplace(std::move(key), id);
    return id;
  }

  std::size_t level(Id id) const { return entries_.at(id).level; }
  const FElem& value(Id id) const { return entries_.at(id).value; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// The connecting map z_{n+1,n}: truncates a term by one level.
  Id step(Id id) {
    const std::size_t lvl = level(id);
    if (lvl == 0) throw domain_error("Z_0 has no step map below it");
    if (lvl == 1) return unit();
    if (auto it = step_.find(id); it != step_.end()) return it->second;
    const FElem current = value(id);  // interning below may reallocate entries_
    FElem truncated =
        fmap(functor_, current, [this](const FElem& leaf) { return FElem::atom(step(static_cast<Id>(leaf.index()))); });
    const Id out = intern(lvl - 1, std::move(truncated));
    step_.emplace(id, out);
    return out;
  }

  std::string text(Id id) const {
    if (level(id) == 0) return "*";
    std::string out;
    print_felem(out, functor_, value(id), [this](std::string& o, const FElem& leaf) {
      o += text(static_cast<Id>(leaf.index()));
    });
    return out;
  }

 private:
  struct Entry {
    std::size_t level;
    FElem value;
  };
  struct Key {
    std::size_t level;
    FElem value;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return k.value.hash() * 1000003U ^ k.level; }
  };

  FunctorExpr functor_;
  std::size_t node_cap_;
  std::vector<Entry> entries_;
  std::unordered_map<Key, Id, KeyHash> index_;
  std::unordered_map<Id, Id> step_;
};

/// The cones x_n : X -> Z_n and y_n : Y -> Z_n for n = 0, 1, ...
class TerminalSequence {
 public:
  explicit TerminalSequence(CoalgebraPair pair, std::size_t node_cap = 1000000)
      : pair_(std::move(pair)), store_(pair_.functor(), node_cap) {
    left_.emplace_back(pair_.left().size(), TermStore::unit());
    right_.emplace_back(pair_.right().size(), TermStore::unit());
  }

  const CoalgebraPair& pair() const noexcept { return pair_; }
  TermStore& store() noexcept { return store_; }

  void extend_to(std::size_t n) {
    while (left_.size() <= n) {
      const std::size_t m = left_.size() - 1;
      left_.push_back(advance(pair_.left(), left_[m], m + 1));
      right_.push_back(advance(pair_.right(), right_[m], m + 1));
    }
  }

  const std::vector<TermStore::Id>& left_cone(std::size_t n) {
    extend_to(n);
    return left_[n];
  }
  const std::vector<TermStore::Id>& right_cone(std::size_t n) {
    extend_to(n);
    return right_[n];
  }

  /// W_n = {(x, y) | x_n(x) = y_n(y)}.
  Relation relation(std::size_t n) {
    extend_to(n);
    std::vector<Relation::Pair> pairs;
    for (std::size_t x = 0; x < left_[n].size(); ++x)
      for (std::size_t y = 0; y < right_[n].size(); ++y)
        if (left_[n][x] == right_[n][y]) pairs.emplace_back(x, y);
    return Relation(pair_.left().carrier(), pair_.right().carrier(), std::move(pairs));
  }

  /// Whether z_{n+1,n} is injective on the level n+1 terms realized by the cones.
  bool step_injective_on_realized(std::size_t n) {
    extend_to(n + 1);
    std::vector<TermStore::Id> realized(left_[n + 1]);
    realized.insert(realized.end(), right_[n + 1].begin(), right_[n + 1].end());
    std::sort(realized.begin(), realized.end());
    realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
    std::unordered_map<TermStore::Id, TermStore::Id> seen;
    for (TermStore::Id t : realized)
      if (!seen.emplace(store_.step(t), t).second) return false;
    return true;
  }

 private:
  std::vector<TermStore::Id> advance(const Coalgebra& c, const std::vector<TermStore::Id>& prev, std::size_t level) {
    std::vector<TermStore::Id> next;
    next.reserve(c.size());
    for (std::size_t s = 0; s < c.size(); ++s)
      next.push_back(store_.intern(
          level, fmap(c.functor(), c(s), [&prev](const FElem& leaf) { return FElem::atom(prev[leaf.index()]); })));
    return next;
  }

  CoalgebraPair pair_;
  TermStore store_;
  std::vector<std::vector<TermStore::Id>> left_;
  std::vector<std::vector<TermStore::Id>> right_;
};

inline Relation terminal_sequence_relation(const CoalgebraPair& p, std::size_t n, std::size_t node_cap = 1000000) {
  TerminalSequence seq(p, node_cap);
  return seq.relation(n);
}

}  // namespace coalg

#endif
