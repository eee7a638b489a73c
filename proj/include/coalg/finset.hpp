#ifndef COALG_FINSET_HPP
#define COALG_FINSET_HPP

// Finite sets, total functions, relations (as explicit pair sets) and the
// finite limits/colimits built from them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"

namespace coalg {

/// A finite carrier of named elements. Iteration order is the construction
/// order and never changes. Copies share the underlying storage.
class FinSet {
 public:
  FinSet() : data_(empty_data()) {}

  explicit FinSet(std::vector<std::string> elements) {
    auto data = std::make_shared<Data>();
    data->index.reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (!data->index.emplace(elements[i], i).second)
        throw domain_error("duplicate element '" + elements[i] + "' in finite set");
    }
    data->elements = std::move(elements);
    data_ = std::move(data);
  }

  /// {prefix0, prefix1, ..., prefix(n-1)}
  static FinSet range(std::string_view prefix, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
    return FinSet(std::move(names));
  }

  std::size_t size() const noexcept { return data_->elements.size(); }
  bool empty() const noexcept { return data_->elements.empty(); }
  const std::string& operator[](std::size_t i) const { return data_->elements.at(i); }
  std::span<const std::string> elements() const noexcept { return data_->elements; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = data_->index.find(name);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& name) const {
    auto found = find(name);
    if (!found) throw domain_error("'" + name + "' is not an element of the carrier");
    return *found;
  }

  bool contains(const std::string& name) const { return data_->index.contains(name); }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.data_ == b.data_ || a.data_->elements == b.data_->elements;
  }

 private:
  struct Data {
    std::vector<std::string> elements;
    std::unordered_map<std::string, std::size_t> index;
  };

  static std::shared_ptr<const Data> empty_data() {
    static const auto empty = std::make_shared<const Data>();
    return empty;
  }

  std::shared_ptr<const Data> data_;
};

/// A total function between finite sets, stored by element index.
class FinFunction {
 public:
  FinFunction() = default;

  FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.size() != dom_.size())
      throw domain_error("function is not defined on exactly its domain");
    for (std::size_t v : map_)
      if (v >= cod_.size()) throw domain_error("function value outside its codomain");
  }

  static FinFunction identity(const FinSet& x) {
    std::vector<std::size_t> map(x.size());
    std::iota(map.begin(), map.end(), std::size_t{0});
    return FinFunction(x, x, std::move(map));
  }

  /// Builds a function from element names.
  static FinFunction from_names(const FinSet& dom, const FinSet& cod,
                                const std::vector<std::pair<std::string, std::string>>& assignment) {
    std::vector<std::optional<std::size_t>> partial(dom.size());
    for (const auto& [from, to] : assignment) partial[dom.index_of(from)] = cod.index_of(to);
    std::vector<std::size_t> map;
    map.reserve(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (!partial[i]) throw domain_error("function undefined on '" + dom[i] + "'");
      map.push_back(*partial[i]);
    }
    return FinFunction(dom, cod, std::move(map));
  }

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  std::span<const std::size_t> map() const noexcept { return map_; }
  std::size_t operator()(std::size_t i) const { return map_.at(i); }

  bool is_injective() const {
    std::vector<char> seen(cod_.size(), 0);
    for (std::size_t v : map_) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<char> seen(cod_.size(), 0);
    for (std::size_t v : map_) seen[v] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  friend bool operator==(const FinFunction& a, const FinFunction& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.map_ == b.map_;
  }

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> map_;
};

/// g . f
inline FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.cod() == g.dom())) throw domain_error("compose: codomain/domain mismatch");
  std::vector<std::size_t> map(f.dom().size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = g(f(i));
  return FinFunction(f.dom(), g.cod(), std::move(map));
}

/// A relation between two carriers as an explicit set of index pairs.
/// Pairs are kept sorted and unique; membership is a dense lookup.
class Relation {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  Relation() = default;

  Relation(FinSet left, FinSet right, std::vector<Pair> pairs)
      : left_(std::move(left)), right_(std::move(right)), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    member_.assign(left_.size() * right_.size(), 0);
    for (const auto& [x, y] : pairs_) {
      if (x >= left_.size() || y >= right_.size())
        throw domain_error("relation pair outside its carriers");
      member_[x * right_.size() + y] = 1;
    }
  }

  static Relation empty(const FinSet& x, const FinSet& y) { return Relation(x, y, {}); }

  static Relation full(const FinSet& x, const FinSet& y) {
    std::vector<Pair> pairs;
    pairs.reserve(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) pairs.emplace_back(i, j);
    return Relation(x, y, std::move(pairs));
  }

  static Relation diagonal(const FinSet& x) {
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < x.size(); ++i) pairs.emplace_back(i, i);
    return Relation(x, x, std::move(pairs));
  }

  /// Bit k of `mask` selects the pair (k / |Y|, k % |Y|).
  static Relation from_mask(const FinSet& x, const FinSet& y, std::uint64_t mask) {
    std::vector<Pair> pairs;
    for (std::size_t k = 0; k < x.size() * y.size(); ++k)
      if ((mask >> k) & 1U) pairs.emplace_back(k / y.size(), k % y.size());
    return Relation(x, y, std::move(pairs));
  }

  static Relation from_names(const FinSet& x, const FinSet& y,
                             const std::vector<std::pair<std::string, std::string>>& named) {
    std::vector<Pair> pairs;
    for (const auto& [a, b] : named) pairs.emplace_back(x.index_of(a), y.index_of(b));
    return Relation(x, y, std::move(pairs));
  }

  const FinSet& left() const noexcept { return left_; }
  const FinSet& right() const noexcept { return right_; }
  std::span<const Pair> pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  bool contains(std::size_t x, std::size_t y) const {
    return x < left_.size() && y < right_.size() && member_[x * right_.size() + y] != 0;
  }

  /// Position of (x, y) in pairs(), if present.
  std::optional<std::size_t> position(std::size_t x, std::size_t y) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{x, y});
    if (it == pairs_.end() || *it != Pair{x, y}) return std::nullopt;
    return static_cast<std::size_t>(it - pairs_.begin());
  }

  /// The pair set as a carrier in its own right, elements named "(x,y)".
  FinSet carrier() const {
    std::vector<std::string> names;
    names.reserve(pairs_.size());
    for (const auto& [x, y] : pairs_) names.push_back("(" + left_[x] + "," + right_[y] + ")");
    return FinSet(std::move(names));
  }

  FinFunction left_projection() const { return projection(true); }
  FinFunction right_projection() const { return projection(false); }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.pairs_ == b.pairs_;
  }

 private:
  FinFunction projection(bool left) const {
    std::vector<std::size_t> map;
    map.reserve(pairs_.size());
    for (const auto& [x, y] : pairs_) map.push_back(left ? x : y);
    return FinFunction(carrier(), left ? left_ : right_, std::move(map));
  }

  FinSet left_;
  FinSet right_;
  std::vector<Pair> pairs_;
  std::vector<char> member_;
};

/// X --from--> Z <--to-- Y
class Cospan {
 public:
  Cospan() = default;
  Cospan(FinFunction from, FinFunction to) : from_(std::move(from)), to_(std::move(to)) {
    if (!(from_.cod() == to_.cod())) throw domain_error("cospan legs have different codomains");
  }

  const FinFunction& from() const noexcept { return from_; }
  const FinFunction& to() const noexcept { return to_; }
  const FinSet& apex() const noexcept { return from_.cod(); }

 private:
  FinFunction from_;
  FinFunction to_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline void require_same_carriers(const Relation& r, const Relation& s, const char* op) {
  if (!(r.left() == s.left()) || !(r.right() == s.right()))
    throw domain_error(std::string(op) + ": relations over different carriers");
}

}  // namespace detail

/// The pullback of f: A -> C and g: B -> C, as the relation {(a,b) | f(a) = g(b)}.
inline Relation pullback(const FinFunction& f, const FinFunction& g) {
  if (!(f.cod() == g.cod())) throw domain_error("pullback: codomain mismatch");
  std::vector<std::vector<std::size_t>> fibre(g.cod().size());
  for (std::size_t b = 0; b < g.dom().size(); ++b) fibre[g(b)].push_back(b);
  std::vector<Relation::Pair> pairs;
  for (std::size_t a = 0; a < f.dom().size(); ++a)
    for (std::size_t b : fibre[f(a)]) pairs.emplace_back(a, b);
  return Relation(f.dom(), g.dom(), std::move(pairs));
}

inline Relation pullback(const Cospan& c) { return pullback(c.from(), c.to()); }

inline Relation kernel_pair(const FinFunction& f) { return pullback(f, f); }

/// Quotient of X+Y by the equivalence generated by p(r) ~ q(r). Classes are
/// ordered by their first member in X+Y and named by their sorted members,
/// with X members tagged "l:" and Y members tagged "r:".
inline Cospan pushout(const FinFunction& p, const FinFunction& q) {
  if (!(p.dom() == q.dom())) throw domain_error("pushout: span legs have different domains");
  const std::size_t nx = p.cod().size();
  const std::size_t ny = q.cod().size();
  detail::UnionFind uf(nx + ny);
  for (std::size_t r = 0; r < p.dom().size(); ++r) uf.unite(p(r), nx + q(r));

  std::vector<std::size_t> class_of(nx + ny);
  std::vector<std::vector<std::string>> members;
  std::unordered_map<std::size_t, std::size_t> root_to_class;
  for (std::size_t u = 0; u < nx + ny; ++u) {
    auto [it, inserted] = root_to_class.emplace(uf.find(u), members.size());
    if (inserted) members.emplace_back();
    class_of[u] = it->second;
    members[it->second].push_back(u < nx ? "l:" + p.cod()[u] : "r:" + q.cod()[u - nx]);
  }
  std::vector<std::string> names;
  names.reserve(members.size());
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    std::string name = "{";
    for (std::size_t i = 0; i < m.size(); ++i) name += (i ? "," : "") + m[i];
    names.push_back(name + "}");
  }
  FinSet z(std::move(names));
  std::vector<std::size_t> inl(class_of.begin(), class_of.begin() + static_cast<std::ptrdiff_t>(nx));
  std::vector<std::size_t> inr(class_of.begin() + static_cast<std::ptrdiff_t>(nx), class_of.end());
  return Cospan(FinFunction(p.cod(), z, std::move(inl)), FinFunction(q.cod(), z, std::move(inr)));
}

/// The pushout of a relation's own span X <- R -> Y.
inline Cospan pushout(const Relation& r) { return pushout(r.left_projection(), r.right_projection()); }

struct ImageFactorization {
  FinFunction cover;  // A ->> I, surjective
  FinFunction mono;   // I >-> B, injective
};

/// f = mono . cover with I the attained values of f, in codomain order.
inline ImageFactorization image_factorization(const FinFunction& f) {
  std::vector<char> attained(f.cod().size(), 0);
  for (std::size_t v : f.map()) attained[v] = 1;
  std::vector<std::string> names;
  std::vector<std::size_t> mono_map;
  std::vector<std::size_t> position(f.cod().size(), 0);
  for (std::size_t b = 0; b < f.cod().size(); ++b) {
    if (!attained[b]) continue;
    position[b] = names.size();
    names.push_back(f.cod()[b]);
    mono_map.push_back(b);
  }
  FinSet image(std::move(names));
  std::vector<std::size_t> cover_map;
  cover_map.reserve(f.dom().size());
  for (std::size_t v : f.map()) cover_map.push_back(position[v]);
  return {FinFunction(f.dom(), image, std::move(cover_map)), FinFunction(image, f.cod(), std::move(mono_map))};
}

/// R <= S in the containment order.
inline bool relation_leq(const Relation& r, const Relation& s) {
  detail::require_same_carriers(r, s, "relation_leq");
  return std::all_of(r.pairs().begin(), r.pairs().end(),
                     [&](const Relation::Pair& p) { return s.contains(p.first, p.second); });
}

inline Relation relation_meet(const Relation& r, const Relation& s) {
  detail::require_same_carriers(r, s, "relation_meet");
  std::vector<Relation::Pair> pairs;
  for (const auto& p : r.pairs())
    if (s.contains(p.first, p.second)) pairs.push_back(p);
  return Relation(r.left(), r.right(), std::move(pairs));
}

inline Relation relation_join(const Relation& r, const Relation& s) {
  detail::require_same_carriers(r, s, "relation_join");
  std::vector<Relation::Pair> pairs(r.pairs().begin(), r.pairs().end());
  pairs.insert(pairs.end(), s.pairs().begin(), s.pairs().end());
  return Relation(r.left(), r.right(), std::move(pairs));
}

inline void require_endo(const Relation& r, const char* op) {
  if (!(r.left() == r.right())) throw domain_error(std::string(op) + ": relation is not on a single carrier");
}

inline bool is_equivalence(const Relation& r) {
  require_endo(r, "is_equivalence");
  const std::size_t n = r.left().size();
  for (std::size_t i = 0; i < n; ++i)
    if (!r.contains(i, i)) return false;
  for (const auto& [a, b] : r.pairs()) {
    if (!r.contains(b, a)) return false;
    for (std::size_t c = 0; c < n; ++c)
      if (r.contains(b, c) && !r.contains(a, c)) return false;
  }
  return true;
}

/// Smallest equivalence relation containing R.
inline Relation equivalence_closure(const Relation& r) {
  require_endo(r, "equivalence_closure");
  const std::size_t n = r.left().size();
  detail::UnionFind uf(n);
  for (const auto& [a, b] : r.pairs()) uf.unite(a, b);
  std::vector<Relation::Pair> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (uf.find(a) == uf.find(b)) pairs.emplace_back(a, b);
  return Relation(r.left(), r.right(), std::move(pairs));
}

}  // namespace coalg

#endif
