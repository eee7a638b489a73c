#ifndef COALG_FELEM_HPP
#define COALG_FELEM_HPP

// Functor expressions and the values inhabiting them.

#include <boost/rational.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/finset.hpp"

namespace coalg {

using Weight = boost::rational<std::int64_t>;

/// A value of B(X), shaped like the functor expression it inhabits.
///
/// Atoms are carrier elements (by index), Const values index the constant set
/// of the enclosing Constant node. Products, powers and triples are tuples.
/// Sets keep their items sorted and unique; distributions keep items sorted
/// and unique with strictly positive weights in `weights`.
class FElem {
 public:
  enum class Kind : std::uint8_t { Atom, Const, Tuple, Inl, Inr, Set, Dist };

  FElem() = default;

  static FElem atom(std::size_t index) { return FElem(Kind::Atom, index); }
  static FElem constant(std::size_t index) { return FElem(Kind::Const, index); }

  static FElem tuple(std::vector<FElem> items) {
    FElem e(Kind::Tuple, 0);
    e.items_ = std::move(items);
    return e;
  }

  static FElem inl(FElem inner) { return injection(Kind::Inl, std::move(inner)); }
  static FElem inr(FElem inner) { return injection(Kind::Inr, std::move(inner)); }

  static FElem set(std::vector<FElem> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    FElem e(Kind::Set, 0);
    e.items_ = std::move(items);
    return e;
  }

  /// Merges equal items by summing weights and drops zero weights.
  static FElem dist(std::vector<std::pair<FElem, Weight>> mass) {
    std::sort(mass.begin(), mass.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    FElem e(Kind::Dist, 0);
    for (auto& [item, w] : mass) {
      if (!e.items_.empty() && e.items_.back() == item) {
        e.weights_.back() += w;
      } else {
        e.items_.push_back(std::move(item));
        e.weights_.push_back(w);
      }
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < e.items_.size(); ++i) {
      if (e.weights_[i] == Weight(0)) continue;
      if (out != i) {
        e.items_[out] = std::move(e.items_[i]);
        e.weights_[out] = e.weights_[i];
      }
      ++out;
    }
    e.items_.resize(out);
    e.weights_.resize(out);
    return e;
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t index() const noexcept { return index_; }
  const std::vector<FElem>& items() const noexcept { return items_; }
  const std::vector<Weight>& weights() const noexcept { return weights_; }
  const FElem& inner() const { return items_.at(0); }

  Weight total_mass() const {
    Weight sum(0);
    for (const auto& w : weights_) sum += w;
    return sum;
  }

  friend std::strong_ordering operator<=>(const FElem& a, const FElem& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    const std::size_t n = std::min(a.items_.size(), b.items_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.items_[i] <=> b.items_[i]; c != 0) return c;
      if (a.kind_ == Kind::Dist) {
        if (a.weights_[i] < b.weights_[i]) return std::strong_ordering::less;
        if (b.weights_[i] < a.weights_[i]) return std::strong_ordering::greater;
      }
    }
    return a.items_.size() <=> b.items_.size();
  }

  friend bool operator==(const FElem& a, const FElem& b) {
    return a.kind_ == b.kind_ && a.index_ == b.index_ && a.items_ == b.items_ && a.weights_ == b.weights_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL ^ (index_ + 0x632be59bd9b4e019ULL);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& item : items_) mix(item.hash());
    for (const auto& w : weights_) {
      mix(std::hash<std::int64_t>{}(w.numerator()));
      mix(std::hash<std::int64_t>{}(w.denominator()));
    }
    return h;
  }

 private:
  FElem(Kind kind, std::size_t index) : kind_(kind), index_(index) {}

  static FElem injection(Kind kind, FElem inner) {
    FElem e(kind, 0);
    e.items_.push_back(std::move(inner));
    return e;
  }

  Kind kind_ = Kind::Atom;
  std::size_t index_ = 0;
  std::vector<FElem> items_;
  std::vector<Weight> weights_;
};

struct FElemHash {
  std::size_t operator()(const FElem& e) const noexcept { return e.hash(); }
};

/// A combinator tree denoting an endofunctor on finite sets. Immutable and
/// cheap to copy.
class FunctorExpr {
 public:
  enum class Kind : std::uint8_t {
    Identity,
    Constant,
    Product,
    Coproduct,
    Power,
    Compose,
    FinPowerset,
    LabelledTransitions,
    SubDistribution,
    AtMostTwoOfThree,
  };

  FunctorExpr() : FunctorExpr(identity()) {}

  static FunctorExpr identity() { return make(Kind::Identity); }
  static FunctorExpr at_most_two_of_three() { return make(Kind::AtMostTwoOfThree); }

  static FunctorExpr constant(FinSet values) {
    auto n = node(Kind::Constant);
    n->constants = std::move(values);
    return finish(std::move(n));
  }

  static FunctorExpr product(FunctorExpr f, FunctorExpr g) { return binary(Kind::Product, std::move(f), std::move(g)); }
  static FunctorExpr coproduct(FunctorExpr f, FunctorExpr g) { return binary(Kind::Coproduct, std::move(f), std::move(g)); }
  /// compose(F, G) is X |-> F(G(X)).
  static FunctorExpr compose(FunctorExpr f, FunctorExpr g) { return binary(Kind::Compose, std::move(f), std::move(g)); }
  static FunctorExpr powerset(FunctorExpr f) { return unary(Kind::FinPowerset, std::move(f)); }
  static FunctorExpr sub_distribution(FunctorExpr f) { return unary(Kind::SubDistribution, std::move(f)); }

  static FunctorExpr power(FunctorExpr f, std::size_t exponent) {
    auto n = node(Kind::Power);
    n->children.push_back(std::move(f));
    n->exponent = exponent;
    return finish(std::move(n));
  }

  /// Pf(L x -), kept as its own node so fast paths can recognise it.
  static FunctorExpr labelled_transitions(FinSet labels) {
    auto n = node(Kind::LabelledTransitions);
    n->constants = labels;
    n->children.push_back(powerset(product(constant(std::move(labels)), identity())));
    return finish(std::move(n));
  }

  Kind kind() const noexcept { return node_->kind; }
  const FinSet& constants() const noexcept { return node_->constants; }
  const FunctorExpr& first() const { return node_->children.at(0); }
  const FunctorExpr& second() const { return node_->children.at(1); }
  std::size_t exponent() const noexcept { return node_->exponent; }

  /// The expansion of sugar nodes; every other node is returned as is.
  const FunctorExpr& unfolded() const { return kind() == Kind::LabelledTransitions ? first() : *this; }

  bool is_lts() const noexcept { return kind() == Kind::LabelledTransitions; }

  /// Canonical prefix form, e.g. `Pf(Times(Const(a,b),Id))`.
  const std::string& text() const noexcept { return node_->text; }

  friend bool operator==(const FunctorExpr& a, const FunctorExpr& b) {
    return a.node_ == b.node_ || a.node_->text == b.node_->text;
  }

 private:
  struct Node {
    Kind kind = Kind::Identity;
    FinSet constants;
    std::vector<FunctorExpr> children;
    std::size_t exponent = 0;
    std::string text;
  };

  explicit FunctorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> node(Kind kind) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    return n;
  }

  static FunctorExpr make(Kind kind) { return finish(node(kind)); }

  static FunctorExpr unary(Kind kind, FunctorExpr f) {
    auto n = node(kind);
    n->children.push_back(std::move(f));
    return finish(std::move(n));
  }

  static FunctorExpr binary(Kind kind, FunctorExpr f, FunctorExpr g) {
    auto n = node(kind);
    n->children.push_back(std::move(f));
    n->children.push_back(std::move(g));
    return finish(std::move(n));
  }

  static std::string name_list(const FinSet& s);

  static FunctorExpr finish(std::shared_ptr<Node> n) {
    switch (n->kind) {
      case Kind::Identity: n->text = "Id"; break;
      case Kind::AtMostTwoOfThree: n->text = "P32"; break;
      case Kind::Constant: n->text = "Const(" + name_list(n->constants) + ")"; break;
      case Kind::LabelledTransitions: n->text = "Lts(" + name_list(n->constants) + ")"; break;
      case Kind::Product: n->text = "Times(" + n->children[0].text() + "," + n->children[1].text() + ")"; break;
      case Kind::Coproduct: n->text = "Plus(" + n->children[0].text() + "," + n->children[1].text() + ")"; break;
      case Kind::Compose: n->text = "Comp(" + n->children[0].text() + "," + n->children[1].text() + ")"; break;
      case Kind::Power: n->text = "Pow(" + n->children[0].text() + "," + std::to_string(n->exponent) + ")"; break;
      case Kind::FinPowerset: n->text = "Pf(" + n->children[0].text() + ")"; break;
      case Kind::SubDistribution: n->text = "D(" + n->children[0].text() + ")"; break;
    }
    return FunctorExpr(std::shared_ptr<const Node>(std::move(n)));
  }

  std::shared_ptr<const Node> node_;
};

/// Names that need no quoting in the textual forms.
inline bool is_plain_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' || c == '-' ||
                    c == '#' || c == '@' || c == '$';
    if (!ok) return false;
  }
  return true;
}

inline std::string quote_name(const std::string& name) {
  if (is_plain_name(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string FunctorExpr::name_list(const FinSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + quote_name(s[i]);
  return out;
}

inline std::string weight_text(const Weight& w) {
  if (w.denominator() == 1) return std::to_string(w.numerator());
  return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

/// Prints `value` as an element of F applied to a carrier whose leaves are
/// rendered by `leaf`.
inline void print_felem(std::string& out, const FunctorExpr& f, const FElem& value,
                        const std::function<void(std::string&, const FElem&)>& leaf) {
  using K = FunctorExpr::Kind;
  const FunctorExpr& g = f.unfolded();
  switch (g.kind()) {
    case K::Identity:
      leaf(out, value);
      return;
    case K::Constant:
      out += value.kind() == FElem::Kind::Const && value.index() < g.constants().size()
                 ? quote_name(g.constants()[value.index()])
                 : "?";
      return;
    case K::Product:
    case K::Power:
    case K::AtMostTwoOfThree: {
      out += '(';
      for (std::size_t i = 0; i < value.items().size(); ++i) {
        if (i) out += ',';
        const FunctorExpr& part = g.kind() == K::Product ? (i == 0 ? g.first() : g.second())
                                  : g.kind() == K::Power ? g.first()
                                                         : FunctorExpr::identity();
        if (g.kind() == K::AtMostTwoOfThree) leaf(out, value.items()[i]);
        else print_felem(out, part, value.items()[i], leaf);
      }
      out += ')';
      return;
    }
    case K::Coproduct:
      out += value.kind() == FElem::Kind::Inl ? "inl(" : "inr(";
      print_felem(out, value.kind() == FElem::Kind::Inl ? g.first() : g.second(), value.inner(), leaf);
      out += ')';
      return;
    case K::Compose:
      print_felem(out, g.first(), value, [&](std::string& o, const FElem& inner) { print_felem(o, g.second(), inner, leaf); });
      return;
    case K::FinPowerset:
    case K::SubDistribution:
      out += '{';
      for (std::size_t i = 0; i < value.items().size(); ++i) {
        if (i) out += ',';
        print_felem(out, g.first(), value.items()[i], leaf);
        if (value.kind() == FElem::Kind::Dist) out += ":" + weight_text(value.weights()[i]);
      }
      out += '}';
      return;
    case K::LabelledTransitions:
      break;
  }
}

/// Canonical text of an element of F(X) with atoms named by `carrier`.
inline std::string felem_text(const FunctorExpr& f, const FElem& value, const FinSet& carrier) {
  std::string out;
  print_felem(out, f, value, [&](std::string& o, const FElem& leaf) {
    o += leaf.kind() == FElem::Kind::Atom && leaf.index() < carrier.size() ? quote_name(carrier[leaf.index()]) : "?";
  });
  return out;
}

}  // namespace coalg

template <>
struct std::hash<coalg::FElem> {
  std::size_t operator()(const coalg::FElem& e) const noexcept { return e.hash(); }
};

#endif
