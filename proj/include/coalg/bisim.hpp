#ifndef COALG_BISIM_HPP
#define COALG_BISIM_HPP

// The four notions of bisimulation between two coalgebras for the same
// functor, the two refinement operators, their greatest fixpoints, and the
// cross-checking of the implications that relate the notions.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/finset.hpp"
#include "coalg/functor.hpp"

namespace coalg {

/// Two coalgebras (X, h) and (Y, k) for the same functor.
class CoalgebraPair {
 public:
  CoalgebraPair(Coalgebra left, Coalgebra right) : left_(std::move(left)), right_(std::move(right)) {
    if (!(left_.functor() == right_.functor()))
      throw domain_error("coalgebras use different functors: " + left_.functor().text() + " vs " +
                         right_.functor().text());
  }

  const FunctorExpr& functor() const noexcept { return left_.functor(); }
  const Coalgebra& left() const noexcept { return left_; }
  const Coalgebra& right() const noexcept { return right_; }

  Relation full() const { return Relation::full(left_.carrier(), right_.carrier()); }
  Relation empty() const { return Relation::empty(left_.carrier(), right_.carrier()); }

  void require_over(const Relation& r) const {
    if (!(r.left() == left_.carrier()) || !(r.right() == right_.carrier()))
      throw domain_error("relation is not over the carriers of the coalgebra pair");
  }

 private:
  Coalgebra left_;
  Coalgebra right_;
};

namespace detail {

inline FElem push_along(const FunctorExpr& f, const FElem& value, const FinFunction& g) {
  return fmap(f, value, [&g](const FElem& leaf) { return FElem::atom(g(leaf.index())); });
}

}  // namespace detail

/// Pairs whose behaviours are related by the lifting of R.
inline Relation phi_hj(const CoalgebraPair& p, const Relation& r) {
  p.require_over(r);
  std::vector<Relation::Pair> out;
  for (std::size_t x = 0; x < p.left().size(); ++x)
    for (std::size_t y = 0; y < p.right().size(); ++y)
      if (lifting_contains(p.functor(), r, p.left()(x), p.right()(y))) out.emplace_back(x, y);
  return Relation(r.left(), r.right(), std::move(out));
}

/// Same operator, but with the lifting obtained by enumerating F(R).
inline Relation phi_hj_by_enumeration(const CoalgebraPair& p, const Relation& r, const EvalOptions& opts = {}) {
  p.require_over(r);
  const auto lifted = lifted_pairs(p.functor(), r, opts);
  std::vector<Relation::Pair> out;
  for (std::size_t x = 0; x < p.left().size(); ++x)
    for (std::size_t y = 0; y < p.right().size(); ++y)
      if (std::binary_search(lifted.begin(), lifted.end(), std::make_pair(p.left()(x), p.right()(y))))
        out.emplace_back(x, y);
  return Relation(r.left(), r.right(), std::move(out));
}

/// Pairs identified in F(Z) where Z is the pushout of R's span.
inline Relation phi_am(const CoalgebraPair& p, const Relation& r) {
  p.require_over(r);
  const Cospan z = pushout(r);
  std::vector<FElem> left, right;
  for (std::size_t x = 0; x < p.left().size(); ++x) left.push_back(detail::push_along(p.functor(), p.left()(x), z.from()));
  for (std::size_t y = 0; y < p.right().size(); ++y)
    right.push_back(detail::push_along(p.functor(), p.right()(y), z.to()));
  std::vector<Relation::Pair> out;
  for (std::size_t x = 0; x < left.size(); ++x)
    for (std::size_t y = 0; y < right.size(); ++y)
      if (left[x] == right[y]) out.emplace_back(x, y);
  return Relation(r.left(), r.right(), std::move(out));
}

/// A coalgebra structure on R.carrier() making both projections homomorphisms.
struct AmWitness {
  Coalgebra structure;
};

/// Searches each pair independently for a lifting witness; the result is
/// re-checked as a genuine span of homomorphisms before it is returned.
inline std::optional<AmWitness> is_am_bisimulation(const CoalgebraPair& p, const Relation& r) {
  p.require_over(r);
  std::vector<FElem> structure;
  structure.reserve(r.size());
  for (const auto& [x, y] : r.pairs()) {
    auto w = lifting_witness(p.functor(), r, p.left()(x), p.right()(y));
    if (!w) return std::nullopt;
    structure.push_back(std::move(*w));
  }
  Coalgebra on_r(p.functor(), r.carrier(), std::move(structure));
  if (!is_homomorphism(on_r, p.left(), r.left_projection()) || !is_homomorphism(on_r, p.right(), r.right_projection()))
    throw std::logic_error("lifting witness failed the homomorphism check");
  return AmWitness{std::move(on_r)};
}

inline bool is_hj_bisimulation(const CoalgebraPair& p, const Relation& r) { return relation_leq(r, phi_hj(p, r)); }

inline bool is_am_precongruence(const CoalgebraPair& p, const Relation& r) { return relation_leq(r, phi_am(p, r)); }

/// A cospan of homomorphisms (X,h) -> (Z,z) <- (Y,k) whose pullback is R.
struct KernelWitness {
  Cospan cospan;
  Coalgebra apex;
  int phase = 1;
};

/// Kernel-bisimulation search outcome. Absence is only ever reported
/// relative to the bound on the cospan apex.
struct KernelVerdict {
  std::optional<KernelWitness> witness;
  std::size_t bound = 0;

  bool found() const noexcept { return witness.has_value(); }
};

namespace detail {

/// Given a partition of X+Y (block index per element, X first), installs the
/// induced structure on the quotient if every block has a single behaviour.
inline std::optional<KernelWitness> quotient_witness(const CoalgebraPair& p, const std::vector<std::size_t>& block,
                                                     std::size_t blocks, int phase) {
  const std::size_t nx = p.left().size();
  std::vector<std::string> names;
  for (std::size_t b = 0; b < blocks; ++b) names.push_back("z" + std::to_string(b));
  FinSet z(std::move(names));
  FinFunction i(p.left().carrier(), z, std::vector<std::size_t>(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(nx)));
  FinFunction j(p.right().carrier(), z, std::vector<std::size_t>(block.begin() + static_cast<std::ptrdiff_t>(nx), block.end()));
  std::vector<std::optional<FElem>> behaviour(blocks);
  for (std::size_t u = 0; u < block.size(); ++u) {
    FElem image = u < nx ? push_along(p.functor(), p.left()(u), i) : push_along(p.functor(), p.right()(u - nx), j);
    auto& slot = behaviour[block[u]];
    if (!slot) slot = std::move(image);
    else if (!(*slot == image)) return std::nullopt;
  }
  std::vector<FElem> structure;
  for (auto& b : behaviour) {
    if (!b) return std::nullopt;  // every block is inhabited by construction
    structure.push_back(std::move(*b));
  }
  return KernelWitness{Cospan(std::move(i), std::move(j)), Coalgebra(p.functor(), std::move(z), std::move(structure)),
                       phase};
}

}  // namespace detail

/// Phase 1 tries the pushout of R's own span; phase 2 searches coarser
/// jointly-surjective cospans with at most `bound` apex elements.
///
/// Any homomorphic cospan factors through its jointly-surjective image,
/// which is a quotient of X+Y whose classes refine nothing R forbids, so
/// phase 2 ranges over coarsenings of the pushout partition.
inline KernelVerdict is_kernel_bisimulation(const CoalgebraPair& p, const Relation& r,
                                            std::optional<std::size_t> bound = std::nullopt) {
  p.require_over(r);
  const std::size_t nx = p.left().size(), ny = p.right().size();
  KernelVerdict verdict;
  verdict.bound = bound.value_or(nx + ny);

  const Cospan po = pushout(r);
  if (!(pullback(po) == r)) return verdict;  // every admissible quotient contains the pushout's pullback

  std::vector<std::size_t> base(nx + ny);
  for (std::size_t x = 0; x < nx; ++x) base[x] = po.from()(x);
  for (std::size_t y = 0; y < ny; ++y) base[nx + y] = po.to()(y);
  const std::size_t m = po.apex().size();

  if (m <= verdict.bound) {
    if (auto w = detail::quotient_witness(p, base, m, 1)) {
      verdict.witness = std::move(w);
      return verdict;
    }
  }

  // Blocks that may share a class: no cross pair outside R appears.
  std::vector<std::vector<std::size_t>> xs(m), ys(m);
  for (std::size_t x = 0; x < nx; ++x) xs[base[x]].push_back(x);
  for (std::size_t y = 0; y < ny; ++y) ys[base[nx + y]].push_back(y);
  auto compatible = [&](std::size_t a, std::size_t b) {
    for (std::size_t x : xs[a])
      for (std::size_t y : ys[b])
        if (!r.contains(x, y)) return false;
    for (std::size_t x : xs[b])
      for (std::size_t y : ys[a])
        if (!r.contains(x, y)) return false;
    return true;
  };
  std::vector<std::vector<char>> ok(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) ok[a][b] = compatible(a, b) ? 1 : 0;

  std::vector<std::size_t> group(m, 0);
  std::vector<std::vector<std::size_t>> members;
  std::optional<KernelWitness> found;
  auto search = [&](auto&& self, std::size_t next) -> void {
    if (found) return;
    if (next == m) {
      if (members.size() == m) return;  // the finest grouping was phase 1
      std::vector<std::size_t> block(nx + ny);
      for (std::size_t u = 0; u < block.size(); ++u) block[u] = group[base[u]];
      found = detail::quotient_witness(p, block, members.size(), 2);
      return;
    }
    for (std::size_t g = 0; g < members.size(); ++g) {
      bool fits = true;
      for (std::size_t other : members[g]) fits = fits && ok[next][other];
      if (!fits) continue;
      group[next] = g;
      members[g].push_back(next);
      self(self, next + 1);
      members[g].pop_back();
      if (found) return;
    }
    if (members.size() < verdict.bound) {
      group[next] = members.size();
      members.push_back({next});
      self(self, next + 1);
      members.pop_back();
    }
  };
  search(search, 0);
  verdict.witness = std::move(found);
  return verdict;
}

/// Independent check that a kernel witness is what it claims to be.
inline bool verify_kernel_witness(const CoalgebraPair& p, const Relation& r, const KernelWitness& w) {
  return is_homomorphism(p.left(), w.apex, w.cospan.from()) && is_homomorphism(p.right(), w.apex, w.cospan.to()) &&
         pullback(w.cospan) == r;
}

enum class Operator { HJ, AM };

inline const char* operator_name(Operator op) { return op == Operator::HJ ? "hj" : "am"; }

inline Relation apply_operator(const CoalgebraPair& p, Operator op, const Relation& r) {
  return op == Operator::HJ ? phi_hj(p, r) : phi_am(p, r);
}

/// A descending sequence of relations starting from X x Y.
struct Chain {
  std::vector<Relation> steps;
  bool converged = false;
  /// Operator applications until two consecutive entries agreed.
  std::size_t steps_to_converge = 0;

  const Relation& limit() const { return steps.back(); }
};

/// Iterates the operator from the full relation until it stabilises. Both
/// operators are monotone, so on finite carriers this takes at most
/// |X x Y| + 1 applications.
inline Chain greatest_fixpoint(const CoalgebraPair& p, Operator op) {
  Chain chain;
  chain.steps.push_back(p.full());
  const std::size_t limit = p.left().size() * p.right().size() + 1;
  for (std::size_t i = 0; i < limit; ++i) {
    chain.steps.push_back(apply_operator(p, op, chain.steps.back()));
    if (chain.steps.back() == chain.steps[chain.steps.size() - 2]) {
      chain.converged = true;
      chain.steps_to_converge = chain.steps.size() - 1;
      return chain;
    }
  }
  chain.steps_to_converge = chain.steps.size() - 1;
  return chain;
}

/// On-corpus verdicts for the functor properties the implications depend on.
struct FunctorVerdicts {
  bool preserves_relations = false;
  bool preserves_weak_pullbacks = false;
  bool covers_pullbacks = false;
  bool preserves_pullbacks_along_monos = false;
};

struct NotionFlags {
  std::optional<AmWitness> am;
  bool hj = false;
  bool precongruence = false;
  KernelVerdict kernel;

  bool am_bisimulation() const noexcept { return am.has_value(); }
};

struct Violation {
  std::string rule;
  std::string detail;
};

struct Classification {
  NotionFlags flags;
  /// Rules whose hypotheses held and which were therefore checked.
  std::vector<std::string> checked;
  std::vector<Violation> violations;

  bool consistent() const noexcept { return violations.empty(); }
};

/// Runs all four checkers and tests every implication whose hypothesis holds.
inline Classification classify_relation(const CoalgebraPair& p, const Relation& r, const FunctorVerdicts& verdicts,
                                        std::optional<std::size_t> bound = std::nullopt) {
  Classification c;
  c.flags.am = is_am_bisimulation(p, r);
  c.flags.hj = is_hj_bisimulation(p, r);
  c.flags.precongruence = is_am_precongruence(p, r);
  c.flags.kernel = is_kernel_bisimulation(p, r, bound);
  const bool am = c.flags.am_bisimulation(), hj = c.flags.hj, pre = c.flags.precongruence;
  const bool ker = c.flags.kernel.found();

  auto rule = [&](const char* name, bool applies, bool holds, const char* text) {
    if (!applies) return;
    c.checked.emplace_back(name);
    if (!holds) c.violations.push_back({name, text});
  };
  rule("1", true, !am || hj, "AM-bisimulation that is not an HJ-bisimulation");
  rule("2", true, !hj || pre, "HJ-bisimulation that is not an AM-precongruence");
  if (pre) {
    // The pushout of a precongruence carries a coalgebra; its kernel contains R.
    const Cospan po = pushout(r);
    const Relation widened = pullback(po);
    const bool ok = relation_leq(r, widened) && is_am_precongruence(p, widened) &&
                    is_kernel_bisimulation(p, widened).found();
    rule("3", true, ok, "precongruence not contained in a precongruent kernel bisimulation");
  }
  rule("4", ker && verdicts.preserves_weak_pullbacks, am, "kernel bisimulation that is not an AM-bisimulation");
  rule("5", ker && verdicts.covers_pullbacks, hj, "kernel bisimulation that is not an HJ-bisimulation");
  rule("6", ker && verdicts.preserves_pullbacks_along_monos, pre, "kernel bisimulation that is not an AM-precongruence");
  // Every surjection between finite sets splits.
  rule("7i", hj, am, "HJ-bisimulation that is not an AM-bisimulation");
  rule("7ii", hj && verdicts.preserves_relations, am, "HJ-bisimulation that is not an AM-bisimulation");
  return c;
}

/// Result of the equal-legs variant: one homomorphism X -> Z whose kernel is
/// the relation, reported for R itself and for its equivalence closure.
struct EqualLegsVerdict {
  bool raw_is_equivalence = false;
  std::optional<KernelWitness> raw;
  std::optional<KernelWitness> closed;
  Relation closure;
};

/// Behavioural equivalence with a single homomorphism out of (X, h).
inline EqualLegsVerdict behavioural_equivalence_equal_legs(const Coalgebra& c, const Relation& r) {
  require_endo(r, "behavioural_equivalence_equal_legs");
  if (!(r.left() == c.carrier())) throw domain_error("relation is not over the coalgebra's carrier");
  EqualLegsVerdict out;
  out.raw_is_equivalence = is_equivalence(r);
  out.closure = equivalence_closure(r);

  // The kernel of a surjection is its partition; the quotient by the closure
  // is the only candidate up to isomorphism.
  std::vector<std::size_t> block(c.size());
  std::vector<std::size_t> rep;
  for (std::size_t x = 0; x < c.size(); ++x) {
    std::size_t b = rep.size();
    for (std::size_t k = 0; k < rep.size(); ++k)
      if (out.closure.contains(rep[k], x)) b = k;
    if (b == rep.size()) rep.push_back(x);
    block[x] = b;
  }
  std::vector<std::string> names;
  for (std::size_t b = 0; b < rep.size(); ++b) names.push_back("z" + std::to_string(b));
  FinSet z(std::move(names));
  FinFunction q(c.carrier(), z, block);
  std::vector<std::optional<FElem>> behaviour(rep.size());
  bool congruence = true;
  for (std::size_t x = 0; x < c.size() && congruence; ++x) {
    FElem image = detail::push_along(c.functor(), c(x), q);
    auto& slot = behaviour[block[x]];
    if (!slot) slot = std::move(image);
    else congruence = *slot == image;
  }
  if (congruence) {
    std::vector<FElem> structure;
    for (auto& b : behaviour) structure.push_back(std::move(*b));
    KernelWitness w{Cospan(q, q), Coalgebra(c.functor(), z, std::move(structure)), 1};
    out.closed = w;
    if (out.raw_is_equivalence) out.raw = std::move(w);
  }
  return out;
}

}  // namespace coalg

#endif
