#ifndef COALG_LTS_HPP
#define COALG_LTS_HPP

// Direct algorithms for labelled transition systems, i.e. coalgebras of
// Lts(L) = Pf(Times(Const(L), Id)).

#include <algorithm>
#include <utility>
#include <vector>

#include "coalg/bisim.hpp"
#include "coalg/errors.hpp"

namespace coalg {

/// One transition (label index, target state).
using Step = std::pair<std::size_t, std::size_t>;

inline void require_lts(const FunctorExpr& f, const char* op) {
  if (!f.is_lts()) throw domain_error(std::string(op) + " requires an Lts functor, got " + f.text());
}

/// The transitions of a state, sorted by (label, target).
inline std::vector<Step> transitions(const Coalgebra& c, std::size_t state) {
  std::vector<Step> out;
  for (const FElem& t : c(state).items()) out.emplace_back(t.items()[0].index(), t.items()[1].index());
  return out;
}

/// Milner's conditions: every move of x is matched by y into R, and conversely.
inline Relation lts_phi_direct(const CoalgebraPair& p, const Relation& r) {
  require_lts(p.functor(), "lts_phi_direct");
  p.require_over(r);
  std::vector<std::vector<Step>> hx, ky;
  for (std::size_t x = 0; x < p.left().size(); ++x) hx.push_back(transitions(p.left(), x));
  for (std::size_t y = 0; y < p.right().size(); ++y) ky.push_back(transitions(p.right(), y));
  std::vector<Relation::Pair> out;
  for (std::size_t x = 0; x < hx.size(); ++x)
    for (std::size_t y = 0; y < ky.size(); ++y) {
      auto forth = std::all_of(hx[x].begin(), hx[x].end(), [&](const Step& s) {
        return std::any_of(ky[y].begin(), ky[y].end(),
                           [&](const Step& t) { return s.first == t.first && r.contains(s.second, t.second); });
      });
      auto back = std::all_of(ky[y].begin(), ky[y].end(), [&](const Step& t) {
        return std::any_of(hx[x].begin(), hx[x].end(),
                           [&](const Step& s) { return s.first == t.first && r.contains(s.second, t.second); });
      });
      if (forth && back) out.emplace_back(x, y);
    }
  return Relation(r.left(), r.right(), std::move(out));
}

/// Coarsest stable partition of a state space, as a block index per state.
struct Partition {
  std::vector<std::size_t> block_of;
  std::size_t blocks = 0;
};

/// Kanellakis-Smolka splitting on one transition graph. States are
/// 0..n-1 and `moves[s]` lists (label, target).
inline Partition coarsest_partition(const std::vector<std::vector<Step>>& moves, std::size_t labels) {
  const std::size_t n = moves.size();
  Partition part{std::vector<std::size_t>(n, 0), n ? 1U : 0U};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t splitter = 0; splitter < part.blocks && !changed; ++splitter)
      for (std::size_t a = 0; a < labels && !changed; ++a) {
        std::vector<char> hits(n, 0);
        for (std::size_t s = 0; s < n; ++s)
          for (const auto& [l, t] : moves[s])
            if (l == a && part.block_of[t] == splitter) hits[s] = 1;
        // Split every block that is cut by the a-predecessors of the splitter.
        const std::size_t before = part.blocks;
        constexpr std::size_t kKeep = static_cast<std::size_t>(-1);
        std::vector<std::size_t> fresh(before, kKeep);
        std::vector<char> has_in(before, 0), has_out(before, 0);
        for (std::size_t s = 0; s < n; ++s) (hits[s] ? has_in : has_out)[part.block_of[s]] = 1;
        for (std::size_t b = 0; b < before; ++b)
          if (has_in[b] && has_out[b]) fresh[b] = part.blocks++;
        for (std::size_t s = 0; s < n; ++s)
          if (fresh[part.block_of[s]] != kKeep && !hits[s]) part.block_of[s] = fresh[part.block_of[s]];
        changed = part.blocks != before;
      }
  }
  // Renumber blocks by first occurrence for reproducible output.
  std::vector<std::size_t> rename(part.blocks, part.blocks);
  std::size_t next = 0;
  for (auto& b : part.block_of) {
    if (rename[b] == part.blocks) rename[b] = next++;
    b = rename[b];
  }
  part.blocks = next;
  return part;
}

/// Partition refinement on X + Y, restricted to X x Y.
inline Relation partition_refinement_lts(const CoalgebraPair& p) {
  require_lts(p.functor(), "partition_refinement_lts");
  const std::size_t nx = p.left().size(), ny = p.right().size();
  std::vector<std::vector<Step>> moves;
  for (std::size_t x = 0; x < nx; ++x) moves.push_back(transitions(p.left(), x));
  for (std::size_t y = 0; y < ny; ++y) {
    auto m = transitions(p.right(), y);
    for (auto& s : m) s.second += nx;
    moves.push_back(std::move(m));
  }
  const Partition part = coarsest_partition(moves, p.functor().constants().size());
  std::vector<Relation::Pair> out;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      if (part.block_of[x] == part.block_of[nx + y]) out.emplace_back(x, y);
  return Relation(p.left().carrier(), p.right().carrier(), std::move(out));
}

/// The bisimulation quotient of a single LTS.
inline Partition minimize_lts(const Coalgebra& c) {
  require_lts(c.functor(), "minimize_lts");
  std::vector<std::vector<Step>> moves;
  for (std::size_t x = 0; x < c.size(); ++x) moves.push_back(transitions(c, x));
  return coarsest_partition(moves, c.functor().constants().size());
}

}  // namespace coalg

#endif
