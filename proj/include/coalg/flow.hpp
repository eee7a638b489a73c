#ifndef COALG_FLOW_HPP
#define COALG_FLOW_HPP

// Exact bipartite transportation over rational masses, used to decide whether
// two sub-distributions admit a coupling supported on an allowed set of pairs.

#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "coalg/felem.hpp"

namespace coalg::detail {

class RationalFlow {
 public:
  explicit RationalFlow(std::size_t nodes) : adjacency_(nodes) {}

  /// Adds an edge; an empty capacity means unbounded.
  std::size_t add_edge(std::size_t from, std::size_t to, std::optional<Weight> capacity) {
    edges_.push_back({to, capacity, Weight(0)});
    adjacency_[from].push_back(edges_.size() - 1);
    edges_.push_back({from, Weight(0), Weight(0)});
    adjacency_[to].push_back(edges_.size() - 1);
    return edges_.size() - 2;
  }

  /// Edmonds-Karp; terminates for rational capacities.
  Weight max_flow(std::size_t source, std::size_t sink) {
    Weight total(0);
    while (true) {
      std::vector<std::optional<std::size_t>> via(adjacency_.size());
      std::vector<char> seen(adjacency_.size(), 0);
      std::deque<std::size_t> queue{source};
      seen[source] = 1;
      while (!queue.empty() && !seen[sink]) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : adjacency_[u]) {
          const Edge& edge = edges_[e];
          if (seen[edge.to] || !has_residual(e)) continue;
          seen[edge.to] = 1;
          via[edge.to] = e;
          queue.push_back(edge.to);
        }
      }
      if (!seen[sink]) return total;
      std::optional<Weight> push;
      for (std::size_t v = sink; v != source; v = edges_[*via[v] ^ 1U].to) {
        std::optional<Weight> r = residual(*via[v]);
        if (r && (!push || *r < *push)) push = r;
      }
      // Every source-to-sink path crosses a bounded edge in our networks.
      const Weight amount = push.value_or(Weight(0));
      if (amount == Weight(0)) return total;
      for (std::size_t v = sink; v != source; v = edges_[*via[v] ^ 1U].to) {
        edges_[*via[v]].flow += amount;
        edges_[*via[v] ^ 1U].flow -= amount;
      }
      total += amount;
    }
  }

  Weight flow_on(std::size_t edge) const { return edges_[edge].flow; }

 private:
  struct Edge {
    std::size_t to;
    std::optional<Weight> capacity;
    Weight flow;
  };

  std::optional<Weight> residual(std::size_t e) const {
    if (!edges_[e].capacity) return std::nullopt;
    return *edges_[e].capacity - edges_[e].flow;
  }

  bool has_residual(std::size_t e) const {
    auto r = residual(e);
    return !r || *r > Weight(0);
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

}  // namespace coalg::detail

#endif
