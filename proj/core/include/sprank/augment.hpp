#pragma once

// Edge-addition planning: minimum additions for a target strong resilience,
// best strong resilience within an edge budget, and the constructive
// k -> k + ell step for graphs that are unions of disjoint left-perfect
// matchings.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sprank/pattern.hpp"

namespace sprank {

/// A maximum-cardinality b-matching of K(n, m) with node budget k* + 1 that
/// reuses as many edges of the host graph as possible.
struct BMatching {
  std::vector<Edge> edges;      ///< sorted
  std::size_t node_budget = 0;  ///< k* + 1
  std::size_t overlap = 0;      ///< |edges ∩ E(host)|
};

struct AugmentationPlan {
  std::vector<Edge> added_edges;  ///< sorted, all from the complement
  std::size_t delta_star = 0;     ///< minimum number of additions for the target
  int achieved_resilience = -1;   ///< strong resilience of result_graph
  BipartiteGraph result_graph{0, 0};
  std::optional<BMatching> b_matching;
  /// Budget mode only: delta*(k) for k = 0, ..., m - 1.
  std::vector<std::size_t> delta_by_k;
};

/// Fair b-matching through a 0/1-cost min-cost max-flow over K(n, m):
/// pattern edges cost 0, complement edges cost 1, every node capacity k* + 1.
/// Throws InvalidK if k_star >= m.
BMatching fair_b_matching(const BipartiteGraph& g, std::size_t k_star);

/// Minimum set of complement edges making g strongly k*-resilient. Returns an
/// empty plan when g already is. Throws InvalidK if k_star >= m.
AugmentationPlan min_edges_for_target(const BipartiteGraph& g, std::size_t k_star);

/// delta*(k): the size of min_edges_for_target(g, k).added_edges.
std::size_t min_edge_count(const BipartiteGraph& g, std::size_t k_star);

/// Largest strong resilience reachable by adding at most p edges (exactly p
/// with `exact_spend`, padding with the lexicographically first complement
/// edges). Resilience -1 with no edges when even delta*(0) exceeds p.
AugmentationPlan best_within_budget(const BipartiteGraph& g, std::size_t p,
                                    bool exact_spend = false);

/// Adds n complement edges to a union of k disjoint left-perfect matchings
/// (k < m) so that it becomes a union of k + 1, using the max-flow on the
/// augmentation network. Returns the new graph and the added edges.
///
/// Throws InvalidK if k >= m and PreconditionFailed if g fails the degree test.
std::pair<BipartiteGraph, std::vector<Edge>> increment_matchings(const BipartiteGraph& g,
                                                                 std::size_t k);

/// Applies increment_matchings ell times. Throws InvalidK unless
/// 1 <= ell <= m - k.
std::pair<BipartiteGraph, std::vector<Edge>> boost_by(const BipartiteGraph& g,
                                                      std::size_t k, std::size_t ell);

/// For a square union of k disjoint perfect matchings, checks that the
/// complement is a union of n - k and returns n - k. Throws
/// PreconditionFailed otherwise.
std::size_t complement_matching_structure(const BipartiteGraph& g);

}  // namespace sprank
