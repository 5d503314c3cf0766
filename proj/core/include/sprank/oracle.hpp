#pragma once

// Brute-force ground truth for structural rank, weak and strong resilience,
// and minimum augmentation, computed straight from the definitions. Nothing
// here touches the flow engine; it exists to cross-check it.
//
// Every search is bounded by an OracleBudget. Work is counted in units
// (subsets tested, matchings enumerated, graphs examined) so exhaustion is
// deterministic; the time limit is advisory and only checked between units.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "sprank/pattern.hpp"

namespace sprank::oracle {

struct OracleBudget {
  std::uint64_t max_subsets = 2'000'000;
  std::uint64_t max_matchings = 200'000;
  std::chrono::milliseconds time_limit{60'000};
};

/// Reads SPRANK_ORACLE_BUDGET (a positive integer) as max_subsets on top of
/// the defaults. Malformed values are ignored.
OracleBudget budget_from_environment();

/// Maximum matching size by exhaustive backtracking, cross-checked against the
/// numeric rank of three random realisations of the pattern (values drawn
/// from [1, 2], fixed seed). Throws std::logic_error on disagreement.
std::size_t brute_rank(const BipartiteGraph& g, const OracleBudget& budget = {});

/// Rank of an n x m matrix (row-major) by Gaussian elimination with partial
/// pivoting; entries below `tolerance` in magnitude count as zero.
std::size_t numeric_rank(std::vector<double> matrix, std::size_t rows, std::size_t cols,
                         double tolerance = 1e-9);

/// Largest k such that every k-edge removal leaves a left-perfect matching.
int brute_weak_resilience(const BipartiteGraph& g, const OracleBudget& budget = {});

/// Size of the largest family of pairwise edge-disjoint left-perfect
/// matchings, minus one.
int brute_strong_resilience(const BipartiteGraph& g, const OracleBudget& budget = {});

/// Smallest d such that adding some d complement edges makes the graph
/// strongly k*-resilient, found by trying d = 0, 1, 2, ... in turn.
std::size_t brute_min_augmentation(const BipartiteGraph& g, std::size_t k_star,
                                   const OracleBudget& budget = {});

/// First graph G(n, m), in (edge count, bit pattern) order, whose weak
/// resilience exceeds its strong resilience. Exhaustive for n * m <= 20.
std::optional<BipartiteGraph> find_weak_gt_strong_witness(std::size_t n, std::size_t m,
                                                          const OracleBudget& budget = {});

}  // namespace sprank::oracle
