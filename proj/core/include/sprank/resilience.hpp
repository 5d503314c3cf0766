#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sprank/pattern.hpp"

namespace sprank {

/// Result of the strong-resilience computation.
struct ResilienceReport {
  std::size_t structural_rank = 0;
  /// ell_star - 1; -1 when the pattern is rank-deficient.
  int strong_resilience = -1;
  /// Largest ell admitting a saturated flow (value n * ell).
  std::size_t ell_star = 0;
  /// ell_star pairwise-disjoint left-perfect matchings. Only their set
  /// properties are contractual; which decomposition comes out is not.
  std::vector<Matching> matchings;
  /// Union of `matchings`.
  BipartiteGraph witness_subgraph{0, 0};
};

/// How strong_resilience searches for ell_star.
enum class EllSearch {
  binary,       ///< bisection over [1, min left degree]
  linear_scan,  ///< decrement from ell = m until a saturated flow appears
};

/// Maximum matching size, read off the ell = 1 max-flow.
std::size_t structural_rank(const BipartiteGraph& g);

/// Exact degree of strong resilience with a witness decomposition.
/// Throws ShapeError if n_right < n_left.
ResilienceReport strong_resilience(const BipartiteGraph& g,
                                   EllSearch search = EllSearch::binary);

/// Splits h into ell disjoint left-perfect matchings. Each round peels off a
/// left-perfect matching that covers every right node of current maximum
/// degree, so the remainder passes the degree test for one matching fewer.
/// Throws NotDecomposable unless h passes the
/// union-of-ell degree test (ell = 0 requires h to be empty).
std::vector<Matching> extract_disjoint_matchings(const BipartiteGraph& h, std::size_t ell);

inline constexpr std::uint64_t kDefaultWeakBudget = 1'000'000;

/// Exact degree of (weak) resilience: the largest k such that removing any k
/// edges still leaves a left-perfect matching, or -1 if there is none to
/// begin with. Tests every removal subset of size 1, 2, ... in turn.
///
/// Throws BudgetExceeded, carrying the certified lower bound, once more than
/// `budget` subsets would be tested.
int weak_resilience(const BipartiteGraph& g, std::uint64_t budget = kDefaultWeakBudget);

}  // namespace sprank
