#pragma once

// Sparsity patterns, their bipartite graphs, matchings, and the degree-based
// predicates built on top of them.
//
// Indices are 0-based throughout the library. Text formats, CLI output and
// error messages use 1-based (row, col) / (alpha_i, beta_j) labels.

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sprank {

/// A star coordinate of a pattern, equivalently an edge (alpha_left, beta_right).
struct Edge {
  std::size_t left = 0;
  std::size_t right = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// "(i,j)" with 1-based indices.
std::string to_string(const Edge& e);

using WarningSink = std::function<void(std::string_view)>;

/// A 0/* pattern S(n, m) with m >= n >= 1. Immutable; stars are kept sorted
/// row-major and free of duplicates.
class SparsityPattern {
 public:
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Edge> stars() const noexcept { return stars_; }
  std::size_t star_count() const noexcept { return stars_.size(); }
  bool has_star(std::size_t row, std::size_t col) const;

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

 private:
  friend SparsityPattern pattern_from_stars(std::size_t, std::size_t,
                                            std::span<const Edge>,
                                            const WarningSink&);
  SparsityPattern(std::size_t rows, std::size_t cols, std::vector<Edge> stars)
      : rows_(rows), cols_(cols), stars_(std::move(stars)) {}

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Edge> stars_;
};

/// Validates and canonicalises a star list. Duplicates are collapsed and
/// reported through `warn` when one is given.
///
/// Throws ShapeError when n or m is zero or m < n, OutOfRange for a star
/// outside the grid.
SparsityPattern pattern_from_stars(std::size_t n, std::size_t m,
                                   std::span<const Edge> stars,
                                   const WarningSink& warn = {});

/// Undirected bipartite graph on n_left alpha-nodes and n_right beta-nodes.
/// Edges form a set; the object is immutable after construction.
class BipartiteGraph {
 public:
  /// Duplicate edges are collapsed. Throws OutOfRange for a bad endpoint.
  BipartiteGraph(std::size_t n_left, std::size_t n_right,
                 std::vector<Edge> edges = {});

  static BipartiteGraph complete(std::size_t n_left, std::size_t n_right);

  std::size_t n_left() const noexcept { return n_left_; }
  std::size_t n_right() const noexcept { return n_right_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  bool has_edge(std::size_t left, std::size_t right) const noexcept {
    return left < n_left_ && right < n_right_ &&
           adjacency_[left * n_right_ + right] != 0;
  }
  bool has_edge(const Edge& e) const noexcept { return has_edge(e.left, e.right); }

  /// Neighbours in ascending index order.
  std::span<const std::size_t> left_neighbors(std::size_t left) const {
    return left_adj_.at(left);
  }
  std::span<const std::size_t> right_neighbors(std::size_t right) const {
    return right_adj_.at(right);
  }
  std::size_t left_degree(std::size_t left) const { return left_adj_.at(left).size(); }
  std::size_t right_degree(std::size_t right) const { return right_adj_.at(right).size(); }
  std::size_t min_left_degree() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_left_ == b.n_left_ && a.n_right_ == b.n_right_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_left_;
  std::size_t n_right_;
  std::vector<Edge> edges_;
  std::vector<unsigned char> adjacency_;
  std::vector<std::vector<std::size_t>> left_adj_;
  std::vector<std::vector<std::size_t>> right_adj_;
};

/// A set of edges with pairwise distinct endpoints, recorded together with
/// the left-node count of its host graph.
class Matching {
 public:
  /// Throws PreconditionFailed if two edges share an endpoint.
  Matching(std::vector<Edge> edges, std::size_t host_n_left);

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool is_left_perfect() const noexcept { return edges_.size() == host_n_left_; }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> edges_;
  std::size_t host_n_left_;
};

enum class Side { left, right };

struct NodeRef {
  Side side;
  std::size_t index;
};

BipartiteGraph to_bipartite(const SparsityPattern& p);

/// Inverse of to_bipartite. Throws ShapeError if n_right < n_left or either
/// side is empty.
SparsityPattern from_bipartite(const BipartiteGraph& g);

/// Throws OutOfRange for a bad index.
std::size_t degree(const BipartiteGraph& g, NodeRef node);

/// Degree test for "g is a union of k disjoint left-perfect matchings":
/// every left degree equals k and every right degree is at most k.
/// Throws InvalidK unless 1 <= k <= n_right.
bool is_union_of_k_matchings(const BipartiteGraph& g, std::size_t k);

/// Edges of the complete bipartite graph on the same nodes that are not in g.
BipartiteGraph complement(const BipartiteGraph& g);

/// Throws ShapeError for differing node sets and NotDisjoint (listing the
/// shared edges) when the edge sets overlap.
BipartiteGraph union_disjoint(const BipartiteGraph& a, const BipartiteGraph& b);

BipartiteGraph with_edges_added(const BipartiteGraph& g, std::span<const Edge> extra);
BipartiteGraph with_edges_removed(const BipartiteGraph& g, std::span<const Edge> gone);

enum class PatternOrder {
  strict,          ///< first pattern's stars are a proper subset of the second's
  equal,
  reverse_strict,  ///< second is a proper subset of the first
  incomparable,
};

std::string_view to_string(PatternOrder order);

/// Classifies two same-shape patterns by star-set inclusion. Throws
/// ShapeError on mismatched shapes.
PatternOrder precedes(const SparsityPattern& a, const SparsityPattern& b);

}  // namespace sprank
