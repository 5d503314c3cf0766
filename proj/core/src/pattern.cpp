#include "sprank/pattern.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "sprank/errors.hpp"

namespace sprank {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.left + 1) + "," + std::to_string(e.right + 1) + ")";
}

bool SparsityPattern::has_star(std::size_t row, std::size_t col) const {
  return std::binary_search(stars_.begin(), stars_.end(), Edge{row, col});
}

SparsityPattern pattern_from_stars(std::size_t n, std::size_t m,
                                   std::span<const Edge> stars,
                                   const WarningSink& warn) {
  if (n == 0 || m == 0) {
    throw ShapeError("pattern dimensions must be positive, got " +
                     std::to_string(n) + "x" + std::to_string(m));
  }
  if (m < n) {
    throw ShapeError("pattern has more rows than columns (" + std::to_string(n) +
                     "x" + std::to_string(m) +
                     "); transpose it so that columns >= rows");
  }
  std::vector<Edge> sorted(stars.begin(), stars.end());
  for (const Edge& e : sorted) {
    if (e.left >= n || e.right >= m) {
      throw OutOfRange("star " + to_string(e) + " lies outside the " +
                       std::to_string(n) + "x" + std::to_string(m) + " grid");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::unique(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    if (warn) {
      warn("collapsed " + std::to_string(std::distance(dup, sorted.end())) +
           " duplicate star coordinate(s)");
    }
    sorted.erase(dup, sorted.end());
  }
  return SparsityPattern(n, m, std::move(sorted));
}

BipartiteGraph::BipartiteGraph(std::size_t n_left, std::size_t n_right,
                               std::vector<Edge> edges)
    : n_left_(n_left),
      n_right_(n_right),
      edges_(std::move(edges)),
      adjacency_(n_left * n_right, 0),
      left_adj_(n_left),
      right_adj_(n_right) {
  for (const Edge& e : edges_) {
    if (e.left >= n_left_ || e.right >= n_right_) {
      throw OutOfRange("edge " + to_string(e) + " outside G(" +
                       std::to_string(n_left_) + "," + std::to_string(n_right_) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  // Sorted edge order yields ascending neighbour lists on both sides.
  for (const Edge& e : edges_) {
    adjacency_[e.left * n_right_ + e.right] = 1;
    left_adj_[e.left].push_back(e.right);
    right_adj_[e.right].push_back(e.left);
  }
}

BipartiteGraph BipartiteGraph::complete(std::size_t n_left, std::size_t n_right) {
  std::vector<Edge> all;
  all.reserve(n_left * n_right);
  for (std::size_t i = 0; i < n_left; ++i) {
    for (std::size_t j = 0; j < n_right; ++j) all.push_back({i, j});
  }
  return BipartiteGraph(n_left, n_right, std::move(all));
}

std::size_t BipartiteGraph::min_left_degree() const {
  std::size_t best = n_left_ == 0 ? 0 : left_adj_.front().size();
  for (const auto& adj : left_adj_) best = std::min(best, adj.size());
  return best;
}

Matching::Matching(std::vector<Edge> edges, std::size_t host_n_left)
    : edges_(std::move(edges)), host_n_left_(host_n_left) {
  std::sort(edges_.begin(), edges_.end());
  std::vector<std::size_t> lefts, rights;
  for (const Edge& e : edges_) {
    lefts.push_back(e.left);
    rights.push_back(e.right);
  }
  std::sort(lefts.begin(), lefts.end());
  std::sort(rights.begin(), rights.end());
  if (std::adjacent_find(lefts.begin(), lefts.end()) != lefts.end() ||
      std::adjacent_find(rights.begin(), rights.end()) != rights.end()) {
    throw PreconditionFailed("matching edges must have pairwise distinct endpoints");
  }
}

BipartiteGraph to_bipartite(const SparsityPattern& p) {
  const auto stars = p.stars();
  return BipartiteGraph(p.rows(), p.cols(), {stars.begin(), stars.end()});
}

SparsityPattern from_bipartite(const BipartiteGraph& g) {
  if (g.n_right() < g.n_left()) {
    throw ShapeError("graph has fewer right nodes than left nodes");
  }
  return pattern_from_stars(g.n_left(), g.n_right(), g.edges());
}

std::size_t degree(const BipartiteGraph& g, NodeRef node) {
  const bool left = node.side == Side::left;
  const std::size_t bound = left ? g.n_left() : g.n_right();
  if (node.index >= bound) {
    throw OutOfRange(std::string(left ? "alpha_" : "beta_") +
                     std::to_string(node.index + 1) + " does not exist");
  }
  return left ? g.left_degree(node.index) : g.right_degree(node.index);
}

bool is_union_of_k_matchings(const BipartiteGraph& g, std::size_t k) {
  if (k < 1 || k > g.n_right()) {
    throw InvalidK("k = " + std::to_string(k) + " outside [1, " +
                   std::to_string(g.n_right()) + "]");
  }
  for (std::size_t i = 0; i < g.n_left(); ++i) {
    if (g.left_degree(i) != k) return false;
  }
  for (std::size_t j = 0; j < g.n_right(); ++j) {
    if (g.right_degree(j) > k) return false;
  }
  return true;
}

BipartiteGraph complement(const BipartiteGraph& g) {
  std::vector<Edge> rest;
  rest.reserve(g.n_left() * g.n_right() - g.edge_count());
  for (std::size_t i = 0; i < g.n_left(); ++i) {
    for (std::size_t j = 0; j < g.n_right(); ++j) {
      if (!g.has_edge(i, j)) rest.push_back({i, j});
    }
  }
  return BipartiteGraph(g.n_left(), g.n_right(), std::move(rest));
}

BipartiteGraph union_disjoint(const BipartiteGraph& a, const BipartiteGraph& b) {
  if (a.n_left() != b.n_left() || a.n_right() != b.n_right()) {
    throw ShapeError("union of graphs on different node sets");
  }
  std::vector<Edge> shared;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(),
                        b.edges().end(), std::back_inserter(shared));
  if (!shared.empty()) {
    std::string list;
    for (const Edge& e : shared) list += (list.empty() ? "" : " ") + to_string(e);
    throw NotDisjoint("edge sets overlap on " + list);
  }
  std::vector<Edge> all(a.edges().begin(), a.edges().end());
  all.insert(all.end(), b.edges().begin(), b.edges().end());
  return BipartiteGraph(a.n_left(), a.n_right(), std::move(all));
}

BipartiteGraph with_edges_added(const BipartiteGraph& g, std::span<const Edge> extra) {
  std::vector<Edge> all(g.edges().begin(), g.edges().end());
  all.insert(all.end(), extra.begin(), extra.end());
  return BipartiteGraph(g.n_left(), g.n_right(), std::move(all));
}

BipartiteGraph with_edges_removed(const BipartiteGraph& g, std::span<const Edge> gone) {
  std::vector<Edge> drop(gone.begin(), gone.end());
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> kept;
  std::set_difference(g.edges().begin(), g.edges().end(), drop.begin(), drop.end(),
                      std::back_inserter(kept));
  return BipartiteGraph(g.n_left(), g.n_right(), std::move(kept));
}

std::string_view to_string(PatternOrder order) {
  switch (order) {
    case PatternOrder::strict: return "strict";
    case PatternOrder::equal: return "equal";
    case PatternOrder::reverse_strict: return "reverse-strict";
    case PatternOrder::incomparable: return "incomparable";
  }
  return "incomparable";
}

PatternOrder precedes(const SparsityPattern& a, const SparsityPattern& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("cannot order patterns of different shapes");
  }
  const auto sa = a.stars();
  const auto sb = b.stars();
  const bool a_in_b = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
  const bool b_in_a = std::includes(sa.begin(), sa.end(), sb.begin(), sb.end());
  if (a_in_b && b_in_a) return PatternOrder::equal;
  if (a_in_b) return PatternOrder::strict;
  if (b_in_a) return PatternOrder::reverse_strict;
  return PatternOrder::incomparable;
}

}  // namespace sprank
