#pragma once

// Figure graphs and seeded generators shared by the unit and acceptance
// tests. Figure graphs are written with 1-based coordinates, like the
// figures themselves.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "sprank/pattern.hpp"

namespace sprank::fixtures {

inline BipartiteGraph graph1(std::size_t n, std::size_t m,
                             std::initializer_list<std::pair<std::size_t, std::size_t>> cells) {
  std::vector<Edge> edges;
  for (auto [i, j] : cells) edges.push_back({i - 1, j - 1});
  return BipartiteGraph(n, m, std::move(edges));
}

/// G(4,5) drawn as a pattern and as a graph in the first two figures of the
/// resilience example.
inline BipartiteGraph chain4x5() {
  return graph1(4, 5, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 4},
                       {3, 2}, {3, 3}, {3, 4}, {4, 4}, {4, 5}});
}

/// G(4,6) network matrix with a staircase of three stars per row.
inline BipartiteGraph network4x6() {
  return graph1(4, 6, {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {2, 4},
                       {3, 3}, {3, 4}, {3, 5}, {4, 4}, {4, 5}, {4, 6}});
}

/// G(2,3) whose first two columns are full.
inline BipartiteGraph block2x3() { return graph1(2, 3, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}); }

/// The two disjoint left-perfect matchings of the saturated ell = 2 flow on
/// chain4x5(); their union is also the k = 2 example for the augmentation network.
inline std::vector<Edge> lpm_pair_a() { return {{0, 0}, {1, 3}, {2, 1}, {3, 4}}; }
inline std::vector<Edge> lpm_pair_b() { return {{0, 1}, {1, 0}, {2, 2}, {3, 3}}; }

inline BipartiteGraph lpm_pair_union() {
  auto edges = lpm_pair_a();
  auto b = lpm_pair_b();
  edges.insert(edges.end(), b.begin(), b.end());
  return BipartiteGraph(4, 5, std::move(edges));
}

inline BipartiteGraph identity(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, i});
  return BipartiteGraph(n, n, std::move(edges));
}

/// Graph on n x m whose edge set is the bit pattern `mask` (cell i*m + j).
inline BipartiteGraph from_mask(std::size_t n, std::size_t m, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < n * m; ++c) {
    if (mask >> c & 1U) edges.push_back({c / m, c % m});
  }
  return BipartiteGraph(n, m, std::move(edges));
}

/// Calls visit(g) for every graph on n x m (2^(n m) of them).
inline void for_each_graph(std::size_t n, std::size_t m,
                           const std::function<void(const BipartiteGraph&)>& visit) {
  const std::uint64_t total = std::uint64_t{1} << (n * m);
  for (std::uint64_t mask = 0; mask < total; ++mask) visit(from_mask(n, m, mask));
}

inline BipartiteGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                   double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  return BipartiteGraph(n, m, std::move(edges));
}

/// k disjoint left-perfect matchings on n x m (k <= m), returned separately.
/// Rows get distinct random slots in Z_m; matching t sends a row in slot s
/// to column perm[(s + t) mod m].
inline std::vector<std::vector<Edge>> random_lpms(std::mt19937_64& rng, std::size_t n,
                                                  std::size_t m, std::size_t k) {
  std::vector<std::size_t> slot(m), perm(m);
  std::iota(slot.begin(), slot.end(), 0);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(slot.begin(), slot.end(), rng);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<Edge>> out(k);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t i = 0; i < n; ++i) out[t].push_back({i, perm[(slot[i] + t) % m]});
  }
  return out;
}

inline BipartiteGraph random_union_of_lpms(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                           std::size_t k) {
  std::vector<Edge> edges;
  for (auto& lpm : random_lpms(rng, n, m, k)) edges.insert(edges.end(), lpm.begin(), lpm.end());
  return BipartiteGraph(n, m, std::move(edges));
}

/// k disjoint left-perfect matchings drawn one after another, each a random
/// left-perfect matching of K(n, m) minus the edges already drawn (Kuhn's
/// algorithm over shuffled adjacency). Restarts when drawing gets stuck and
/// falls back to random_lpms after 100 attempts.
inline BipartiteGraph random_greedy_union(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                          std::size_t k) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::set<Edge> used;
    bool stuck = false;
    for (std::size_t t = 0; t < k && !stuck; ++t) {
      std::vector<std::vector<std::size_t>> adj(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (!used.count({i, j})) adj[i].push_back(j);
        }
        std::shuffle(adj[i].begin(), adj[i].end(), rng);
      }
      std::vector<long> owner(m, -1);
      std::function<bool(std::size_t, std::vector<char>&)> augment =
          [&](std::size_t i, std::vector<char>& seen) {
            for (std::size_t j : adj[i]) {
              if (seen[j]) continue;
              seen[j] = 1;
              if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
                owner[j] = static_cast<long>(i);
                return true;
              }
            }
            return false;
          };
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i : order) {
        std::vector<char> seen(m, 0);
        if (!augment(i, seen)) {
          stuck = true;
          break;
        }
      }
      for (std::size_t j = 0; j < m && !stuck; ++j) {
        if (owner[j] >= 0) used.insert({static_cast<std::size_t>(owner[j]), j});
      }
    }
    if (!stuck) return BipartiteGraph(n, m, {used.begin(), used.end()});
  }
  return random_union_of_lpms(rng, n, m, k);
}

/// True if the matchings are pairwise edge-disjoint, each left-perfect, and
/// their union is exactly `host`'s edge set.
inline bool partitions(const BipartiteGraph& host, const std::vector<Matching>& matchings) {
  std::set<Edge> seen;
  for (const Matching& mt : matchings) {
    if (!mt.is_left_perfect()) return false;
    std::set<std::size_t> lefts, rights;
    for (const Edge& e : mt.edges()) {
      if (!host.has_edge(e) || !seen.insert(e).second) return false;
      if (!lefts.insert(e.left).second || !rights.insert(e.right).second) return false;
    }
  }
  return seen.size() == host.edge_count();
}

}  // namespace sprank::fixtures
