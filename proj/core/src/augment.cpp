#include "sprank/augment.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

#include "sprank/errors.hpp"
#include "sprank/flow.hpp"
#include "sprank/resilience.hpp"

namespace sprank {

namespace {

void require_wide(const BipartiteGraph& g) {
  if (g.n_left() == 0 || g.n_right() < g.n_left()) {
    throw ShapeError("augmentation needs 1 <= n_left <= n_right");
  }
}

void require_target(const BipartiteGraph& g, std::size_t k_star) {
  if (k_star >= g.n_right()) {
    throw InvalidK("target resilience " + std::to_string(k_star) +
                   " exceeds the maximum " + std::to_string(g.n_right() - 1) +
                   " for m = " + std::to_string(g.n_right()));
  }
}

// A graph without edges counts as the union of zero matchings.
bool is_union_of(const BipartiteGraph& g, std::size_t k) {
  return k == 0 ? g.empty() : is_union_of_k_matchings(g, k);
}

std::vector<Edge> outside(std::span<const Edge> edges, const BipartiteGraph& g) {
  std::vector<Edge> out;
  std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
               [&g](const Edge& e) { return !g.has_edge(e); });
  return out;
}

AugmentationPlan plan_from(const BipartiteGraph& g, std::vector<Edge> added,
                           std::size_t delta, std::optional<BMatching> witness) {
  AugmentationPlan plan;
  plan.added_edges = std::move(added);
  std::sort(plan.added_edges.begin(), plan.added_edges.end());
  plan.delta_star = delta;
  plan.result_graph =
      union_disjoint(g, BipartiteGraph(g.n_left(), g.n_right(), plan.added_edges));
  plan.achieved_resilience = strong_resilience(plan.result_graph).strong_resilience;
  plan.b_matching = std::move(witness);
  return plan;
}

}  // namespace

BMatching fair_b_matching(const BipartiteGraph& g, std::size_t k_star) {
  require_wide(g);
  require_target(g, k_star);
  const flow::BipartiteLayout lay{g.n_left(), g.n_right()};
  const auto budget = static_cast<flow::Capacity>(k_star + 1);
  std::vector<flow::Arc> arcs;
  arcs.reserve(g.n_left() * g.n_right() + g.n_left() + g.n_right());
  for (std::size_t i = 0; i < g.n_left(); ++i) {
    arcs.push_back({lay.source(), lay.alpha(i), budget, 0, {flow::ArcClass::e0, std::nullopt}});
    for (std::size_t j = 0; j < g.n_right(); ++j) {
      const flow::Capacity cost = g.has_edge(i, j) ? 0 : 1;
      arcs.push_back({lay.alpha(i), lay.beta(j), 1, cost, {flow::ArcClass::e1, Edge{i, j}}});
    }
  }
  for (std::size_t j = 0; j < g.n_right(); ++j) {
    arcs.push_back({lay.beta(j), lay.sink(), budget, 0, {flow::ArcClass::e0, std::nullopt}});
  }
  const flow::FlowNetwork net(lay.node_count(), lay.source(), lay.sink(), std::move(arcs),
                              flow::NetworkKind::b_matching, lay);
  const auto f = flow::min_cost_max_flow(net);

  // K(n, m) holds k* + 1 disjoint left-perfect matchings, so the flow value
  // is pinned at (k* + 1) n and minimising cost maximises the overlap with g.
  const auto full = static_cast<flow::Capacity>((k_star + 1) * g.n_left());
  if (f.value != full) throw std::logic_error("b-matching flow below (k*+1)n");

  const auto chosen = flow::induced_subgraph(g, net, f);
  BMatching bm;
  bm.node_budget = k_star + 1;
  bm.edges.assign(chosen.edges().begin(), chosen.edges().end());
  bm.overlap = static_cast<std::size_t>(
      std::count_if(bm.edges.begin(), bm.edges.end(),
                    [&g](const Edge& e) { return g.has_edge(e); }));
  if (static_cast<flow::Capacity>(bm.overlap) + f.cost != full) {
    throw std::logic_error("b-matching cost and overlap disagree");
  }
  return bm;
}

AugmentationPlan min_edges_for_target(const BipartiteGraph& g, std::size_t k_star) {
  require_wide(g);
  require_target(g, k_star);
  const int current = strong_resilience(g).strong_resilience;
  if (current >= static_cast<int>(k_star)) {
    return plan_from(g, {}, 0, std::nullopt);
  }
  BMatching bm = fair_b_matching(g, k_star);
  auto added = outside(bm.edges, g);
  const std::size_t delta = added.size();
  auto plan = plan_from(g, std::move(added), delta, std::move(bm));
  if (plan.achieved_resilience < static_cast<int>(k_star)) {
    throw std::logic_error("fair b-matching augmentation missed its target");
  }
  return plan;
}

std::size_t min_edge_count(const BipartiteGraph& g, std::size_t k_star) {
  require_wide(g);
  require_target(g, k_star);
  if (strong_resilience(g).strong_resilience >= static_cast<int>(k_star)) return 0;
  const BMatching bm = fair_b_matching(g, k_star);
  return bm.edges.size() - bm.overlap;
}

AugmentationPlan best_within_budget(const BipartiteGraph& g, std::size_t p,
                                    bool exact_spend) {
  require_wide(g);
  const int current = strong_resilience(g).strong_resilience;

  // delta*(k) is not known to be monotone in k, so every target is evaluated.
  std::vector<std::size_t> delta(g.n_right(), 0);
  std::vector<std::optional<BMatching>> witness(g.n_right());
  int best = -1;
  for (std::size_t k = 0; k < g.n_right(); ++k) {
    if (static_cast<int>(k) > current) {
      witness[k] = fair_b_matching(g, k);
      delta[k] = witness[k]->edges.size() - witness[k]->overlap;
    }
    if (delta[k] <= p) best = static_cast<int>(k);
  }

  std::vector<Edge> added;
  std::size_t spent = 0;
  std::optional<BMatching> chosen;
  if (best >= 0 && witness[static_cast<std::size_t>(best)]) {
    chosen = witness[static_cast<std::size_t>(best)];
    added = outside(chosen->edges, g);
    spent = added.size();
  }
  if (exact_spend) {
    const auto base = with_edges_added(g, added);
    for (std::size_t i = 0; i < g.n_left() && added.size() < p; ++i) {
      for (std::size_t j = 0; j < g.n_right() && added.size() < p; ++j) {
        if (!base.has_edge(i, j)) added.push_back({i, j});
      }
    }
  }
  auto plan = plan_from(g, std::move(added), spent, std::move(chosen));
  plan.delta_by_k = std::move(delta);
  return plan;
}

std::pair<BipartiteGraph, std::vector<Edge>> increment_matchings(const BipartiteGraph& g,
                                                                 std::size_t k) {
  require_wide(g);
  if (k >= g.n_right()) {
    throw InvalidK("k = " + std::to_string(k) + " must be below m = " +
                   std::to_string(g.n_right()));
  }
  if (!is_union_of(g, k)) {
    throw PreconditionFailed("graph is not a union of " + std::to_string(k) +
                             " disjoint left-perfect matchings");
  }
  const auto net = flow::build_augmentation_network(g, static_cast<flow::Capacity>(k));
  const auto f = flow::max_flow(net);
  if (f.value != static_cast<flow::Capacity>(g.n_left())) {
    throw std::logic_error("augmentation network flow differs from n");
  }
  const auto extra = flow::induced_subgraph(g, net, f);
  std::vector<Edge> added(extra.edges().begin(), extra.edges().end());
  return {union_disjoint(g, extra), std::move(added)};
}

std::pair<BipartiteGraph, std::vector<Edge>> boost_by(const BipartiteGraph& g,
                                                      std::size_t k, std::size_t ell) {
  require_wide(g);
  if (ell < 1 || k > g.n_right() || ell > g.n_right() - k) {
    throw InvalidK("ell = " + std::to_string(ell) + " outside [1, m - k]");
  }
  BipartiteGraph current = g;
  std::vector<Edge> added;
  for (std::size_t step = 0; step < ell; ++step) {
    auto [next, edges] = increment_matchings(current, k + step);
    current = std::move(next);
    added.insert(added.end(), edges.begin(), edges.end());
  }
  std::sort(added.begin(), added.end());
  return {std::move(current), std::move(added)};
}

std::size_t complement_matching_structure(const BipartiteGraph& g) {
  const std::size_t n = g.n_left();
  if (n == 0 || g.n_right() != n) {
    throw PreconditionFailed("complement structure needs a square graph");
  }
  const std::size_t k = g.left_degree(0);
  if (!is_union_of(g, k)) {
    throw PreconditionFailed("graph is not a union of disjoint perfect matchings");
  }
  if (!is_union_of(complement(g), n - k)) {
    throw std::logic_error("complement of a regular square graph is not regular");
  }
  return n - k;
}

}  // namespace sprank
