#include "sprank/resilience.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "sprank/errors.hpp"
#include "sprank/flow.hpp"

namespace sprank {

namespace {

struct Saturated {
  flow::FlowNetwork net;
  flow::Flow f;
};

std::optional<Saturated> saturated_flow(const BipartiteGraph& g, std::size_t ell) {
  auto net = flow::build_resilience_network(g, static_cast<flow::Capacity>(ell));
  auto f = flow::max_flow(net);
  if (f.value != static_cast<flow::Capacity>(g.n_left() * ell)) return std::nullopt;
  return Saturated{std::move(net), std::move(f)};
}

// One left-perfect matching of h that also covers every right node of
// degree `r`. Right arcs into the sink cost 0 for those nodes and 1 for the
// rest, so a min-cost max-flow picks such a matching whenever one exists
// (always, when h passes the union-of-r degree test).
std::vector<Edge> peel_matching(const BipartiteGraph& h, std::size_t r) {
  const flow::BipartiteLayout lay{h.n_left(), h.n_right()};
  std::vector<flow::Arc> arcs;
  for (std::size_t i = 0; i < h.n_left(); ++i) {
    arcs.push_back({lay.source(), lay.alpha(i), 1, 0, {flow::ArcClass::e0, std::nullopt}});
  }
  for (const Edge& e : h.edges()) {
    arcs.push_back({lay.alpha(e.left), lay.beta(e.right), 1, 0, {flow::ArcClass::e1, e}});
  }
  for (std::size_t j = 0; j < h.n_right(); ++j) {
    const flow::Capacity cost = h.right_degree(j) == r ? 0 : 1;
    arcs.push_back({lay.beta(j), lay.sink(), 1, cost, {flow::ArcClass::e0, std::nullopt}});
  }
  const flow::FlowNetwork net(lay.node_count(), lay.source(), lay.sink(), std::move(arcs),
                              flow::NetworkKind::resilience, lay);
  const auto f = flow::min_cost_max_flow(net);
  if (f.value != static_cast<flow::Capacity>(h.n_left())) {
    throw std::logic_error("degree-regular graph without a left-perfect matching");
  }
  const auto picked = flow::induced_subgraph(h, net, f);
  return {picked.edges().begin(), picked.edges().end()};
}

// Augmenting-path matcher over a fixed edge list with removable edges.
class LpmProbe {
 public:
  explicit LpmProbe(const BipartiteGraph& g)
      : n_left_(g.n_left()), n_right_(g.n_right()), adj_(g.n_left()) {
    const auto edges = g.edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
      adj_[edges[id].left].push_back({edges[id].right, id});
    }
  }

  bool has_left_perfect(const std::vector<unsigned char>& removed) {
    match_right_.assign(n_right_, kNone);
    for (std::size_t i = 0; i < n_left_; ++i) {
      visited_.assign(n_right_, 0);
      if (!augment(i, removed)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool augment(std::size_t left, const std::vector<unsigned char>& removed) {
    for (const auto& [right, id] : adj_[left]) {
      if (removed[id] || visited_[right]) continue;
      visited_[right] = 1;
      if (match_right_[right] == kNone || augment(match_right_[right], removed)) {
        match_right_[right] = left;
        return true;
      }
    }
    return false;
  }

  std::size_t n_left_;
  std::size_t n_right_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
  std::vector<std::size_t> match_right_;
  std::vector<unsigned char> visited_;
};

}  // namespace

std::size_t structural_rank(const BipartiteGraph& g) {
  const auto net = flow::build_resilience_network(g, 1);
  return static_cast<std::size_t>(flow::max_flow(net).value);
}

ResilienceReport strong_resilience(const BipartiteGraph& g, EllSearch search) {
  if (g.n_right() < g.n_left()) {
    throw ShapeError("strong resilience needs n_right >= n_left");
  }
  ResilienceReport report;
  report.witness_subgraph = BipartiteGraph(g.n_left(), g.n_right());
  report.structural_rank = structural_rank(g);
  // An isolated left node (or any rank deficiency) leaves nothing to search.
  if (g.n_left() == 0 || g.min_left_degree() == 0 || report.structural_rank < g.n_left()) {
    return report;
  }

  std::optional<Saturated> best;
  if (search == EllSearch::binary) {
    // Saturation is monotone in ell, and ell = 1 is known to saturate.
    std::size_t lo = 1;
    std::size_t hi = g.min_left_degree();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (saturated_flow(g, mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    report.ell_star = lo;
    best = saturated_flow(g, lo);
  } else {
    for (std::size_t ell = g.n_right(); ell >= 1 && !best; --ell) {
      best = saturated_flow(g, ell);
      if (best) report.ell_star = ell;
    }
  }
  if (!best) throw std::logic_error("full-rank graph without a saturated flow");

  report.strong_resilience = static_cast<int>(report.ell_star) - 1;
  report.witness_subgraph = flow::induced_subgraph(g, best->net, best->f);
  report.matchings = extract_disjoint_matchings(report.witness_subgraph, report.ell_star);
  return report;
}

std::vector<Matching> extract_disjoint_matchings(const BipartiteGraph& h, std::size_t ell) {
  if (ell == 0) {
    if (!h.empty()) throw NotDecomposable("a nonempty graph is not a union of 0 matchings");
    return {};
  }
  if (ell > h.n_right() || !is_union_of_k_matchings(h, ell)) {
    throw NotDecomposable("graph is not a union of " + std::to_string(ell) +
                          " disjoint left-perfect matchings");
  }
  std::vector<Matching> out;
  BipartiteGraph rest = h;
  for (std::size_t r = ell; r >= 1; --r) {
    auto edges = peel_matching(rest, r);
    rest = with_edges_removed(rest, edges);
    out.emplace_back(std::move(edges), h.n_left());
  }
  return out;
}

int weak_resilience(const BipartiteGraph& g, std::uint64_t budget) {
  if (structural_rank(g) < g.n_left()) return -1;
  const std::size_t e = g.edge_count();
  LpmProbe probe(g);
  std::vector<unsigned char> removed(e, 0);
  std::uint64_t tests = 0;
  // Every level below k has passed; k = min left degree always fails.
  for (std::size_t k = 1; k <= e; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      if (++tests > budget) {
        throw BudgetExceeded("weak resilience needs more than " + std::to_string(budget) +
                                 " subset tests",
                             static_cast<int>(k) - 1);
      }
      for (std::size_t id : pick) removed[id] = 1;
      const bool survives = probe.has_left_perfect(removed);
      for (std::size_t id : pick) removed[id] = 0;
      if (!survives) return static_cast<int>(k) - 1;

      // Next k-combination of {0, ..., e-1} in lexicographic order.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == e - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  // Removing every edge always destroys the matching when n >= 1.
  return static_cast<int>(e) - 1;
}

}  // namespace sprank
