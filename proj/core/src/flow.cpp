#include "sprank/flow.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

#include "sprank/errors.hpp"

namespace sprank::flow {

namespace {

std::atomic<std::uint64_t> g_audit_checked{0};
std::atomic<std::uint64_t> g_audit_violations{0};

constexpr Capacity kInfinity = std::numeric_limits<Capacity>::max() / 4;

// Residual graph: arc a of the network becomes residual edges 2a (forward)
// and 2a+1 (backward). Adjacency lists are ordered by (head, edge id).
class Residual {
 public:
  Residual(const FlowNetwork& net, std::span<const Capacity> flow)
      : to_(2 * net.arcs().size()),
        cap_(2 * net.arcs().size()),
        cost_(2 * net.arcs().size()),
        adj_(net.node_count()) {
    const auto arcs = net.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const Arc& arc = arcs[a];
      to_[2 * a] = arc.head;
      cap_[2 * a] = arc.capacity - flow[a];
      cost_[2 * a] = arc.cost;
      to_[2 * a + 1] = arc.tail;
      cap_[2 * a + 1] = flow[a];
      cost_[2 * a + 1] = -arc.cost;
      adj_[arc.tail].push_back(2 * a);
      adj_[arc.head].push_back(2 * a + 1);
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(), [this](std::size_t x, std::size_t y) {
        return std::pair(to_[x], x) < std::pair(to_[y], y);
      });
    }
  }

  std::size_t to(std::size_t e) const { return to_[e]; }
  Capacity cap(std::size_t e) const { return cap_[e]; }
  Capacity cost(std::size_t e) const { return cost_[e]; }
  const std::vector<std::size_t>& out(std::size_t v) const { return adj_[v]; }

  void push(std::size_t e, Capacity amount) {
    cap_[e] -= amount;
    cap_[e ^ 1] += amount;
  }

  // Net flow on network arc a.
  Capacity arc_flow(std::size_t a) const { return cap_[2 * a + 1]; }

  std::vector<bool> reachable_from(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<std::size_t> frontier;
    seen[s] = true;
    frontier.push(s);
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t e : adj_[v]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = true;
          frontier.push(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  std::vector<std::size_t> to_;
  std::vector<Capacity> cap_;
  std::vector<Capacity> cost_;
  std::vector<std::vector<std::size_t>> adj_;
};

// Augments along the parent-edge chain ending at t; returns the bottleneck.
Capacity augment_path(Residual& res, std::size_t s, std::size_t t,
                      const std::vector<std::size_t>& parent_edge) {
  Capacity bottleneck = kInfinity;
  for (std::size_t v = t; v != s; v = res.to(parent_edge[v] ^ 1)) {
    bottleneck = std::min(bottleneck, res.cap(parent_edge[v]));
  }
  for (std::size_t v = t; v != s; v = res.to(parent_edge[v] ^ 1)) {
    res.push(parent_edge[v], bottleneck);
  }
  return bottleneck;
}

Flow collect(const FlowNetwork& net, const Residual& res) {
  Flow f;
  f.arc_flow.resize(net.arcs().size());
  for (std::size_t a = 0; a < net.arcs().size(); ++a) {
    f.arc_flow[a] = res.arc_flow(a);
    f.cost += f.arc_flow[a] * net.arcs()[a].cost;
    if (net.arcs()[a].tail == net.source()) f.value += f.arc_flow[a];
  }
  return f;
}

void audit(const FlowNetwork& net, const Flow& f) {
  if (!is_valid_flow(net, f)) {
    throw std::logic_error("flow solver produced an infeasible flow");
  }
#ifdef SPRANK_FLOW_AUDIT
  g_audit_checked.fetch_add(1, std::memory_order_relaxed);
  bool ok = false;
  try {
    ok = min_cut(net, f).capacity == f.value;
  } catch (const NotMaximal&) {
    ok = false;
  }
  if (!ok) {
    g_audit_violations.fetch_add(1, std::memory_order_relaxed);
    throw std::logic_error("max-flow value differs from min-cut capacity");
  }
#endif
}

std::vector<Capacity> zero_flow(const FlowNetwork& net) {
  return std::vector<Capacity>(net.arcs().size(), 0);
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink,
                         std::vector<Arc> arcs, NetworkKind kind, BipartiteLayout layout)
    : node_count_(node_count), source_(source), sink_(sink), kind_(kind), layout_(layout) {
  if (source >= node_count || sink >= node_count || source == sink) {
    throw PreconditionFailed("source and sink must be distinct existing nodes");
  }
  for (const Arc& a : arcs) {
    if (a.tail >= node_count || a.head >= node_count) {
      throw OutOfRange("arc endpoint outside the network");
    }
    if (a.tail == a.head) throw PreconditionFailed("self-loop arc");
    if (a.head == source) throw PreconditionFailed("arc entering the source");
    if (a.tail == sink) throw PreconditionFailed("arc leaving the sink");
    if (a.capacity < 0 || a.cost < 0) {
      throw PreconditionFailed("capacities and costs must be nonnegative");
    }
  }
  std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return std::pair(x.tail, x.head) < std::pair(y.tail, y.head);
  });
  for (Arc& a : arcs) {
    if (!arcs_.empty() && arcs_.back().tail == a.tail && arcs_.back().head == a.head) {
      Arc& prev = arcs_.back();
      if (prev.tag.edge || a.tag.edge || prev.cost != a.cost ||
          prev.tag.group != a.tag.group) {
        throw PreconditionFailed("parallel arcs " + std::to_string(a.tail) + "->" +
                                 std::to_string(a.head) + " cannot be merged");
      }
      prev.capacity += a.capacity;
      continue;
    }
    arcs_.push_back(a);
  }
}

bool FlowNetwork::has_coordinate_tags() const noexcept {
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [](const Arc& a) { return a.tag.edge.has_value(); });
}

std::optional<std::size_t> FlowNetwork::find_arc(std::size_t tail, std::size_t head) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), std::pair(tail, head),
                             [](const Arc& a, const std::pair<std::size_t, std::size_t>& k) {
                               return std::pair(a.tail, a.head) < k;
                             });
  if (it == arcs_.end() || it->tail != tail || it->head != head) return std::nullopt;
  return static_cast<std::size_t>(it - arcs_.begin());
}

bool Cut::contains(std::size_t node) const {
  return std::binary_search(source_side.begin(), source_side.end(), node);
}

bool is_valid_flow(const FlowNetwork& net, const Flow& f) {
  const auto arcs = net.arcs();
  if (f.arc_flow.size() != arcs.size()) return false;
  std::vector<Capacity> balance(net.node_count(), 0);
  Capacity out_of_source = 0;
  Capacity into_sink = 0;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Capacity x = f.arc_flow[a];
    if (x < 0 || x > arcs[a].capacity) return false;
    balance[arcs[a].tail] -= x;
    balance[arcs[a].head] += x;
    if (arcs[a].tail == net.source()) out_of_source += x;
    if (arcs[a].head == net.sink()) into_sink += x;
  }
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (v != net.source() && v != net.sink() && balance[v] != 0) return false;
  }
  return out_of_source == f.value && into_sink == f.value;
}

FlowNetwork build_resilience_network(const BipartiteGraph& g, Capacity ell) {
  if (ell < 0) throw PreconditionFailed("ell must be nonnegative");
  const BipartiteLayout lay{g.n_left(), g.n_right()};
  std::vector<Arc> arcs;
  arcs.reserve(g.n_left() + g.n_right() + g.edge_count());
  for (std::size_t i = 0; i < g.n_left(); ++i) {
    arcs.push_back({lay.source(), lay.alpha(i), ell, 0, {ArcClass::e0, std::nullopt}});
  }
  for (const Edge& e : g.edges()) {
    arcs.push_back({lay.alpha(e.left), lay.beta(e.right), 1, 0, {ArcClass::e1, e}});
  }
  for (std::size_t j = 0; j < g.n_right(); ++j) {
    arcs.push_back({lay.beta(j), lay.sink(), ell, 0, {ArcClass::e0, std::nullopt}});
  }
  return FlowNetwork(lay.node_count(), lay.source(), lay.sink(), std::move(arcs),
                     NetworkKind::resilience, lay);
}

FlowNetwork build_augmentation_network(const BipartiteGraph& g, Capacity k) {
  if (k < 0) throw PreconditionFailed("k must be nonnegative");
  const BipartiteLayout lay{g.n_left(), g.n_right()};
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < g.n_left(); ++i) {
    arcs.push_back({lay.source(), lay.alpha(i), 1, 0, {ArcClass::e0, std::nullopt}});
    for (std::size_t j = 0; j < g.n_right(); ++j) {
      if (!g.has_edge(i, j)) {
        arcs.push_back({lay.alpha(i), lay.beta(j), 1, 0, {ArcClass::e0, Edge{i, j}}});
      }
    }
  }
  for (std::size_t j = 0; j < g.n_right(); ++j) {
    const Capacity deg = static_cast<Capacity>(g.right_degree(j));
    arcs.push_back({lay.beta(j), lay.sink(), std::max<Capacity>(0, k + 1 - deg), 0,
                    {ArcClass::e1, std::nullopt}});
  }
  return FlowNetwork(lay.node_count(), lay.source(), lay.sink(), std::move(arcs),
                     NetworkKind::augmentation, lay);
}

Flow max_flow(const FlowNetwork& net) {
  const auto initial = zero_flow(net);
  Residual res(net, initial);
  const std::size_t s = net.source();
  const std::size_t t = net.sink();
  std::vector<std::size_t> parent_edge(net.node_count());
  std::vector<bool> seen(net.node_count());
  while (true) {
    std::fill(seen.begin(), seen.end(), false);
    std::queue<std::size_t> frontier;
    frontier.push(s);
    seen[s] = true;
    while (!frontier.empty() && !seen[t]) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t e : res.out(v)) {
        const std::size_t w = res.to(e);
        if (res.cap(e) > 0 && !seen[w]) {
          seen[w] = true;
          parent_edge[w] = e;
          frontier.push(w);
        }
      }
    }
    if (!seen[t]) break;
    augment_path(res, s, t, parent_edge);
  }
  Flow f = collect(net, res);
  audit(net, f);
  return f;
}

Cut min_cut(const FlowNetwork& net, const Flow& f) {
  if (!is_valid_flow(net, f)) throw PreconditionFailed("not a feasible flow");
  const Residual res(net, f.arc_flow);
  const std::vector<bool> side = res.reachable_from(net.source());
  if (side[net.sink()]) {
    throw NotMaximal("flow of value " + std::to_string(f.value) +
                     " admits an augmenting path");
  }
  Cut cut;
  for (std::size_t v = 0; v < side.size(); ++v) {
    if (side[v]) cut.source_side.push_back(v);
  }
  for (const Arc& a : net.arcs()) {
    if (side[a.tail] && !side[a.head]) cut.capacity += a.capacity;
  }
  return cut;
}

Flow min_cost_max_flow(const FlowNetwork& net) {
  const auto initial = zero_flow(net);
  Residual res(net, initial);
  const std::size_t n = net.node_count();
  const std::size_t s = net.source();
  const std::size_t t = net.sink();
  // Costs start nonnegative, so zero potentials are feasible.
  std::vector<Capacity> potential(n, 0);
  std::vector<Capacity> dist(n);
  std::vector<std::size_t> parent_edge(n);
  using Entry = std::pair<Capacity, std::size_t>;
  while (true) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[s] = 0;
    heap.push({0, s});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[v]) continue;
      for (std::size_t e : res.out(v)) {
        if (res.cap(e) <= 0) continue;
        const std::size_t w = res.to(e);
        const Capacity reduced = res.cost(e) + potential[v] - potential[w];
        if (d + reduced < dist[w]) {
          dist[w] = d + reduced;
          parent_edge[w] = e;
          heap.push({dist[w], w});
        }
      }
    }
    if (dist[t] >= kInfinity) break;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] < kInfinity) potential[v] += dist[v];
    }
    augment_path(res, s, t, parent_edge);
  }
  Flow f = collect(net, res);
  audit(net, f);
  return f;
}

BipartiteGraph induced_subgraph(const BipartiteGraph& g, const FlowNetwork& net,
                                const Flow& f) {
  if (net.kind() == NetworkKind::general || !net.has_coordinate_tags()) {
    throw TagMismatch("network carries no pattern coordinates");
  }
  if (net.layout().n_left != g.n_left() || net.layout().n_right != g.n_right()) {
    throw TagMismatch("network was built for a graph of different dimensions");
  }
  if (f.arc_flow.size() != net.arcs().size()) {
    throw TagMismatch("flow does not belong to this network");
  }
  std::vector<Edge> used;
  const auto arcs = net.arcs();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto& edge = arcs[a].tag.edge;
    if (!edge) continue;
    const bool in_g = g.has_edge(*edge);
    if ((net.kind() == NetworkKind::resilience && !in_g) ||
        (net.kind() == NetworkKind::augmentation && in_g)) {
      throw TagMismatch("arc tag " + to_string(*edge) + " disagrees with the graph");
    }
    if (f.arc_flow[a] != 0) used.push_back(*edge);
  }
  return BipartiteGraph(g.n_left(), g.n_right(), std::move(used));
}

bool audit_enabled() noexcept {
#ifdef SPRANK_FLOW_AUDIT
  return true;
#else
  return false;
#endif
}

AuditCounters audit_counters() noexcept {
  return {g_audit_checked.load(std::memory_order_relaxed),
          g_audit_violations.load(std::memory_order_relaxed)};
}

}  // namespace sprank::flow
