#pragma once

// Integer flow networks over bipartite graphs: the two network constructions
// used for resilience analysis and augmentation, an integral max-flow solver
// (shortest augmenting paths), successive-shortest-path min-cost max-flow,
// residual min-cut extraction and flow-induced subgraphs.
//
// Solvers are deterministic: residual arcs are scanned in ascending head
// index, so equal inputs always give identical flows.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sprank/pattern.hpp"

namespace sprank::flow {

using Capacity = std::int64_t;

/// Arc groups of the bipartite constructions. Which arcs land in which group
/// depends on the construction (see the builders below).
enum class ArcClass { e0, e1 };

struct ArcTag {
  ArcClass group = ArcClass::e0;
  /// Pattern coordinate carried by an alpha->beta arc.
  std::optional<Edge> edge;
};

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  Capacity capacity = 0;
  Capacity cost = 0;
  ArcTag tag;
};

enum class NetworkKind {
  general,
  resilience,    ///< alpha->beta arcs are the edges of g
  augmentation,  ///< alpha->beta arcs are the non-edges of g
  b_matching,    ///< alpha->beta arcs span the complete bipartite graph
};

/// Node numbering shared by every bipartite construction:
/// s = 0, alpha_i = 1 + i, beta_j = 1 + n + j, t = 1 + n + m.
struct BipartiteLayout {
  std::size_t n_left = 0;
  std::size_t n_right = 0;

  std::size_t source() const noexcept { return 0; }
  std::size_t alpha(std::size_t i) const noexcept { return 1 + i; }
  std::size_t beta(std::size_t j) const noexcept { return 1 + n_left + j; }
  std::size_t sink() const noexcept { return 1 + n_left + n_right; }
  std::size_t node_count() const noexcept { return 2 + n_left + n_right; }
};

/// Directed network with nonnegative integer capacities and costs.
///
/// Construction enforces: no arc enters the source or leaves the sink, and at
/// most one arc per ordered (tail, head) pair. Untagged parallel arcs of equal
/// cost are merged by adding capacities; tagged parallel arcs are rejected.
/// Arcs are stored sorted by (tail, head).
class FlowNetwork {
 public:
  FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink,
              std::vector<Arc> arcs, NetworkKind kind = NetworkKind::general,
              BipartiteLayout layout = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t source() const noexcept { return source_; }
  std::size_t sink() const noexcept { return sink_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  NetworkKind kind() const noexcept { return kind_; }
  const BipartiteLayout& layout() const noexcept { return layout_; }
  bool has_coordinate_tags() const noexcept;

  /// Index of the arc tail->head, if present.
  std::optional<std::size_t> find_arc(std::size_t tail, std::size_t head) const;

 private:
  std::size_t node_count_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<Arc> arcs_;
  NetworkKind kind_;
  BipartiteLayout layout_;
};

/// Integral flow; `arc_flow[a]` belongs to `net.arcs()[a]`.
struct Flow {
  std::vector<Capacity> arc_flow;
  Capacity value = 0;
  Capacity cost = 0;
};

/// An s-t cut given by its source side (sorted node list).
struct Cut {
  std::vector<std::size_t> source_side;
  Capacity capacity = 0;

  bool contains(std::size_t node) const;
};

/// Capacity bounds, conservation at inner nodes, and value = outflow(s) =
/// inflow(t).
bool is_valid_flow(const FlowNetwork& net, const Flow& f);

/// s->alpha_i and beta_j->t with capacity ell (group e0), alpha_i->beta_j with
/// capacity 1 for every edge of g (group e1, tagged). All costs 0.
FlowNetwork build_resilience_network(const BipartiteGraph& g, Capacity ell);

/// s->alpha_i capacity 1 and alpha_i->beta_j capacity 1 for every non-edge of
/// g (group e0, non-edge arcs tagged); beta_j->t with capacity
/// max(0, k + 1 - deg(beta_j; g)) (group e1). All costs 0.
FlowNetwork build_augmentation_network(const BipartiteGraph& g, Capacity k);

/// Integral maximum flow by breadth-first shortest augmenting paths.
Flow max_flow(const FlowNetwork& net);

/// Source side = nodes reachable from s in the residual network of f.
/// Throws NotMaximal if t is reachable.
Cut min_cut(const FlowNetwork& net, const Flow& f);

/// Maximum flow of minimum total cost, by successive shortest paths with
/// node potentials. Requires nonnegative costs (guaranteed by FlowNetwork).
Flow min_cost_max_flow(const FlowNetwork& net);

/// Edges whose tagged alpha->beta arcs carry nonzero flow. For resilience
/// networks the result is a subgraph of g, for augmentation networks a
/// subgraph of complement(g).
///
/// Throws TagMismatch if the network has no coordinate tags, was built for
/// different dimensions, or its tags disagree with g.
BipartiteGraph induced_subgraph(const BipartiteGraph& g, const FlowNetwork& net,
                                const Flow& f);

/// Counters of the max-flow = min-cut audit run after every solve when the
/// library is built with SPRANK_FLOW_AUDIT.
struct AuditCounters {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};

bool audit_enabled() noexcept;
AuditCounters audit_counters() noexcept;

}  // namespace sprank::flow
