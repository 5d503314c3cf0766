#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "sprank/errors.hpp"
#include "sprank/flow.hpp"
#include "sprank/oracle.hpp"
#include "sprank/resilience.hpp"

using namespace sprank;
namespace fx = sprank::fixtures;

namespace {

void expect_witness_valid(const BipartiteGraph& g, const ResilienceReport& r) {
  EXPECT_EQ(r.strong_resilience, static_cast<int>(r.ell_star) - 1);
  ASSERT_EQ(r.matchings.size(), r.ell_star);
  EXPECT_TRUE(fx::partitions(r.witness_subgraph, r.matchings));
  for (const Edge& e : r.witness_subgraph.edges()) EXPECT_TRUE(g.has_edge(e));
  if (r.ell_star > 0) {
    EXPECT_TRUE(is_union_of_k_matchings(r.witness_subgraph, r.ell_star));
    EXPECT_LE(r.ell_star, g.min_left_degree());
  }
  EXPECT_GE(r.strong_resilience, -1);
  EXPECT_LE(r.strong_resilience, static_cast<int>(g.n_right()) - 1);
}

}  // namespace

TEST(StructuralRank, Examples) {
  EXPECT_EQ(structural_rank(fx::chain4x5()), 4u);
  EXPECT_EQ(structural_rank(fx::network4x6()), 4u);
  EXPECT_EQ(structural_rank(BipartiteGraph(3, 4)), 0u);
  EXPECT_EQ(structural_rank(fx::graph1(3, 3, {{1, 1}, {1, 2}, {1, 3}})), 1u);
}

TEST(StrongResilience, Chain4x5) {
  const auto g = fx::chain4x5();
  const auto r = strong_resilience(g);
  EXPECT_EQ(r.structural_rank, 4u);
  EXPECT_EQ(r.strong_resilience, 1);
  EXPECT_EQ(r.ell_star, 2u);
  expect_witness_valid(g, r);
}

TEST(StrongResilience, Block2x3) {
  const auto r = strong_resilience(fx::block2x3());
  EXPECT_EQ(r.ell_star, 2u);
  EXPECT_EQ(r.strong_resilience, 1);
  expect_witness_valid(fx::block2x3(), r);
}

TEST(StrongResilience, CompleteGraphs) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= 6; ++m) {
      const auto k = BipartiteGraph::complete(n, m);
      const auto r = strong_resilience(k);
      EXPECT_EQ(r.strong_resilience, static_cast<int>(m) - 1) << n << "x" << m;
      expect_witness_valid(k, r);
    }
  }
}

TEST(StrongResilience, Network4x6DegreeCheckAndOracle) {
  const auto g = fx::network4x6();
  ASSERT_TRUE(is_union_of_k_matchings(g, 3));
  const auto r = strong_resilience(g);
  EXPECT_EQ(r.strong_resilience, 2);
  EXPECT_EQ(oracle::brute_strong_resilience(g), 2);
  expect_witness_valid(g, r);
}

TEST(StrongResilience, DeficientAndIsolated) {
  const auto isolated = fx::graph1(2, 3, {{1, 1}, {1, 2}});
  const auto r = strong_resilience(isolated);
  EXPECT_EQ(r.strong_resilience, -1);
  EXPECT_EQ(r.ell_star, 0u);
  EXPECT_TRUE(r.matchings.empty());
  EXPECT_EQ(r.structural_rank, 1u);

  // Full left degrees but only one column between two rows.
  const auto squeezed = fx::graph1(2, 2, {{1, 1}, {2, 1}});
  EXPECT_EQ(strong_resilience(squeezed).strong_resilience, -1);
  EXPECT_EQ(strong_resilience(squeezed).structural_rank, 1u);
}

TEST(StrongResilience, RejectsTall) {
  EXPECT_THROW(strong_resilience(BipartiteGraph(3, 2)), ShapeError);
}

TEST(StrongResilience, LinearScanAgrees) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = fx::random_graph(rng, n, n + trial % 3, 0.6);
    const auto a = strong_resilience(g, EllSearch::binary);
    const auto b = strong_resilience(g, EllSearch::linear_scan);
    EXPECT_EQ(a.ell_star, b.ell_star);
    expect_witness_valid(g, b);
  }
}

TEST(ExtractDisjointMatchings, LpmPairUnion) {
  const auto h = fx::lpm_pair_union();
  const auto ms = extract_disjoint_matchings(h, 2);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_TRUE(fx::partitions(h, ms));
  // This union has exactly one decomposition, so up to order it must be the
  // pair of matchings it was built from.
  const Matching a(fx::lpm_pair_a(), 4), b(fx::lpm_pair_b(), 4);
  EXPECT_TRUE((ms[0] == a && ms[1] == b) || (ms[0] == b && ms[1] == a));
}

TEST(ExtractDisjointMatchings, SingleMatching) {
  const auto h = fx::identity(3);
  const auto ms = extract_disjoint_matchings(h, 1);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].edges().size(), 3u);
  EXPECT_TRUE(fx::partitions(h, ms));
}

TEST(ExtractDisjointMatchings, CompleteThreeByThree) {
  const auto k = BipartiteGraph::complete(3, 3);
  const auto ms = extract_disjoint_matchings(k, 3);
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_TRUE(fx::partitions(k, ms));
}

TEST(ExtractDisjointMatchings, NonRegularRightDegrees) {
  // Random unions leave some right degrees below k, where peeling an
  // arbitrary matching can strand a column.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t m = n + trial % 4;
    const std::size_t k = 1 + trial % std::min<std::size_t>(m, 4);
    const auto h = trial % 2 ? fx::random_greedy_union(rng, n, m, k)
                             : fx::random_union_of_lpms(rng, n, m, k);
    ASSERT_TRUE(is_union_of_k_matchings(h, k));
    const auto ms = extract_disjoint_matchings(h, k);
    ASSERT_EQ(ms.size(), k);
    EXPECT_TRUE(fx::partitions(h, ms));
  }
}

TEST(ExtractDisjointMatchings, PreconditionFailures) {
  EXPECT_THROW(extract_disjoint_matchings(fx::chain4x5(), 2), NotDecomposable);
  EXPECT_THROW(extract_disjoint_matchings(fx::chain4x5(), 0), NotDecomposable);
  EXPECT_TRUE(extract_disjoint_matchings(BipartiteGraph(2, 3), 0).empty());
}

TEST(WeakResilience, Examples) {
  EXPECT_EQ(weak_resilience(fx::chain4x5()), 1);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = n; m <= 4; ++m) {
      EXPECT_EQ(weak_resilience(BipartiteGraph::complete(n, m)), static_cast<int>(m) - 1);
    }
  }
  EXPECT_EQ(weak_resilience(fx::graph1(2, 3, {{1, 1}, {1, 2}})), -1);
  EXPECT_EQ(weak_resilience(fx::identity(3)), 0);
}

TEST(WeakResilience, BudgetExceededCarriesLowerBound) {
  try {
    weak_resilience(BipartiteGraph::complete(3, 4), 20);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    // All 12 single removals pass; the budget runs out at pairs.
    EXPECT_EQ(e.lower_bound(), 1);
  }
}

class ResilienceProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ResilienceProperties, SandwichEdgeBoundAndMonotoneFeasibility) {
  std::mt19937_64 rng(GetParam());
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = n + trial % 3;
    const auto g = fx::random_graph(rng, n, m, 0.65);
    const auto r = strong_resilience(g);
    expect_witness_valid(g, r);
    EXPECT_EQ(r.strong_resilience == -1, r.structural_rank < n);
    if (r.strong_resilience >= 0) {
      EXPECT_GE(g.edge_count(), (static_cast<std::size_t>(r.strong_resilience) + 1) * n);
    }
    EXPECT_GE(weak_resilience(g), r.strong_resilience);
    for (std::size_t ell = 0; ell <= r.ell_star; ++ell) {
      const auto f = flow::max_flow(flow::build_resilience_network(g, ell));
      EXPECT_EQ(f.value, static_cast<flow::Capacity>(n * ell)) << "ell " << ell;
    }
    const auto above = flow::max_flow(flow::build_resilience_network(g, r.ell_star + 1));
    EXPECT_LT(above.value, static_cast<flow::Capacity>(n * (r.ell_star + 1)));
  }
}

TEST_P(ResilienceProperties, AddingAnEdgeNeverLowersStrongResilience) {
  std::mt19937_64 rng(GetParam() * 31 + 1);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = n + trial % 3;
    const auto g = fx::random_graph(rng, n, m, 0.5);
    const auto c = complement(g);
    if (c.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, c.edge_count() - 1);
    const Edge extra[] = {c.edges()[pick(rng)]};
    EXPECT_GE(strong_resilience(with_edges_added(g, extra)).strong_resilience,
              strong_resilience(g).strong_resilience);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ResilienceProperties, ::testing::Values(2u, 13u, 808u));

TEST(OracleAgreement, AllSmallGraphs) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = n; m <= 4; ++m) {
      fx::for_each_graph(n, m, [&](const BipartiteGraph& g) {
        ASSERT_EQ(strong_resilience(g).strong_resilience, oracle::brute_strong_resilience(g));
        ASSERT_EQ(structural_rank(g), oracle::brute_rank(g));
      });
    }
  }
}

TEST(OracleAgreement, WeakOnSmallGraphs) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = n; m <= 3; ++m) {
      fx::for_each_graph(n, m, [&](const BipartiteGraph& g) {
        ASSERT_EQ(weak_resilience(g), oracle::brute_weak_resilience(g));
      });
    }
  }
}
