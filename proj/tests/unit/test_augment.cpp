#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "sprank/augment.hpp"
#include "sprank/errors.hpp"
#include "sprank/oracle.hpp"
#include "sprank/resilience.hpp"

using namespace sprank;
namespace fx = sprank::fixtures;

namespace {

int srs(const BipartiteGraph& g) { return strong_resilience(g).strong_resilience; }

void expect_b_matching(const BipartiteGraph& g, const BMatching& bm, std::size_t k_star) {
  const BipartiteGraph p(g.n_left(), g.n_right(), bm.edges);
  EXPECT_EQ(bm.node_budget, k_star + 1);
  EXPECT_EQ(p.edge_count(), (k_star + 1) * g.n_left());
  for (std::size_t j = 0; j < g.n_right(); ++j) EXPECT_LE(p.right_degree(j), k_star + 1);
  EXPECT_TRUE(is_union_of_k_matchings(p, k_star + 1));
  std::size_t overlap = 0;
  for (const Edge& e : bm.edges) overlap += g.has_edge(e) ? 1 : 0;
  EXPECT_EQ(bm.overlap, overlap);
}

void expect_plan_consistent(const BipartiteGraph& g, const AugmentationPlan& plan) {
  for (const Edge& e : plan.added_edges) EXPECT_FALSE(g.has_edge(e));
  EXPECT_EQ(plan.result_graph, with_edges_added(g, plan.added_edges));
  EXPECT_GE(srs(plan.result_graph), plan.achieved_resilience);
}

}  // namespace

TEST(FairBMatching, Block2x3) {
  const auto g = fx::block2x3();
  const auto bm = fair_b_matching(g, 2);
  EXPECT_EQ(bm.edges.size(), 6u);
  EXPECT_EQ(bm.overlap, 4u);
  EXPECT_EQ(BipartiteGraph(2, 3, bm.edges), BipartiteGraph::complete(2, 3));
  expect_b_matching(g, bm, 2);
}

TEST(FairBMatching, AlreadyAUnionUsesNoNewEdges) {
  const auto g = fx::lpm_pair_union();
  const auto bm = fair_b_matching(g, 1);
  EXPECT_EQ(bm.overlap, 8u);
  EXPECT_EQ(BipartiteGraph(4, 5, bm.edges), g);
}

TEST(FairBMatching, EmptyGraph) {
  const BipartiteGraph g(2, 2);
  const auto bm = fair_b_matching(g, 1);
  EXPECT_EQ(bm.edges.size(), 4u);
  EXPECT_EQ(bm.overlap, 0u);
}

TEST(FairBMatching, InvalidTarget) {
  EXPECT_THROW(fair_b_matching(fx::block2x3(), 3), InvalidK);
  EXPECT_THROW(fair_b_matching(BipartiteGraph(3, 2), 0), ShapeError);
}

TEST(MinEdgesForTarget, Block2x3) {
  const auto g = fx::block2x3();
  const auto plan = min_edges_for_target(g, 2);
  EXPECT_EQ(plan.delta_star, 2u);
  EXPECT_EQ(plan.added_edges, (std::vector<Edge>{{0, 2}, {1, 2}}));
  EXPECT_EQ(plan.result_graph, BipartiteGraph::complete(2, 3));
  EXPECT_EQ(plan.achieved_resilience, 2);
  ASSERT_TRUE(plan.b_matching);
  EXPECT_EQ(plan.b_matching->edges.size() - plan.b_matching->overlap, plan.delta_star);
  expect_plan_consistent(g, plan);
}

TEST(MinEdgesForTarget, AlreadyResilient) {
  const auto plan = min_edges_for_target(fx::chain4x5(), 1);
  EXPECT_EQ(plan.delta_star, 0u);
  EXPECT_TRUE(plan.added_edges.empty());
  EXPECT_EQ(plan.result_graph, fx::chain4x5());
  EXPECT_FALSE(plan.b_matching);
}

TEST(MinEdgesForTarget, EmptyNeedsAPerfectMatching) {
  const auto plan = min_edges_for_target(BipartiteGraph(2, 2), 0);
  EXPECT_EQ(plan.delta_star, 2u);
  EXPECT_EQ(plan.achieved_resilience, 0);
  EXPECT_EQ(min_edge_count(BipartiteGraph(2, 2), 0), 2u);
}

TEST(MinEdgesForTarget, InvalidTarget) {
  EXPECT_THROW(min_edges_for_target(fx::block2x3(), 3), InvalidK);
}

TEST(BestWithinBudget, Block2x3) {
  const auto g = fx::block2x3();
  const auto two = best_within_budget(g, 2);
  EXPECT_EQ(two.achieved_resilience, 2);
  EXPECT_EQ(two.delta_star, 2u);
  EXPECT_EQ(two.delta_by_k, (std::vector<std::size_t>{0, 0, 2}));
  expect_plan_consistent(g, two);

  const auto one = best_within_budget(g, 1);
  EXPECT_EQ(one.achieved_resilience, 1);
  EXPECT_EQ(one.delta_star, 0u);
  EXPECT_TRUE(one.added_edges.empty());
  EXPECT_EQ(oracle::brute_min_augmentation(g, 2), 2u);
  EXPECT_EQ(oracle::brute_strong_resilience(g), 1);
}

TEST(BestWithinBudget, ZeroBudgetKeepsGraph) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = fx::random_graph(rng, n, n + trial % 3, 0.6);
    const auto plan = best_within_budget(g, 0);
    EXPECT_EQ(plan.achieved_resilience, srs(g));
    EXPECT_TRUE(plan.added_edges.empty());
  }
}

TEST(BestWithinBudget, InsufficientBudgetForAnyTarget) {
  const auto plan = best_within_budget(BipartiteGraph(3, 3), 2);
  EXPECT_EQ(plan.achieved_resilience, -1);
  EXPECT_TRUE(plan.added_edges.empty());
  EXPECT_EQ(plan.delta_by_k[0], 3u);
}

TEST(BestWithinBudget, ExactSpendPadsWithComplementEdges) {
  const auto g = fx::chain4x5();
  const auto plan = best_within_budget(g, 3, true);
  EXPECT_EQ(plan.added_edges.size(), 3u);
  EXPECT_EQ(plan.delta_star, 2u);
  EXPECT_GE(plan.achieved_resilience, 2);
  expect_plan_consistent(g, plan);
}

TEST(BestWithinBudget, AchievedIsMonotoneInBudget) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = fx::random_graph(rng, n, n + trial % 3, 0.4);
    int last = -2;
    for (std::size_t p = 0; p <= g.n_left() * g.n_right(); ++p) {
      const int now = best_within_budget(g, p).achieved_resilience;
      EXPECT_GE(now, last);
      last = now;
    }
  }
}

TEST(IncrementMatchings, LpmPairUnion) {
  const auto g = fx::lpm_pair_union();
  const auto [h, added] = increment_matchings(g, 2);
  EXPECT_EQ(added.size(), 4u);
  EXPECT_TRUE(is_union_of_k_matchings(h, 3));
  for (const Edge& e : added) EXPECT_FALSE(g.has_edge(e));
}

TEST(IncrementMatchings, PerfectMatchingGainsOne) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto [h, added] = increment_matchings(fx::identity(n), 1);
    EXPECT_EQ(added.size(), n);
    EXPECT_TRUE(is_union_of_k_matchings(h, 2));
  }
}

TEST(IncrementMatchings, CompletesK23) {
  const auto [h, added] = increment_matchings(fx::block2x3(), 2);
  EXPECT_EQ(added, (std::vector<Edge>{{0, 2}, {1, 2}}));
  EXPECT_EQ(h, BipartiteGraph::complete(2, 3));
}

TEST(IncrementMatchings, Errors) {
  EXPECT_THROW(increment_matchings(fx::chain4x5(), 2), PreconditionFailed);
  EXPECT_THROW(increment_matchings(BipartiteGraph::complete(2, 3), 3), InvalidK);
  const auto [h, added] = increment_matchings(BipartiteGraph(2, 3), 0);
  EXPECT_EQ(added.size(), 2u);
  EXPECT_TRUE(is_union_of_k_matchings(h, 1));
}

TEST(BoostBy, Examples) {
  const auto [k33, a1] = boost_by(fx::identity(3), 1, 2);
  EXPECT_EQ(k33, BipartiteGraph::complete(3, 3));
  EXPECT_EQ(a1.size(), 6u);

  const auto [k45, a2] = boost_by(fx::lpm_pair_union(), 2, 3);
  EXPECT_EQ(k45.edge_count(), 20u);
  EXPECT_EQ(k45, BipartiteGraph::complete(4, 5));
  EXPECT_EQ(a2.size(), 12u);
  EXPECT_TRUE(is_union_of_k_matchings(k45, 5));

  EXPECT_THROW(boost_by(fx::lpm_pair_union(), 2, 4), InvalidK);
  EXPECT_THROW(boost_by(fx::lpm_pair_union(), 2, 0), InvalidK);
}

TEST(ComplementMatchingStructure, Examples) {
  const auto k33 = BipartiteGraph::complete(3, 3);
  const auto one_pm = complement(fx::identity(3));
  EXPECT_EQ(complement_matching_structure(one_pm), 1u);
  EXPECT_EQ(complement_matching_structure(fx::identity(4)), 3u);
  const auto rest = extract_disjoint_matchings(complement(fx::identity(4)), 3);
  EXPECT_EQ(rest.size(), 3u);
  EXPECT_EQ(complement_matching_structure(k33), 0u);
  EXPECT_TRUE(complement(k33).empty());

  EXPECT_THROW(complement_matching_structure(fx::block2x3()), PreconditionFailed);
  EXPECT_THROW(complement_matching_structure(fx::graph1(2, 2, {{1, 1}, {1, 2}, {2, 1}})),
               PreconditionFailed);
}

class AugmentProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(AugmentProperties, TargetIsHitExactly) {
  std::mt19937_64 rng(GetParam());
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t m = n + trial % 3;
    const auto g = fx::random_graph(rng, n, m, 0.45);
    const int current = srs(g);
    for (std::size_t k = 0; k < m; ++k) {
      const auto bm = fair_b_matching(g, k);
      expect_b_matching(g, bm, k);
      const auto plan = min_edges_for_target(g, k);
      expect_plan_consistent(g, plan);
      EXPECT_EQ(plan.delta_star == 0, current >= static_cast<int>(k));
      if (current < static_cast<int>(k)) {
        EXPECT_EQ(plan.achieved_resilience, static_cast<int>(k));
        EXPECT_EQ(plan.delta_star, bm.edges.size() - bm.overlap);
      }
    }
  }
}

TEST_P(AugmentProperties, IncrementAddsOneMatching) {
  std::mt19937_64 rng(GetParam() + 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t m = n + trial % 3;
    const std::size_t k = trial % m;
    const auto g = k == 0 ? BipartiteGraph(n, m) : fx::random_greedy_union(rng, n, m, k);
    const auto [h, added] = increment_matchings(g, k);
    EXPECT_EQ(added.size(), n);
    EXPECT_TRUE(is_union_of_k_matchings(h, k + 1));
    for (const Edge& e : added) EXPECT_FALSE(g.has_edge(e));
  }
}

TEST_P(AugmentProperties, DeltaMatchesOracle) {
  std::mt19937_64 rng(GetParam() + 9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = n + trial % (5 - n);
    const auto g = fx::random_graph(rng, n, m, 0.5);
    for (std::size_t k = 0; k <= std::min<std::size_t>(2, m - 1); ++k) {
      EXPECT_EQ(min_edge_count(g, k), oracle::brute_min_augmentation(g, k));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, AugmentProperties, ::testing::Values(4u, 44u, 444u));
