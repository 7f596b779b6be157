#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "tdf/decomposition.hpp"
#include "tdf/oracles.hpp"
#include "test_util.hpp"

namespace tdf {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::path_graph;
using testing::star_graph;

Ordering order_of(std::vector<Vertex> seq) { return Ordering(std::move(seq)); }

TEST(Decomposition, FromParentsComputesDepthAndRoots) {
  auto d = Decomposition::from_parents({kNoVertex, 0, 1, 1});
  EXPECT_EQ(d.depth(), 3);
  EXPECT_EQ(d.roots(), std::vector<Vertex>{0});
  EXPECT_EQ(d.subtree_heights(), (std::vector<int>{3, 2, 1, 1}));
  EXPECT_THROW(Decomposition::from_parents({1, 0}), StructuralError);
  EXPECT_THROW(Decomposition::from_parents({kNoVertex, 5}), StructuralError);
}

TEST(Ordering, RejectsNonPermutations) {
  EXPECT_THROW(order_of({0, 0}), std::invalid_argument);
  EXPECT_THROW(order_of({0, 2}), std::invalid_argument);
  auto o = order_of({2, 0, 1});
  EXPECT_EQ(o.position(2), 0);
  EXPECT_TRUE(o.before(0, 1));
}

TEST(OrderingFromParents, Examples) {
  // Star rooted at center 0.
  auto star = ordering_from_parents(Decomposition::from_parents({kNoVertex, 0, 0, 0}));
  EXPECT_EQ(star[0], 0);
  EXPECT_EQ(ordering_from_parents(Decomposition::from_parents({kNoVertex})), order_of({0}));
  // Chain a -> b -> c with a the root.
  EXPECT_EQ(ordering_from_parents(Decomposition::from_parents({kNoVertex, 0, 1})), order_of({0, 1, 2}));
}

TEST(OrderingFromParents, RejectsCycles) {
  EXPECT_THROW(ordering_from_parents(Decomposition::unchecked({1, 2, 0}, 3)), StructuralError);
}

TEST(OrderingFromParents, ParentsPrecedeChildren) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto d = Decomposition::from_parents(testing::random_forest(30, rng));
    auto o = ordering_from_parents(d);
    for (Vertex v = 0; v < 30; ++v)
      if (!d.is_root(v)) {
        EXPECT_TRUE(o.before(d.parent(v), v));
      }
  }
}

TEST(BuildFromOrdering, Examples) {
  auto p3 = path_graph(3);  // a=0, b=1, c=2
  auto mid = build_from_ordering(p3, order_of({1, 0, 2}));
  EXPECT_EQ(std::vector<Vertex>(mid.parents().begin(), mid.parents().end()), (std::vector<Vertex>{1, kNoVertex, 1}));
  EXPECT_EQ(mid.depth(), 2);

  auto chain = build_from_ordering(p3, order_of({0, 1, 2}));
  EXPECT_EQ(std::vector<Vertex>(chain.parents().begin(), chain.parents().end()), (std::vector<Vertex>{kNoVertex, 0, 1}));
  EXPECT_EQ(chain.depth(), 3);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 6; ++trial)
    EXPECT_EQ(build_from_ordering(complete_graph(3), testing::random_ordering(3, rng)).depth(), 3);
}

TEST(BuildFromOrdering, DisconnectedGraphGivesForest) {
  auto g = Graph::from_edges(5, {{0, 1}, {3, 4}});
  auto d = build_from_ordering(g, Ordering::identity(5));
  EXPECT_EQ(d.roots(), (std::vector<Vertex>{0, 2, 3}));
  EXPECT_EQ(d.depth(), 2);
}

TEST(VerifyDecomposition, Examples) {
  // Built decompositions are valid.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing::random_graph(20, 0.2, rng);
    EXPECT_FALSE(verify_decomposition(g, build_from_ordering(g, testing::random_ordering(20, rng))));
  }
  // C4 under the chain 0 -> 1 -> 2 -> 3.
  auto chain = Decomposition::from_parents({kNoVertex, 0, 1, 2});
  EXPECT_FALSE(verify_decomposition(cycle_graph(4), chain));
  EXPECT_EQ(chain.depth(), 4);

  // K1,3 with every vertex a root.
  auto all_roots = Decomposition::from_parents({kNoVertex, kNoVertex, kNoVertex, kNoVertex});
  auto violation = verify_decomposition(star_graph(3), all_roots);
  ASSERT_TRUE(violation);
  EXPECT_EQ(violation->kind, Violation::Kind::NonAncestralEdge);
  EXPECT_EQ(violation->u, 0);
}

TEST(VerifyDecomposition, ReportsStructuralProblems) {
  auto g = path_graph(3);
  EXPECT_EQ(verify_decomposition(g, Decomposition::from_parents({kNoVertex, 0}))->kind, Violation::Kind::SizeMismatch);
  EXPECT_EQ(verify_decomposition(g, Decomposition::unchecked({kNoVertex, 7, 1}, 3))->kind,
            Violation::Kind::InvalidParent);
  EXPECT_EQ(verify_decomposition(g, Decomposition::unchecked({kNoVertex, 2, 1}, 3))->kind, Violation::Kind::Cycle);
  auto wrong_depth = verify_decomposition(g, Decomposition::unchecked({kNoVertex, 0, 1}, 2));
  ASSERT_TRUE(wrong_depth);
  EXPECT_EQ(wrong_depth->kind, Violation::Kind::DepthMismatch);
  EXPECT_EQ(wrong_depth->actual_depth, 3);
}

TEST(VerifyDecomposition, AgreesWithNaiveCheckerOnMutants) {
  std::mt19937_64 rng(8);
  int rejected = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Vertex n = 2 + static_cast<Vertex>(rng() % 9);
    auto g = testing::random_graph(n, 0.35, rng);
    auto d = build_from_ordering(g, testing::random_ordering(n, rng));
    auto parent = std::vector<Vertex>(d.parents().begin(), d.parents().end());
    Vertex v = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
    if (parent[v] != kNoVertex) {
      // Redirect to a random vertex outside v's subtree.
      std::vector<Vertex> choices;
      for (Vertex x = 0; x < n; ++x) {
        bool below = false;
        for (Vertex y = x; y != kNoVertex; y = parent[y]) below |= y == v;
        if (!below) choices.push_back(x);
      }
      parent[v] = choices[rng() % choices.size()];
    }
    auto mutant = Decomposition::from_parents(parent);
    bool naive = testing::naive_is_valid(g, mutant);
    EXPECT_EQ(!verify_decomposition(g, mutant), naive);
    rejected += !naive;
  }
  EXPECT_GT(rejected, 50);
}

TEST(Oracles, SReachExamples) {
  auto p3 = path_graph(3);
  EXPECT_EQ(oracle::sreach(p3, order_of({0, 1, 2}), 2), std::vector<Vertex>{1});
  EXPECT_EQ(oracle::sreach(p3, order_of({1, 0, 2}), 2), std::vector<Vertex>{1});
  // P4 a-b-c-d with L = <a, c, b, d>: b sees a and c directly.
  EXPECT_EQ(oracle::sreach(path_graph(4), order_of({0, 2, 1, 3}), 1), (std::vector<Vertex>{0, 2}));
}

TEST(Oracles, WReachExamples) {
  EXPECT_EQ(oracle::wreach(path_graph(3), order_of({0, 1, 2}), 2), (std::vector<Vertex>{0, 1}));
  std::mt19937_64 rng(6);
  auto g = testing::random_graph(8, 0.4, rng);
  auto o = testing::random_ordering(8, rng);
  EXPECT_TRUE(oracle::wreach(g, o, o[0]).empty());
  auto k3 = complete_graph(3);
  auto ko = order_of({2, 0, 1});
  EXPECT_EQ(oracle::wreach(k3, ko, 1), (std::vector<Vertex>{0, 2}));
}

TEST(Oracles, ExactTreedepthExamples) {
  EXPECT_EQ(oracle::exact_td(complete_graph(5)), 5);
  EXPECT_EQ(oracle::exact_td(path_graph(7)), 3);
  EXPECT_EQ(oracle::exact_td(cycle_graph(5)), 4);
  EXPECT_EQ(oracle::exact_td(cycle_graph(6)), 4);
  EXPECT_EQ(oracle::exact_td(Graph::from_edges(0, {})), 0);
  EXPECT_EQ(oracle::exact_td(Graph::from_edges(3, {})), 1);
  EXPECT_THROW(oracle::exact_td(path_graph(15)), std::invalid_argument);
}

TEST(BuildFromOrdering, MatchesReachabilityIdentities) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 150; ++trial) {
    Vertex n = 1 + static_cast<Vertex>(rng() % 11);
    auto g = testing::random_graph(n, 0.15 + 0.05 * (trial % 10), rng);
    auto o = testing::random_ordering(n, rng);
    auto d = build_from_ordering(g, o);
    int max_wreach = 0;
    for (Vertex v = 0; v < n; ++v) {
      auto w = oracle::wreach(g, o, v);
      max_wreach = std::max(max_wreach, static_cast<int>(w.size()) + 1);
      EXPECT_EQ(testing::ancestors(d, v), w);
      auto s = oracle::sreach(g, o, v);
      if (s.empty()) {
        EXPECT_TRUE(d.is_root(v));
      } else {
        auto latest = *std::max_element(s.begin(), s.end(), [&](Vertex a, Vertex b) { return o.before(a, b); });
        EXPECT_EQ(d.parent(v), latest);
      }
    }
    EXPECT_EQ(d.depth(), max_wreach);
  }
}

TEST(BuildFromOrdering, RoundTripNeverIncreasesDepth) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Vertex n = 2 + static_cast<Vertex>(rng() % 40);
    auto parent = testing::random_forest(n, rng);
    auto g = testing::graph_under_forest(parent, 0.5, rng);
    auto d = Decomposition::from_parents(parent);
    ASSERT_FALSE(verify_decomposition(g, d));
    EXPECT_LE(build_from_ordering(g, ordering_from_parents(d)).depth(), d.depth());
  }
}

TEST(BuildFromOrdering, MinimumOverAllOrderingsIsTreedepth) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    Vertex n = 1 + static_cast<Vertex>(rng() % 7);
    auto g = testing::random_connected_graph(n, 0.3, rng);
    std::vector<Vertex> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    int best = INT32_MAX;
    do best = std::min(best, build_from_ordering(g, Ordering(seq)).depth());
    while (std::next_permutation(seq.begin(), seq.end()));
    EXPECT_EQ(best, oracle::exact_td(g));
  }
}

}  // namespace
}  // namespace tdf
