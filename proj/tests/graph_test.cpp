#include <gtest/gtest.h>

#include <random>

#include "tdf/graph.hpp"
#include "tdf/oracles.hpp"
#include "test_util.hpp"

namespace tdf {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::path_graph;
using testing::star_graph;

TEST(ParseGr, ReadsHeaderAndEdges) {
  auto g = parse_gr("p tdp 3 2\n1 2\n2 3\n");
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(ParseGr, SkipsCommentsAndDeduplicates) {
  auto g = parse_gr("c hi\np tdp 2 1\n1 2\n2 1\n");
  EXPECT_EQ(g.num_vertices(), 2);
  EXPECT_EQ(g.num_edges(), 1);
}

TEST(ParseGr, ToleratesOtherDescriptorsAndCrlf) {
  auto g = parse_gr("p tw 3 1\r\n\r\n3 1\r\n");
  EXPECT_EQ(g.num_edges(), 1);
  EXPECT_TRUE(g.adjacent(0, 2));
}

TEST(ParseGr, RejectsOutOfRangeVertexWithLine) {
  try {
    parse_gr("p tdp 2 1\n1 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_STREQ(e.what(), "vertex out of range, line 2");
  }
}

TEST(ParseGr, RejectsSelfLoopsAndMalformedInput) {
  EXPECT_THROW(parse_gr("p tdp 2 1\n2 2\n"), ParseError);
  EXPECT_THROW(parse_gr("p tdp x 1\n"), ParseError);
  EXPECT_THROW(parse_gr("1 2\n"), ParseError);
  EXPECT_THROW(parse_gr("c only a comment\n"), ParseError);
  EXPECT_THROW(parse_gr("p tdp 3 1\n1 2 3\n"), ParseError);
}

TEST(ParseGr, SerializingEdgesAndReparsingIsIdempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing::random_graph(12, 0.3, rng);
    std::string text = "p tdp " + std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
    for (auto [u, v] : g.edges()) text += std::to_string(v + 1) + " " + std::to_string(u + 1) + "\n";
    EXPECT_EQ(parse_gr(text), g);
  }
}

TEST(Graph, AdjacencyIsSortedSymmetricAndSimple) {
  std::mt19937_64 rng(3);
  auto g = testing::random_graph(30, 0.2, rng);
  std::size_t total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    total += nb.size();
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    for (Vertex w : nb) {
      EXPECT_NE(w, v);
      EXPECT_TRUE(g.adjacent(w, v));
    }
  }
  EXPECT_EQ(total, 2 * static_cast<std::size_t>(g.num_edges()));
}

TEST(Components, Examples) {
  EXPECT_EQ(components(path_graph(3)), (std::vector<std::vector<Vertex>>{{0, 1, 2}}));
  EXPECT_EQ(components(Graph::from_edges(3, {})), (std::vector<std::vector<Vertex>>{{0}, {1}, {2}}));
  EXPECT_EQ(components(Graph::from_edges(4, {{0, 1}, {2, 3}})), (std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}}));
}

TEST(Components, FormAPartitionWithNoCrossingEdges) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = testing::random_graph(25, 0.06, rng);
    auto comps = components(g);
    std::vector<int> owner(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (Vertex v : comps[i]) {
        ASSERT_EQ(owner[v], -1);
        owner[v] = static_cast<int>(i);
      }
    for (int o : owner) EXPECT_GE(o, 0);
    for (auto [u, v] : g.edges()) EXPECT_EQ(owner[u], owner[v]);
    for (std::size_t i = 1; i < comps.size(); ++i) EXPECT_LT(comps[i - 1].front(), comps[i].front());
  }
}

TEST(InducedSubgraph, Examples) {
  auto c4 = cycle_graph(4);
  std::vector<Vertex> three{0, 1, 2};
  auto [p3, map] = induced_subgraph(c4, three);
  EXPECT_EQ(p3.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(map.original_of, three);

  auto [empty, empty_map] = induced_subgraph(c4, std::vector<Vertex>{});
  EXPECT_TRUE(empty.empty());

  std::vector<Vertex> all{0, 1, 2, 3};
  auto [same, identity] = induced_subgraph(c4, all);
  EXPECT_EQ(same, c4);
  EXPECT_EQ(identity.original_of, all);
}

TEST(InducedSubgraph, PreservesAdjacencyAndComposes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing::random_graph(20, 0.3, rng);
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (rng() % 2) vs.push_back(v);
    auto [sub, map] = induced_subgraph(g, vs);
    for (Vertex a = 0; a < sub.num_vertices(); ++a)
      for (Vertex b = 0; b < sub.num_vertices(); ++b)
        if (a != b) {
          EXPECT_EQ(sub.adjacent(a, b), g.adjacent(map.to_parent(a), map.to_parent(b)));
        }

    std::vector<Vertex> half;
    for (Vertex v = 0; v < sub.num_vertices(); v += 2) half.push_back(v);
    auto [inner, inner_map] = induced_subgraph(sub, half);
    auto composed = inner_map.compose(map);
    for (Vertex a = 0; a < inner.num_vertices(); ++a)
      for (Vertex b = 0; b < inner.num_vertices(); ++b)
        if (a != b) {
          EXPECT_EQ(inner.adjacent(a, b), g.adjacent(composed.to_parent(a), composed.to_parent(b)));
        }
  }
}

TEST(Degeneracy, Examples) {
  EXPECT_EQ(degeneracy(complete_graph(4)), 3);
  EXPECT_EQ(degeneracy(path_graph(5)), 1);
  EXPECT_EQ(degeneracy(cycle_graph(5)), 2);
  EXPECT_EQ(degeneracy(Graph::from_edges(3, {})), 0);
  EXPECT_EQ(degeneracy(testing::grid_graph(4, 4)), 2);
}

TEST(Degeneracy, MatchesQuadraticPeeling) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = testing::random_graph(30, 0.05 + 0.02 * (trial % 10), rng);
    std::vector<char> gone(30, 0);
    int expected = 0;
    for (int step = 0; step < 30; ++step) {
      Vertex pick = kNoVertex;
      int pick_deg = INT32_MAX;
      for (Vertex v = 0; v < 30; ++v) {
        if (gone[v]) continue;
        int d = 0;
        for (Vertex w : g.neighbors(v)) d += !gone[w];
        if (d < pick_deg) pick = v, pick_deg = d;
      }
      expected = std::max(expected, pick_deg);
      gone[pick] = 1;
    }
    EXPECT_EQ(degeneracy(g), expected);
  }
}

TEST(DfsLongestPath, Examples) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int p = dfs_longest_path(path_graph(5), seed);
    EXPECT_GE(p, 3);
    EXPECT_LE(p, 5);
    EXPECT_EQ(dfs_longest_path(complete_graph(4), seed), 4);
    EXPECT_EQ(dfs_longest_path(Graph::from_edges(1, {}), seed), 1);
  }
  // Some seed starts at an endpoint and walks the whole path.
  int best = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) best = std::max(best, dfs_longest_path(path_graph(5), seed));
  EXPECT_EQ(best, 5);
}

TEST(TdLowerBound, Examples) {
  EXPECT_EQ(td_lower_bound(complete_graph(10), 0), 10);
  EXPECT_EQ(td_lower_bound(star_graph(4), 0), 2);
  int best = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int lb = td_lower_bound(path_graph(7), seed);
    EXPECT_LE(lb, 3);
    best = std::max(best, lb);
  }
  EXPECT_EQ(best, 3);
  EXPECT_EQ(oracle::exact_td(star_graph(4)), 2);
}

TEST(TdLowerBound, NeverExceedsExactTreedepth) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    Vertex n = 1 + static_cast<Vertex>(rng() % 8);
    auto g = testing::random_graph(n, 0.1 + 0.1 * (trial % 8), rng);
    int exact = oracle::exact_td(g);
    for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_LE(td_lower_bound(g, seed), exact);
  }
}

}  // namespace
}  // namespace tdf
