#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tdf/tree_io.hpp"
#include "test_util.hpp"

namespace tdf {
namespace {

TEST(FormatTree, Examples) {
  EXPECT_EQ(format_tree(Decomposition::from_parents({kNoVertex})), "1\n0\n");
  // P3 rooted at the middle vertex.
  EXPECT_EQ(format_tree(Decomposition::from_parents({1, kNoVertex, 1})), "2\n2\n0\n2\n");
  EXPECT_EQ(format_tree(Decomposition::from_parents({kNoVertex, 0, 1})), "3\n0\n1\n2\n");
}

TEST(WriteTree, MatchesFormat) {
  std::ostringstream out;
  write_tree(Decomposition::from_parents({kNoVertex, 0}), out);
  EXPECT_EQ(out.str(), "2\n0\n1\n");
}

TEST(ParseTree, SkipsCommentsAndBlankLines) {
  auto d = parse_tree("c made by hand\n2\n\n2\n0\n2\n", 3);
  EXPECT_EQ(d, Decomposition::from_parents({1, kNoVertex, 1}));
}

TEST(ParseTree, RejectsBadInput) {
  EXPECT_THROW(parse_tree("", 1), ParseError);
  EXPECT_THROW(parse_tree("1\n0\n0\n", 1), ParseError);
  EXPECT_THROW(parse_tree("2\n0\n", 2), ParseError);
  EXPECT_THROW(parse_tree("2\n0\n3\n", 2), ParseError);
  EXPECT_THROW(parse_tree("2\n0\n1 1\n", 2), ParseError);
  EXPECT_THROW(parse_tree("x\n", 0), ParseError);
}

TEST(ParseTree, KeepsClaimedDepthForTheVerifier) {
  auto d = parse_tree("5\n0\n1\n", 2);
  EXPECT_EQ(d.depth(), 5);
  EXPECT_EQ(verify_decomposition(testing::path_graph(2), d)->kind, Violation::Kind::DepthMismatch);
}

TEST(ParseTree, RoundTripsRandomForests) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Vertex n = 1 + static_cast<Vertex>(rng() % 60);
    auto d = Decomposition::from_parents(testing::random_forest(n, rng, 0.2));
    auto back = parse_tree(format_tree(d), n);
    EXPECT_EQ(back, d);
    EXPECT_EQ(back.depth(), d.depth());
  }
}

}  // namespace
}  // namespace tdf
