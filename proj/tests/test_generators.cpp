#include <gtest/gtest.h>

#include "coarseforge/generators.hpp"
#include "oracles.hpp"

using namespace coarseforge;

namespace {

PresentationSpec free_group(int radius) { return {{"a", "b"}, {}, radius}; }

PresentationSpec z2(int radius) {
  return {{"a", "b"}, {{"ba", "ab"}, {"bA", "Ab"}, {"Ba", "aB"}, {"BA", "AB"}}, radius};
}

}  // namespace

TEST(Rewriter, FreeReductionsAreImplicit) {
  const Rewriter rw({"a", "b"}, {});
  EXPECT_EQ(rw.reduce("aAbBa"), "a");
  EXPECT_EQ(rw.reduce("abBA"), "");
  EXPECT_EQ(Rewriter::inverse("abB"), "bBA");
  EXPECT_EQ(rw.multiply("ab", "Ba"), "aa");
  EXPECT_EQ(rw.alphabet(), "aAbB");
}

TEST(Rewriter, ShortlexOrder) {
  const Rewriter rw({"a", "b"}, {});
  EXPECT_TRUE(rw.shortlex_less("b", "aa"));
  EXPECT_TRUE(rw.shortlex_less("a", "A"));
  EXPECT_TRUE(rw.shortlex_less("Ab", "ba"));
  EXPECT_FALSE(rw.shortlex_less("ab", "ab"));
}

TEST(Rewriter, RejectsNonReducingRules) {
  EXPECT_THROW(Rewriter({"a"}, {{"a", "aa"}}), ArgumentError);
  EXPECT_THROW(Rewriter({"a"}, {{"ab", "a"}}), ArgumentError);
  EXPECT_THROW(Rewriter({"A"}, {}), ArgumentError);
}

TEST(Rewriter, FreeProductOfThreeCyclesIsConfluent) {
  const Rewriter rw({"a", "b"}, {{"aa", "A"}, {"AA", "a"}, {"bb", "B"}, {"BB", "b"}});
  EXPECT_EQ(rw.reduce("aaa"), "");
  EXPECT_EQ(rw.reduce("abba"), "aBa");
  EXPECT_NO_THROW(rw.check_confluence());
}

TEST(Rewriter, ConfluenceCheckCatchesDisagreement) {
  // ab -> b and ba -> a overlap on "aba" and leave "b" vs "a".
  const Rewriter rw({"a", "b"}, {{"ab", "b"}, {"ba", "a"}});
  try {
    rw.check_confluence();
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("'aba'"), std::string::npos) << e.what();
  }
}

TEST(Rewriter, AbelianRulesAreConfluent) {
  const Rewriter rw({"a", "b"}, {{"ba", "ab"}, {"bA", "Ab"}, {"Ba", "aB"}, {"BA", "AB"}});
  EXPECT_NO_THROW(rw.check_confluence());
  // Missing BA -> AB leaves BAa with two normal forms.
  const Rewriter partial({"a", "b"}, {{"ba", "ab"}, {"bA", "Ab"}, {"Ba", "aB"}});
  EXPECT_THROW(partial.check_confluence(), StructuralError);
}

TEST(CayleyBall, FreeGroupSizes) {
  // 1 + 4 (3^r - 1) / 2 vertices; a tree.
  for (int r : {0, 1, 2, 3, 6}) {
    const CayleyBall b = cayley_ball(free_group(r));
    int expect = 1;
    for (int i = 0, layer = 4; i < r; ++i, layer *= 3) expect += layer;
    EXPECT_EQ(b.graph.size(), static_cast<std::size_t>(expect)) << "radius " << r;
    EXPECT_TRUE(b.graph.is_tree());
  }
  EXPECT_EQ(cayley_ball(free_group(2)).graph.size(), 17u);
}

TEST(CayleyBall, WordsAndDistances) {
  const CayleyBall b = cayley_ball(free_group(4));
  EXPECT_EQ(b.words[0], "");
  const auto a3 = b.find("aaa"), A3 = b.find("AAA");
  ASSERT_GE(a3, 0);
  ASSERT_GE(A3, 0);
  EXPECT_EQ(b.graph.dist(Vertex(a3), Vertex(A3)), 6);
  EXPECT_EQ(b.find("aaaaa"), -1);
  EXPECT_EQ(b.find("abBa"), b.find("aa"));
  for (Vertex v = 0; v < b.graph.size(); ++v) EXPECT_EQ(b.graph.dist(0, v), int(b.words[v].size()));
}

TEST(CayleyBall, CommutingGeneratorsGiveGrid) {
  const CayleyBall b = cayley_ball(z2(2));
  EXPECT_EQ(b.graph.size(), 13u);
  EXPECT_EQ(b.graph.diameter(), 4);
  EXPECT_EQ(b.find("ba"), b.find("ab"));
  const auto d = oracle::floyd_warshall(b.graph);
  EXPECT_EQ(d[0][Vertex(b.find("aB"))], 2);
}

TEST(CayleyBall, ThreeCycleCactus) {
  const CayleyBall b = cayley_ball({{"a", "b"}, {{"aa", "A"}, {"AA", "a"}, {"bb", "B"}, {"BB", "b"}}, 3});
  // Layers 1, 4, 8, 16: normal forms alternate a-syllables and b-syllables.
  EXPECT_EQ(b.graph.size(), 29u);
  EXPECT_EQ(b.graph.dist(Vertex(b.find("a")), Vertex(b.find("A"))), 1);
}

TEST(ApproximationGraph, PathNet) {
  const ApproxGraph ag = approximation_graph(path_graph(21), 2);
  EXPECT_EQ(ag.zeta, 2);
  EXPECT_EQ(ag.lambda, 10);
  EXPECT_TRUE(ag.bounds_hold);
  // Greedy net from 0 keeping points at least zeta apart.
  EXPECT_EQ(ag.net, (std::vector<Vertex>{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20}));
  EXPECT_EQ(ag.omega[5], 2u);
  EXPECT_EQ(ag.graph.dist(ag.omega[0], ag.omega[20]), 2);
}

TEST(Fixtures, StarLayout) {
  const MetricGraph s = star_fixture(4, 6);
  EXPECT_EQ(s.size(), 25u);
  EXPECT_TRUE(s.is_tree());
  ASSERT_EQ(s.subspaces().size(), 4u);
  EXPECT_EQ(s.subspaces().at("I0").size(), 7u);
  EXPECT_EQ(s.subspaces().at("F1").size(), 13u);
  EXPECT_TRUE(is_subset(s.subspaces().at("I0"), s.subspaces().at("F3")));
}

TEST(Fixtures, RandomTreeIsSeeded) {
  const MetricGraph a = random_tree(50, 3), b = random_tree(50, 3), c = random_tree(50, 4);
  EXPECT_TRUE(a.is_tree());
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_NE(a.edges(), c.edges());
  EXPECT_EQ(path_graph(5).diameter(), 4);
  EXPECT_EQ(cycle_graph(7).diameter(), 3);
}
