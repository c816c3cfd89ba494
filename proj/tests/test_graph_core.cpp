#include <gtest/gtest.h>

#include "coarseforge/generators.hpp"
#include "coarseforge/graph_core.hpp"
#include "oracles.hpp"

using namespace coarseforge;

TEST(MetricGraph, RejectsBadInput) {
  EXPECT_THROW(MetricGraph(3, {{0, 0}, {1, 2}}), StructuralError);
  EXPECT_THROW(MetricGraph(3, {{0, 5}}), StructuralError);
  EXPECT_THROW(MetricGraph(4, {{0, 1}, {2, 3}}), StructuralError);
}

TEST(MetricGraph, DisconnectedMessageNamesVertices) {
  try {
    MetricGraph(4, {{0, 1}, {2, 3}});
    FAIL();
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(MetricGraph, DistancesMatchFloydWarshall) {
  for (std::uint64_t seed : {1u, 7u, 19u}) {
    const MetricGraph t = random_tree(60, seed);
    const auto d = oracle::floyd_warshall(t);
    for (Vertex x = 0; x < t.size(); ++x)
      for (Vertex y = 0; y < t.size(); ++y) ASSERT_EQ(t.dist(x, y), d[x][y]);
  }
  const MetricGraph c = cycle_graph(11);
  const auto d = oracle::floyd_warshall(c);
  for (Vertex x = 0; x < c.size(); ++x)
    for (Vertex y = 0; y < c.size(); ++y) ASSERT_EQ(c.dist(x, y), d[x][y]);
}

TEST(MetricGraph, CanonicalGeodesicIsShortestAndDeterministic) {
  const MetricGraph c = cycle_graph(8);
  const auto g = c.geodesic(0, 4);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0u);
  EXPECT_EQ(g.back(), 4u);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) EXPECT_TRUE(c.adjacent(g[i], g[i + 1]));
  // Ties go to the smaller neighbour id at every layer.
  EXPECT_EQ(g, (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_EQ(c.geodesic(3, 3), std::vector<Vertex>{3});
}

TEST(MetricGraph, IntervalTwoWays) {
  const MetricGraph c = cycle_graph(10);
  for (Vertex x = 0; x < 10; ++x)
    for (Vertex y = 0; y < 10; ++y) EXPECT_EQ(c.geodesic_interval(x, y), c.interval_by_dag(x, y));
  EXPECT_EQ(c.geodesic_interval(0, 5).size(), 10u);
  EXPECT_EQ(c.geodesic_interval(0, 3), (VertexSet{0, 1, 2, 3}));
}

TEST(MetricGraph, InducedSubgraph) {
  const MetricGraph p = path_graph(6);
  const MetricGraph s = p.induced({2, 3, 4});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.dist(0, 2), 2);
  EXPECT_THROW(p.induced({1, 3}), StructuralError);
}

TEST(SetMetrics, HausdorffAndNeighbourhood) {
  const MetricGraph p = path_graph(10);
  EXPECT_EQ(hausdorff(p, {0, 1, 2}, {5}), 5);
  EXPECT_EQ(hausdorff(p, {0, 9}, {0, 9}), 0);
  EXPECT_THROW(hausdorff(p, {}, {1}), ArgumentError);
  EXPECT_EQ(neighborhood(p, {4}, 2), (VertexSet{2, 3, 4, 5, 6}));
  EXPECT_EQ(set_diameter(p, {1, 3, 8}), 7);
  EXPECT_EQ(p.dist_to_set(0, {4, 7}), 4);
  EXPECT_EQ(p.diameter(), 9);
  EXPECT_EQ(p.eccentricity(4), 5);
}

TEST(Hyperbolicity, TreesAreZeroThin) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const HypReport h = hyperbolicity(random_tree(120, seed));
    EXPECT_EQ(h.delta_thin, 0) << "seed " << seed;
    EXPECT_TRUE(h.thin_exhaustive);
  }
}

TEST(Hyperbolicity, SixCycleFourPointAgainstBruteForce) {
  const MetricGraph c6 = cycle_graph(6);
  const HypReport h = hyperbolicity(c6);
  EXPECT_EQ(h.delta_4pt, oracle::four_point_delta(oracle::floyd_warshall(c6)));
  EXPECT_EQ(h.delta_4pt, 1.0);
  EXPECT_TRUE(h.four_point_exhaustive);
}

TEST(Hyperbolicity, CyclesFourPointAgainstBruteForce) {
  for (std::size_t n : {3u, 4u, 5u, 7u, 9u, 12u}) {
    const MetricGraph c = cycle_graph(n);
    EXPECT_EQ(hyperbolicity(c).delta_4pt, oracle::four_point_delta(oracle::floyd_warshall(c))) << "C" << n;
  }
}

TEST(Hyperbolicity, CycleThinTriangles) {
  // Canonical triangle on C8 with apex 0 and side [2, 6] through 3, 4, 5:
  // the midpoint 4 is two steps from both other sides.
  const MetricGraph c8 = cycle_graph(8);
  EXPECT_EQ(thin_defect(c8, 0, 2, 6), 2);
  EXPECT_EQ(four_point_defect(c8, 0, 2, 4, 6), 2.0);
  EXPECT_GE(hyperbolicity(c8).delta_thin, 2);
}

TEST(Hyperbolicity, ExhaustiveThinMatchesTripleScan) {
  // Every ordered triple, canonical sides, distances from Floyd-Warshall.
  auto scan = [](const MetricGraph& g) {
    const auto d = oracle::floyd_warshall(g);
    int worst = 0;
    for (Vertex z = 0; z < g.size(); ++z)
      for (Vertex x = 0; x < g.size(); ++x)
        for (Vertex y = 0; y < g.size(); ++y) {
          VertexSet sides = g.geodesic(z, x);
          for (Vertex v : g.geodesic(z, y)) sides.push_back(v);
          for (Vertex s : g.geodesic(x, y)) worst = std::max(worst, oracle::set_dist(d, s, sides));
        }
    return worst;
  };
  const CayleyBall grid = cayley_ball({{"a", "b"}, {{"ba", "ab"}, {"bA", "Ab"}, {"Ba", "aB"}, {"BA", "AB"}}, 4});
  const CayleyBall cactus = cayley_ball({{"a", "b"}, {{"aa", "A"}, {"AA", "a"}, {"bb", "B"}, {"BB", "b"}}, 3});
  for (const MetricGraph& g : {cycle_graph(9), cycle_graph(12), grid.graph, cactus.graph}) {
    const HypReport h = hyperbolicity(g);
    ASSERT_TRUE(h.thin_exhaustive);
    EXPECT_EQ(h.delta_thin, scan(g)) << g.size() << " vertices";
  }
}
