#include <gtest/gtest.h>

#include "coarseforge/coarse_geometry.hpp"
#include "coarseforge/generators.hpp"
#include "oracles.hpp"

using namespace coarseforge;

namespace {

VertexSet coset(const CayleyBall& b, const std::string& g, char letter) {
  VertexSet out;
  for (Vertex v = 0; v < b.graph.size(); ++v) {
    std::string w = b.words[v];
    // v lies in g<letter> iff g^-1 v is a power of the letter.
    const std::string h = b.rewriter.reduce(Rewriter::inverse(g) + w);
    bool power = true;
    for (char c : h) power = power && (c == letter || c == letter - 32);
    if (power) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Projection, PathAndCycle) {
  const MetricGraph p = path_graph(10);
  EXPECT_EQ(project(p, {3, 4, 5}, 8), VertexSet{5});
  EXPECT_EQ(project_canonical(p, {3, 7}, 5), 3u);
  EXPECT_EQ(project(p, {3, 7}, 5), (VertexSet{3, 7}));
  EXPECT_EQ(project_set(p, {4, 5}, {0, 9}), (VertexSet{4, 5}));
  const auto d = distances_to_set(p, {2, 6});
  EXPECT_EQ(d, (std::vector<int>{2, 1, 0, 1, 2, 1, 0, 1, 2, 3}));
}

TEST(Quasiconvexity, Gauges) {
  const MetricGraph c6 = cycle_graph(6);
  EXPECT_EQ(quasiconvexity_gauge(c6, {0, 3}), 1);
  EXPECT_EQ(quasiconvexity_gauge(c6, {0, 1, 2, 3}), 1);
  EXPECT_EQ(quasiconvexity_gauge(path_graph(8), {0, 7}), 3);
  const MetricGraph star = star_fixture(3, 4);
  EXPECT_EQ(quasiconvexity_gauge(star, star.subspaces().at("F1")), 0);
}

TEST(CoarseInclusion, Cases) {
  const MetricGraph p = path_graph(12);
  EXPECT_EQ(coarse_inclusion(p, {2, 3}, {0, 1, 2, 3, 4, 5}, 0), Inclusion::proper);
  EXPECT_EQ(coarse_inclusion(p, {2, 3}, {2, 4}, 1), Inclusion::holds);
  EXPECT_EQ(coarse_inclusion(p, {0, 11}, {5}, 3), Inclusion::neither);
  EXPECT_STREQ(to_string(Inclusion::proper), "proper");
  EXPECT_EQ(set_distance(p, {0, 1}, {6, 9}), 5);
}

TEST(SubspaceRef, Connectivity) {
  const MetricGraph p = path_graph(6);
  EXPECT_TRUE(make_subspace(p, "s", {3, 2, 4}).connected);
  const SubspaceRef gap = make_subspace(p, "g", {0, 2});
  EXPECT_FALSE(gap.connected);
  EXPECT_EQ(gap.vertices, (VertexSet{0, 2}));
  EXPECT_THROW(make_subspace(p, "e", {}), ArgumentError);
}

TEST(Cosets, FreeGroupAxesAgainstBruteForce) {
  const CayleyBall b = cayley_ball({{"a", "b"}, {}, 4});
  const VertexSet h = coset(b, "", 'a'), bh = coset(b, "b", 'a');
  EXPECT_EQ(h.size(), 9u);
  EXPECT_EQ(bh.size(), 7u);
  const auto d = oracle::bfs_all(b.graph);
  EXPECT_EQ(hausdorff(b.graph, h, bh), oracle::hausdorff(d, h, bh));
  EXPECT_EQ(hausdorff(b.graph, h, bh), 5);
  // Every point of bH projects onto the identity.
  EXPECT_EQ(project_set(b.graph, h, bh), VertexSet{0});
  EXPECT_EQ(quasiconvexity_gauge(b.graph, h), 0);
}

TEST(Quadrilateral, TreeHasNoViolations) {
  const CayleyBall b = cayley_ball({{"a", "b"}, {}, 5});
  const VertexSet h = coset(b, "", 'a');
  const Vertex a = Vertex(b.find("bab")), a2 = Vertex(b.find("aaBa"));
  const QuadrilateralResult q = check_quadrilateral(b.graph, h, a, a2, 0, 0);
  EXPECT_TRUE(q.violations.empty());
  EXPECT_EQ(q.b, 0u);
  EXPECT_EQ(q.b2, Vertex(b.find("aa")));
  EXPECT_EQ(q.interior, VertexSet{Vertex(b.find("a"))});
}

TEST(Quadrilateral, EvenCycleDetectsGap) {
  // On C12 with H = {0..4}, a = 0 and a' = 4 the interval is the arc itself.
  const MetricGraph c = cycle_graph(12);
  const QuadrilateralResult q = check_quadrilateral(c, {0, 1, 2, 3, 4}, 0, 4, 0, 0);
  EXPECT_TRUE(q.violations.empty());
}

TEST(ProjectionBounds, StarExhaustive) {
  const MetricGraph s = star_fixture(4, 5);
  const VertexSet all = all_vertices(s);
  for (const auto& [name, h] : s.subspaces()) {
    const MeasuredBound m = projection_lipschitz_defect(s, h, all, 0, 0);
    EXPECT_TRUE(m.violations.empty()) << name;
    EXPECT_EQ(m.bound, 0);
  }
  const MeasuredBound bs = behrstock_second(s, s.subspaces().at("I0"), s.subspaces().at("F2"), all, 0, 0);
  EXPECT_TRUE(bs.violations.empty());
  EXPECT_EQ(bs.measured, 0);
  const BehrstockFirst bf = behrstock_first(s, s.subspaces().at("F1"), s.subspaces().at("F2"), all, 0, 0);
  EXPECT_TRUE(bf.violations.empty());
  EXPECT_EQ(point_projection_diameter(s, s.subspaces().at("F1"), all), 0);
}

TEST(ProjectionBounds, CycleProjectionsAreFat) {
  const MetricGraph c = cycle_graph(10);
  // The antipode of the midpoint of {0,1,2} projects to both ends.
  EXPECT_EQ(point_projection_diameter(c, {0, 1, 2}, {6}), 2);
}
