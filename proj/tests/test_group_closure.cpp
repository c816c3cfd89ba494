#include <gtest/gtest.h>

#include <algorithm>
#include <memory>

#include "coarseforge/generators.hpp"
#include "coarseforge/group_closure.hpp"
#include "oracles.hpp"

using namespace coarseforge;

namespace {

std::shared_ptr<const CayleyBall> ball(PresentationSpec p) { return std::make_shared<const CayleyBall>(cayley_ball(p)); }
std::shared_ptr<const CayleyBall> f2(int r) { return ball({{"a", "b"}, {}, r}); }
std::shared_ptr<const CayleyBall> z(int r) { return ball({{"a"}, {}, r}); }

}  // namespace

TEST(SubgroupElements, Powers) {
  const Rewriter rw({"a", "b"}, {});
  const auto e = subgroup_elements(rw, {"a"}, 3);
  EXPECT_EQ(e.size(), 7u);
  const auto sq = subgroup_elements(rw, {"aa"}, 5);
  EXPECT_EQ(sq, (std::vector<std::string>{"", "aa", "AA", "aaaa", "AAAA"}));
  // Products such as abAB are found but lie beyond max_len.
  const auto two = subgroup_elements(rw, {"ab", "ba"}, 2);
  EXPECT_EQ(two.size(), 5u);
}

TEST(CosetFamily, FreeGroupAxisCosets) {
  const CosetFamily f = coset_family(f2(5), {{"a"}});
  // Cosets meeting the radius-2 ball: identity, then representatives of
  // length 1 and 2 ending in b or B.
  EXPECT_EQ(f.core, 2);
  EXPECT_EQ(f.cosets.size(), 9u);
  EXPECT_EQ(f.cosets[0].representative, "");
  EXPECT_EQ(f.cosets[0].subspace.vertices.size(), 11u);
  EXPECT_EQ(f.cosets[0].subspace.name, "H0:1");
  EXPECT_EQ(f.delta, 0);
  EXPECT_EQ(f.K, 0);
  EXPECT_EQ(f.xi_threshold, 1);
  for (const auto& c : f.cosets) EXPECT_TRUE(c.subspace.connected) << c.subspace.name;
  EXPECT_THROW(coset_family(f2(3), {{"aA"}}), ArgumentError);
}

TEST(CosetFamily, DeduplicatesEqualSubgroups) {
  const CosetFamily f = coset_family(z(10), {{"a"}, {"A"}});
  EXPECT_EQ(f.cosets.size(), 1u);
}

TEST(Proximal, AxesOfFreeGroupAreNotProximal) {
  const CosetFamily f = coset_family(f2(5), {{"a"}, {"b"}});
  EXPECT_TRUE(proximal_pairs(f).empty());
  const auto d = oracle::bfs_all(f.ball->graph);
  for (std::size_t i = 0; i < f.cosets.size(); ++i)
    for (std::size_t j = 0; j < f.cosets.size(); ++j)
      if (i != j) {
        ASSERT_LT(oracle::projection_diameter(d, f.cosets[i].subspace.vertices, f.cosets[j].subspace.vertices),
                  f.xi_threshold);
      }
}

TEST(Intersection, IntegerSubgroups) {
  const CosetFamily f = coset_family(z(30), {{"aa"}, {"aaa"}});
  // Even and odd cosets of <a^2> are proximal too; pick a mixed pair.
  const auto pairs = proximal_pairs(f);
  const auto mixed = std::find_if(pairs.begin(), pairs.end(), [&](const ProximalPair& p) {
    return f.cosets[p.i].subgroup != f.cosets[p.j].subgroup;
  });
  ASSERT_NE(mixed, pairs.end());
  const Intersection e = intersection_approx(f, mixed->i, mixed->j);
  ASSERT_EQ(e.generators.size(), 1u);
  EXPECT_EQ(e.generators[0].size(), 6u);
  EXPECT_TRUE(e.within_bound);
  EXPECT_THROW(intersection_approx(coset_family(f2(4), {{"a"}, {"b"}}), 0, 1), ArgumentError);
}

TEST(Closure, FreeGroupAxesStabiliseImmediately) {
  const ClosureTrace t = prox_closure(f2(5), {{"a"}, {"b"}});
  EXPECT_TRUE(t.stabilized);
  EXPECT_EQ(t.stabilized_at, 0);
  ASSERT_EQ(t.levels.size(), 1u);
  EXPECT_EQ(t.levels[0].proximal, 0u);
  EXPECT_TRUE(t.levels[0].added.empty());
}

TEST(Closure, IntegerSubgroupsCollapse) {
  const ClosureTrace t = prox_closure(z(30), {{"aa"}, {"aaa"}});
  EXPECT_TRUE(t.stabilized);
  EXPECT_EQ(t.levels.back().classes, 1u);
  for (const auto& l : t.levels) EXPECT_TRUE(l.violations.empty());
}

TEST(Height, MalnormalAxis) {
  const CayleyBall b = cayley_ball({{"a", "b"}, {}, 6});
  const HeightReport h = height_probe(b, {{"a"}}, 3, 3, 2);
  EXPECT_EQ(h.height, 1);
  EXPECT_GT(h.conjugates, 1u);
}

TEST(Height, AbelianSubgroup) {
  const CayleyBall b = cayley_ball({{"a", "b"}, {{"ba", "ab"}, {"bA", "Ab"}, {"Ba", "aB"}, {"BA", "AB"}}, 8});
  // In Z^2 every conjugate of <a> is <a> itself.
  const HeightReport h = height_probe(b, {{"a"}}, 3, 3, 2);
  EXPECT_EQ(h.conjugates, 1u);
  EXPECT_EQ(h.height, 1);
}
