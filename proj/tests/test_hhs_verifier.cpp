#include <gtest/gtest.h>

#include <memory>

#include "coarseforge/generators.hpp"
#include "coarseforge/group_closure.hpp"
#include "coarseforge/hhs_verifier.hpp"

using namespace coarseforge;

namespace {

FactorFamily star_family(int rays, int len) {
  auto s = std::make_shared<const MetricGraph>(star_fixture(rays, len));
  std::vector<SubspaceRef> ms;
  for (const auto& [n, v] : s->subspaces()) ms.push_back(make_subspace(*s, n, v));
  return check_factor_system(s, ms);
}

}  // namespace

TEST(HhsStructure, StarIndexSet) {
  const HhsStructure s = build_hhs(star_family(3, 4));
  // F1, F2, I0, then the host.
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.top(), 3u);
  EXPECT_EQ(s.name(3), "Gamma");
  EXPECT_EQ(s.name(2), "I0");
  EXPECT_TRUE(s.nested(2, 0));
  EXPECT_TRUE(s.nested(0, 3));
  EXPECT_TRUE(s.nested(1, 1));
  EXPECT_FALSE(s.nested(0, 1));
  EXPECT_EQ(s.vertices(3).size(), 13u);
  // The centre projects to itself on every member.
  for (std::size_t u = 0; u < 3; ++u) EXPECT_EQ(s.proj(u, 0), VertexSet{0});
  EXPECT_EQ(s.local(0, 0), 0u);
}

TEST(HhsStructure, RhoOfNestedPair) {
  const HhsStructure s = build_hhs(star_family(3, 4));
  // rho^{I0}_{F1} is I0 in the local ids of F1.
  const VertexSet r = s.rho(2, 0);
  EXPECT_EQ(r.size(), 5u);
  const VertexSet t = s.rho(0, 1);  // p_{F1}(F2) is the ray I0 with the centre
  EXPECT_EQ(t.size(), 5u);
}

TEST(VerifyAxioms, StarHasNoViolations) {
  const HhsStructure s = build_hhs(star_family(4, 5));
  const AxiomReport r = verify_axioms(s);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.complexity, 3);
  EXPECT_EQ(r.delta, 0);
  EXPECT_EQ(r.lipschitz, 1);
  ASSERT_EQ(r.uniqueness.size(), 4u);
  for (std::size_t i = 1; i < r.uniqueness.size(); ++i) EXPECT_LE(r.uniqueness[i - 1].T, r.uniqueness[i].T);
  EXPECT_TRUE(r.lll.found);
}

TEST(VerifyAxioms, EmptyFamilyIsVacuous) {
  auto p = std::make_shared<const MetricGraph>(path_graph(9));
  const HhsStructure s = build_hhs(check_factor_system(p, {}));
  const AxiomReport r = verify_axioms(s);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.kappa0, 0);
  EXPECT_EQ(r.complexity, 1);
  // With only the host, T_theta is the smallest distance whose pairs are theta apart.
  EXPECT_EQ(r.uniqueness.front().T, 1);
}

TEST(VerifyAxioms, RejectsBadInput) {
  const HhsStructure s = build_hhs(star_family(3, 3));
  VerifyOptions opt;
  opt.sample_budget = 0;
  EXPECT_THROW(verify_axioms(s, opt), ArgumentError);
  auto st = std::make_shared<const MetricGraph>(star_fixture(3, 3));
  FactorFamily weak = check_weak_factor_system(st, {make_subspace(*st, "I0", st->subspaces().at("I0"))});
  EXPECT_THROW(build_hhs(weak), ArgumentError);
}

TEST(VerifyAxioms, FreeGroupPromotedAxis) {
  auto ball = std::make_shared<const CayleyBall>(cayley_ball({{"a", "b"}, {}, 4}));
  const ClosureTrace t = prox_closure(ball, {{"a"}});
  const FactorFamily weak = check_weak_factor_system(t.family.host(), t.family.members());
  ASSERT_TRUE(weak.passed());
  const Promotion p = promote(weak);
  ASSERT_TRUE(p.family.passed());
  const AxiomReport r = verify_axioms(build_hhs(p.family));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.complexity, 2);
  EXPECT_EQ(r.Theta_bound, 2 * p.family.constants.B + p.family.constants.xi + 2);
  EXPECT_LE(r.Theta, r.Theta_bound);
}
