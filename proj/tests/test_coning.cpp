#include <gtest/gtest.h>

#include <memory>

#include "coarseforge/coning.hpp"
#include "coarseforge/generators.hpp"
#include "coarseforge/group_closure.hpp"
#include "oracles.hpp"

using namespace coarseforge;

namespace {

struct F2Cosets {
  std::shared_ptr<const CayleyBall> ball;
  std::shared_ptr<const ConedGraph> cg;
};

F2Cosets f2_cosets(int radius) {
  auto ball = std::make_shared<const CayleyBall>(cayley_ball({{"a", "b"}, {}, radius}));
  const CosetFamily fam = coset_family(ball, {{"a"}});
  return {ball, std::make_shared<const ConedGraph>(fam.host(), fam.members())};
}

Vertex at(const CayleyBall& b, const std::string& w) {
  const auto v = b.find(w);
  if (v < 0) throw std::runtime_error("word outside ball: " + w);
  return Vertex(v);
}

}  // namespace

TEST(ConedGraph, PathWithOneMember) {
  auto p = std::make_shared<const MetricGraph>(path_graph(8));
  const ConedGraph cg(p, {make_subspace(*p, "mid", {2, 3, 4, 5})});
  EXPECT_EQ(cg.dist_hat(0, 7), 5);
  EXPECT_EQ(cg.dist_hat(2, 5), 1);
  EXPECT_EQ(cg.step_label(2, 5), 0);
  EXPECT_EQ(cg.step_label(2, 3), kNoLabel);
  EXPECT_EQ(cg.step_label(0, 7), -2);
  EXPECT_EQ(cg.cone_edges().size(), 3u);  // 2-4, 2-5, 3-5
  EXPECT_EQ(cg.memberships(3), std::vector<int>{0});
  EXPECT_TRUE(cg.memberships(0).empty());
}

TEST(ConedGraph, ConedDistanceAgainstBruteForce) {
  const F2Cosets f = f2_cosets(4);
  const auto d = oracle::bfs_all(f.cg->coned());
  const auto& b = *f.ball;
  EXPECT_EQ(f.cg->dist_hat(at(b, "aaa"), at(b, "baaa")), 3);
  EXPECT_EQ(d[at(b, "aaa")][at(b, "baaa")], 3);
  EXPECT_EQ(f.cg->dist_hat(at(b, "aaaa"), at(b, "AAAA")), 1);
  EXPECT_EQ(f.cg->dist_hat(0, at(b, "bbbb")), 4);
}

TEST(ConedGraph, NestedMembers) {
  auto s = std::make_shared<const MetricGraph>(star_fixture(3, 3));
  std::vector<SubspaceRef> fam;
  for (const auto& [n, v] : s->subspaces()) fam.push_back(make_subspace(*s, n, v));
  const ConedGraph cg(s, fam);
  // Order: F1, F2, I0.
  EXPECT_EQ(cg.family()[2].name, "I0");
  EXPECT_EQ(cg.nested_in(0), std::vector<int>{2});
  EXPECT_TRUE(cg.nested_in(2).empty());
  EXPECT_EQ(cg.member_graph(0).size(), 7u);
  EXPECT_EQ(cg.member_cone(0).family().size(), 1u);
  EXPECT_EQ(cg.member_coqc(0), 0);
}

TEST(ConedPaths, ValidationAndGeodesic) {
  auto p = std::make_shared<const MetricGraph>(path_graph(8));
  const ConedGraph cg(p, {make_subspace(*p, "mid", {2, 3, 4, 5})});
  EXPECT_THROW(make_coned_path(cg, {0, 2}), ArgumentError);
  const VPath g = coned_geodesic(cg, 0, 7);
  EXPECT_EQ(g.host, Host::coned);
  EXPECT_EQ(g.length(), 5u);
  EXPECT_EQ(g.vertices, (std::vector<Vertex>{0, 1, 2, 5, 6, 7}));
  EXPECT_EQ(g.step_labels, (std::vector<int>{kNoLabel, kNoLabel, 0, kNoLabel, kNoLabel}));
}

TEST(DeElectrification, TotalReplacesConeEdges) {
  auto p = std::make_shared<const MetricGraph>(path_graph(8));
  const ConedGraph cg(p, {make_subspace(*p, "mid", {2, 3, 4, 5})});
  const VPath g = coned_geodesic(cg, 0, 7);
  const VPath t = de_electrify(cg, g);
  EXPECT_EQ(t.host, Host::base);
  EXPECT_EQ(t.vertices, (std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7}));
  ASSERT_EQ(t.pieces.size(), 3u);
  EXPECT_EQ(t.pieces[1].label, 0);
  EXPECT_EQ(t.pieces[1].begin, 2u);
  EXPECT_EQ(t.pieces[1].end, 5u);
  const DeElectMap m = total_deelectrification(cg, g);
  EXPECT_EQ(m.coned_pos, (std::vector<std::size_t>{0, 1, 2, 5, 6, 7}));
}

TEST(DeElectrification, EmbeddedStaysInMember) {
  // Cycle C8 with member {0..5}: the base geodesic 0-7-6-5 leaves the member,
  // the embedded one does not.
  auto c = std::make_shared<const MetricGraph>(cycle_graph(8));
  const ConedGraph cg(c, {make_subspace(*c, "arc", {0, 1, 2, 3, 4, 5})});
  const VPath g = make_coned_path(cg, {0, 5});
  const VPath total = de_electrify(cg, g, {DeElectMode::total});
  const VPath emb = de_electrify(cg, g, {DeElectMode::embedded});
  EXPECT_EQ(total.length(), 3u);
  EXPECT_EQ(emb.vertices, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
}

TEST(Interruption, PassesThroughChosenPoint) {
  auto p = std::make_shared<const MetricGraph>(path_graph(10));
  const ConedGraph cg(p, {make_subspace(*p, "m", {1, 2, 3, 4, 5, 6, 7, 8})});
  const VPath g = make_coned_path(cg, {0, 1, 8, 9});
  const VPath out = interrupt(cg, g, {4});
  EXPECT_NE(std::find(out.vertices.begin(), out.vertices.end(), 4u), out.vertices.end());
  EXPECT_LE(out.length(), g.length() + 1);
  EXPECT_THROW(interrupt(cg, g, {0}), ArgumentError);
}

TEST(Coqc, CosetsOfTheAxis) {
  const F2Cosets f = f2_cosets(4);
  for (const auto& m : f.cg->family()) EXPECT_EQ(coqc_gauge(*f.cg, m.vertices), 0) << m.name;
  // Two far points coned together; the middle of the base geodesic stays far.
  auto p = std::make_shared<const MetricGraph>(path_graph(9));
  const ConedGraph cg(p, {make_subspace(*p, "ends", {0, 8})});
  EXPECT_EQ(coqc_gauge(cg, {0, 8}), 4);
}

TEST(Pigeonhole, FreeGroupSmall) {
  const F2Cosets f = f2_cosets(4);
  const auto geos = coned_geodesics(*f.cg, at(*f.ball, "bbb"), at(*f.ball, "BBB"), 8);
  ASSERT_FALSE(geos.empty());
  EXPECT_EQ(geos.front().vertices, coned_geodesic(*f.cg, at(*f.ball, "bbb"), at(*f.ball, "BBB")).vertices);
  for (int theta : {2, 3}) {
    const PigeonholeReport r = pigeonhole_check(*f.cg, theta, all_vertices(f.ball->graph), 8);
    EXPECT_EQ(r.threshold, 2 * theta * theta);
    // Diameter 8 leaves pairs only for theta = 2.
    EXPECT_EQ(r.pairs_checked > 0, theta == 2);
    EXPECT_TRUE(r.violations.empty()) << "theta " << theta;
  }
}

TEST(NineteenPieces, FreeGroupSmall) {
  const F2Cosets f = f2_cosets(4);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 1; v < f.ball->graph.size(); v += 7) pairs.emplace_back(0, v);
  const NineteenReport r = nineteen_pieces_check(*f.cg, 0, pairs);
  EXPECT_EQ(r.pairs, pairs.size());
  EXPECT_EQ(r.xi, 1);
  EXPECT_TRUE(r.violations.empty());
}
