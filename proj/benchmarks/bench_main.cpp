#include <benchmark/benchmark.h>

#include <memory>

#include "coarseforge/coning.hpp"
#include "coarseforge/deelect.hpp"
#include "coarseforge/generators.hpp"
#include "coarseforge/group_closure.hpp"
#include "coarseforge/hhs_verifier.hpp"

namespace cf = coarseforge;

namespace {

std::shared_ptr<const cf::CayleyBall> free_group(int r) {
  return std::make_shared<const cf::CayleyBall>(cf::cayley_ball({{"a", "b"}, {}, r}));
}

void BM_CayleyBall(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cf::cayley_ball({{"a", "b"}, {}, r}));
}
BENCHMARK(BM_CayleyBall)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

// Distance table build is part of the measured work: each iteration copies
// the graph, which starts with an empty cache.
void BM_ThinHyperbolicityTree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const cf::MetricGraph t = cf::random_tree(n, 1);
  cf::HypOptions opt;
  opt.samples = 0;
  for (auto _ : state) {
    const cf::MetricGraph g(t.size(), t.edges());
    benchmark::DoNotOptimize(cf::hyperbolicity(g, opt));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ThinHyperbolicityTree)->RangeMultiplier(2)->Range(64, 256)->Complexity()->Unit(benchmark::kMillisecond);

void BM_ConedGeodesics(benchmark::State& state) {
  auto ball = free_group(6);
  const cf::CosetFamily fam = cf::coset_family(ball, {{"a"}});
  const cf::ConedGraph cg(fam.host(), fam.members());
  const auto x = static_cast<cf::Vertex>(ball->find("bbb")), y = static_cast<cf::Vertex>(ball->find("aBBB"));
  for (auto _ : state) benchmark::DoNotOptimize(cf::coned_geodesics(cg, x, y, 64));
}
BENCHMARK(BM_ConedGeodesics)->Unit(benchmark::kMicrosecond);

void BM_GoodQuasiGeodesic(benchmark::State& state) {
  auto ball = free_group(6);
  const cf::CosetFamily fam = cf::coset_family(ball, {{"a"}});
  const cf::ConedGraph cg(fam.host(), fam.members());
  const auto x = static_cast<cf::Vertex>(ball->find("bbb")), y = static_cast<cf::Vertex>(ball->find("aBBB"));
  for (auto _ : state) benchmark::DoNotOptimize(cf::good_quasigeodesic(cg, x, y));
}
BENCHMARK(BM_GoodQuasiGeodesic)->Unit(benchmark::kMicrosecond);

void BM_ProxClosure(benchmark::State& state) {
  auto ball = free_group(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cf::prox_closure(ball, {{"a"}, {"b"}}));
}
BENCHMARK(BM_ProxClosure)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_VerifyAxioms(benchmark::State& state) {
  auto ball = free_group(static_cast<int>(state.range(0)));
  const cf::ClosureTrace t = cf::prox_closure(ball, {{"a"}});
  const cf::FactorFamily weak = cf::check_weak_factor_system(t.family.host(), t.family.members());
  const cf::HhsStructure s = cf::build_hhs(cf::promote(weak).family);
  for (auto _ : state) benchmark::DoNotOptimize(cf::verify_axioms(s));
}
BENCHMARK(BM_VerifyAxioms)->DenseRange(5, 6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
