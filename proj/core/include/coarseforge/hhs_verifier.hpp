#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coarseforge/coning.hpp"
#include "coarseforge/factor_systems.hpp"

namespace coarseforge {

/// Index set = family members plus the host as top element. CU for a member is
/// the member coned along the members strictly inside it; CU for the top is
/// the host coned along every member. Vertices of CU are the member's local ids.
class HhsStructure {
 public:
  HhsStructure(FactorFamily family);

  const FactorFamily& family() const { return family_; }
  const MetricGraph& host() const { return *family_.host; }
  const ConedGraph& top_cone() const { return *top_; }

  std::size_t size() const { return family_.members.size() + 1; }
  std::size_t top() const { return family_.members.size(); }
  const std::string& name(std::size_t u) const;
  const VertexSet& vertices(std::size_t u) const;  // global ids
  const ConedGraph& cone(std::size_t u) const;
  /// u nested in w (reflexive; everything is nested in the top).
  bool nested(std::size_t u, std::size_t w) const { return nested_[u][w]; }

  Vertex local(std::size_t u, Vertex global) const;
  /// pi_U(x) in local ids of CU.
  VertexSet pi(std::size_t u, Vertex x) const;
  /// Global vertex sets p_U(x), precomputed for every index and vertex.
  const VertexSet& proj(std::size_t u, Vertex x) const { return proj_[u][x]; }
  /// diam in CU of the union of two local sets.
  int d(std::size_t u, const VertexSet& a, const VertexSet& b) const;
  /// rho^V_W as a local set of CW, for V nested in W or V, W not nested either way.
  VertexSet rho(std::size_t v, std::size_t w) const;

 private:
  FactorFamily family_;
  std::shared_ptr<const ConedGraph> top_;
  VertexSet all_;
  std::vector<std::vector<bool>> nested_;
  std::vector<std::vector<VertexSet>> proj_;
};

struct LllRecord {
  double lambda = 0;        // smallest grid value passing every sample, 0 if none
  int E = 0;
  std::size_t samples = 0;
  std::size_t max_T = 0;    // most T_i used by one sample
  bool found = false;
};

struct UniquenessRow {
  int theta = 0;
  int T = 0;
};

struct AxiomReport {
  int delta = 0;
  int K = 0;
  int core_margin = 0;
  std::size_t core_size = 0;
  int lipschitz = 0;        // (a) max d_U over host edges
  int pi_diameter = 0;      // max diam of a projection
  int kappa0 = 0;           // (b)
  int Theta = 0;            // bounded projections, measured
  int Theta_bound = 0;      // 2B + xi + 2
  int rho_diameter = 0;
  int E_bgi = 0;            // (c)
  int bgi_bound = 0;        // max{8 delta + K, 2 delta + K + H}
  LllRecord lll;            // (d)
  std::vector<UniquenessRow> uniqueness;  // (e)
  int complexity = 0;       // (f)
  int delta_prime = 0;      // (g)
  int H_kr = 0;
  std::vector<int> delta_per_index;
  std::vector<Violation> violations;
};

struct VerifyOptions {
  std::uint64_t sample_budget = 2000;  // pairs per sampled check
  std::uint64_t lll_budget = 200;
  std::uint64_t seed = 1;
  int delta = -1;                       // thin delta of the host, measured when negative
  std::vector<int> theta_grid{1, 2, 4, 8};
  std::vector<double> lambda_grid{1, 2, 4, 8};
  Vertex base_point = 0;
};

/// Measures and checks the axioms. Throws ArgumentError if the budget is 0.
AxiomReport verify_axioms(const HhsStructure& s, const VerifyOptions& opt = {});

/// Builds the structure; throws ArgumentError unless the family passed the factor check.
HhsStructure build_hhs(const FactorFamily& family);

}  // namespace coarseforge
