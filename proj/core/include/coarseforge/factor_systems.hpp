#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coarseforge/coarse_geometry.hpp"
#include "coarseforge/graph_core.hpp"

namespace coarseforge {

enum class FamilyKind { factor, weak, geodesic_weak, unverified };
const char* to_string(FamilyKind k);

struct FamilyConstants {
  int delta = 0;
  int K = 0;         // max quasiconvexity gauge of the members
  double qi = 1;     // induced metric <= qi * (ambient + 1)
  int c = 0;         // longest strict (or proper coarse) inclusion chain, counted in members
  int xi = 0;
  int B = 0;
  int q = 1;
  int d_prime = 0;
  int R_used = 0;    // Hausdorff threshold standing in for "finite Hausdorff distance"
};

struct ItemResult {
  std::string item;
  bool pass = true;
  double measured = 0;
  std::vector<Violation> violations;
};

struct FactorFamily {
  std::shared_ptr<const MetricGraph> host;
  std::vector<SubspaceRef> members;
  FamilyConstants constants;
  FamilyKind kind = FamilyKind::unverified;
  std::vector<ItemResult> items;

  bool passed() const;
  std::vector<Violation> violations() const;
};

struct FactorOptions {
  int delta = -1;   // measured when negative
  int xi = -1;      // 8 delta + 2K + 1 when negative
  int R_used = -1;  // 2K + 8 delta + 2 when negative
};

/// Items 1-5 of the factor-system definition with minimal passing constants.
/// B is the least value making item 2 hold; item 3 is then checked at that B.
FactorFamily check_factor_system(std::shared_ptr<const MetricGraph> host, std::vector<SubspaceRef> members,
                                 const FactorOptions& opt = {});

struct WeakOptions {
  int delta = -1;
  int xi = -1;
  int R_used = -1;
  int d_prime = -1;        // 2 delta + K when negative
  int theta_max = 1 << 14;
  Vertex base_point = 0;   // room(v) = ecc(base_point) - (spacing(V) - 1) - d(base_point, v)
};

/// Weak-factor-system items 1, 2 and the geodesic form of item 3, truncated to
/// theta <= min(theta_max, room(v)). Item-3 failures carry witnesses (v, theta).
FactorFamily check_weak_factor_system(std::shared_ptr<const MetricGraph> host, std::vector<SubspaceRef> members,
                                      const WeakOptions& opt = {});

/// Q together with every vertex on any geodesic between two points of Q at distance <= r.
VertexSet approx_r(const MetricGraph& g, const VertexSet& q, int r);

struct EquivClasses {
  std::vector<std::vector<std::size_t>> classes;  // member indices, ascending; classes ordered by first member
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representative;        // first member of each class
  int R_used = 0;
  int max_intra_hausdorff = 0;
  bool closure_flagged = false;                   // transitive closure merged pairs farther than R_used
  std::vector<std::vector<bool>> below;           // below[i][j]: [i] is coarsely below [j]
  bool antisymmetric = true;
};

EquivClasses equivalence_classes(const MetricGraph& g, const std::vector<SubspaceRef>& members, int r);

struct PromotedMember {
  SubspaceRef member;
  int zeta_requested = 0;
  int zeta_used = 0;         // raised until the thickening is connected
  int max_hausdorff = 0;     // max over the class of d_Haus(V, P)
  bool within_zeta = true;
};

PromotedMember build_P(const MetricGraph& g, const std::vector<SubspaceRef>& members, const EquivClasses& ec,
                       std::size_t class_id, int zeta);

struct Promotion {
  EquivClasses classes;
  std::vector<PromotedMember> promoted;
  FactorFamily family;  // factor check on the promoted members
  std::vector<Violation> violations;  // order and Hausdorff checks on the promoted members
};

/// Equivalence classes, P per class with zeta = 2 delta + D' + K, then the factor check.
Promotion promote(const FactorFamily& weak, const FactorOptions& opt = {});

/// Members strictly inside member w, as a family of w's induced graph.
FactorFamily sub_factor_system(const FactorFamily& family, std::size_t w, const FactorOptions& opt = {});

/// Longest chain W1 < W2 < ... under strict vertex-set inclusion.
int strict_chain_length(const std::vector<SubspaceRef>& members);

}  // namespace coarseforge
