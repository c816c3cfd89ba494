#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "coarseforge/coarse_geometry.hpp"
#include "coarseforge/graph_core.hpp"

namespace coarseforge {

enum class Host { base, coned };

/// Maximal stretch of a de-electrified path: either a base geodesic segment
/// (label kNoLabel) or the replacement of one cone edge (label = member index).
struct Piece {
  std::size_t begin = 0;  // vertex indices, inclusive
  std::size_t end = 0;
  int label = kNoLabel;
};

struct VPath {
  std::vector<Vertex> vertices;
  Host host = Host::base;
  std::vector<int> step_labels;  // per step: kNoLabel for base edges, else member index
  std::vector<Piece> pieces;     // filled by de-electrification

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

struct ConeEdge {
  Vertex u = 0, v = 0;
  std::vector<int> labels;
};

/// Base graph plus one edge between every pair of vertices sharing a family member.
class ConedGraph {
 public:
  ConedGraph(std::shared_ptr<const MetricGraph> base, std::vector<SubspaceRef> family);

  const MetricGraph& base() const { return *base_; }
  std::shared_ptr<const MetricGraph> base_ptr() const { return base_; }
  const MetricGraph& coned() const { return coned_; }
  const std::vector<SubspaceRef>& family() const { return family_; }
  const std::vector<ConeEdge>& cone_edges() const { return cone_edges_; }
  /// Sorted member indices containing v.
  const std::vector<int>& memberships(Vertex v) const { return member_of_[v]; }

  int dist_hat(Vertex x, Vertex y) const { return coned_.dist(x, y); }
  /// kNoLabel if u, v are base-adjacent, else the lowest member holding both
  /// (-2 if the two are not adjacent in the coned graph at all).
  int step_label(Vertex u, Vertex v) const;

  /// Members strictly contained in member w.
  const std::vector<int>& nested_in(int w) const { return nested_[static_cast<std::size_t>(w)]; }
  /// Induced subgraph of member w (vertex i is family()[w].vertices[i]).
  const MetricGraph& member_graph(int w) const;
  /// Member w coned off along the members strictly inside it, in local ids.
  const ConedGraph& member_cone(int w) const;
  /// Cone-off quasiconvexity gauge of member w, cached.
  int member_coqc(int w) const;

 private:
  struct Lazy {
    std::once_flag graph_once, cone_once, coqc_once;
    std::unique_ptr<MetricGraph> graph;
    std::unique_ptr<ConedGraph> cone;
    int coqc = -1;
  };

  std::shared_ptr<const MetricGraph> base_;
  std::vector<SubspaceRef> family_;
  MetricGraph coned_;
  std::vector<ConeEdge> cone_edges_;
  std::vector<std::vector<int>> member_of_;
  std::vector<std::vector<int>> nested_;
  std::vector<std::unique_ptr<Lazy>> lazy_;
};

/// Validates adjacency in the coned graph and fills step labels.
VPath make_coned_path(const ConedGraph& cg, std::vector<Vertex> vertices);
/// Canonical geodesic of the coned graph.
VPath coned_geodesic(const ConedGraph& cg, Vertex x, Vertex y);
/// Base path validated against base adjacency, split into maximal geodesic pieces.
VPath make_base_path(const MetricGraph& g, std::vector<Vertex> vertices);

enum class DeElectMode { total, embedded, partial };

struct DeElectSpec {
  DeElectMode mode = DeElectMode::total;
  int level = 1;   // partial only
  double C = 1.0;  // partial pieces are geodesics of the member cone-off, hence C-quasi-geodesic for any C >= 1
};

/// Replaces cone edges by canonical geodesics of the base (total), of the
/// member's induced subgraph (embedded), or of the member's own cone-off
/// (partial, repeated `level` times).
VPath de_electrify(const ConedGraph& cg, const VPath& gamma, const DeElectSpec& spec = {});

/// Total de-electrification plus, for each coned vertex k, its index in the result.
struct DeElectMap {
  VPath tilde;
  std::vector<std::size_t> coned_pos;
};
DeElectMap total_deelectrification(const ConedGraph& cg, const VPath& gamma);

/// Interruption of gamma at the given vertex indices of its total
/// de-electrification. Each index must lie on an H-piece. Throws ArgumentError
/// otherwise, InvariantError if L(out) > L(in) + |S|(2K+1).
VPath interrupt(const ConedGraph& cg, const VPath& gamma, const std::vector<std::size_t>& tilde_positions);

/// Max over s, t in S and z on a base geodesic between them of d_hat(z, S).
int coqc_gauge(const ConedGraph& cg, const VertexSet& s);

/// Up to `cap` coned geodesics from x to y, canonical first, then DFS order over the geodesic DAG.
std::vector<VPath> coned_geodesics(const ConedGraph& cg, Vertex x, Vertex y, std::size_t cap);

struct PigeonholeReport {
  int theta = 0;
  int threshold = 0;  // 2 theta^2
  std::size_t pairs_checked = 0;
  std::size_t paths_checked = 0;
  std::vector<Violation> violations;
};

/// For every pair in `vertices` with base distance >= 2 theta^2, each checked coned
/// geodesic has coned length >= theta or an H-piece of base length >= theta.
PigeonholeReport pigeonhole_check(const ConedGraph& cg, int theta, const VertexSet& vertices,
                                  std::size_t alternates = 64);

struct NineteenReport {
  int delta = 0;
  int xi = 0, d_prime = 0, p = 0, d = 0;
  std::size_t pairs = 0;
  int max_pieces = 0;           // in components of tilde - N_{D'}([x,y])
  int max_endpoint_gap = 0;     // component endpoints, outside N_D
  int max_geodesic_escape = 0;  // max over [x,y] of d(., tilde)
  std::vector<Violation> violations;
};

NineteenReport nineteen_pieces_check(const ConedGraph& cg, int delta,
                                     const std::vector<std::pair<Vertex, Vertex>>& pairs);

}  // namespace coarseforge
