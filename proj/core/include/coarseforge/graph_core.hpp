#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "coarseforge/common.hpp"

namespace coarseforge {

using Edge = std::pair<Vertex, Vertex>;

/// Finite, connected, simple, unweighted graph with cached all-pairs BFS data.
///
/// Distances are stored densely as uint16 and computed on first use. The same
/// pass records, for every source x and target y, the smallest-id neighbour of y
/// one layer closer to x; following those pointers gives the canonical geodesic.
class MetricGraph {
 public:
  MetricGraph();
  /// Throws StructuralError on self-loops, out-of-range endpoints, or a
  /// disconnected vertex set (the message names two mutually unreachable vertices).
  MetricGraph(std::size_t n, std::vector<Edge> edges,
              std::map<std::string, VertexSet> subspaces = {});

  std::size_t size() const { return adj_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  bool adjacent(Vertex u, Vertex v) const;
  const std::map<std::string, VertexSet>& subspaces() const { return subspaces_; }
  bool is_tree() const { return edges_.size() + 1 == adj_.size(); }

  int dist(Vertex x, Vertex y) const { return table().dist[idx(x, y)]; }
  const std::uint16_t* dist_row(Vertex x) const { return &table().dist[idx(x, 0)]; }
  /// Smallest-id neighbour of y with dist(x, .) = dist(x, y) - 1; y itself when x == y.
  Vertex pred(Vertex x, Vertex y) const { return table().pred[idx(x, y)]; }
  const std::uint16_t* pred_row(Vertex x) const { return &table().pred[idx(x, 0)]; }

  /// Canonical geodesic from x to y: walk back from y taking pred(x, .) each layer.
  std::vector<Vertex> geodesic(Vertex x, Vertex y) const;
  /// {v : d(x,v) + d(v,y) = d(x,y)}.
  VertexSet geodesic_interval(Vertex x, Vertex y) const;
  /// Same set, found by walking the BFS DAG instead of scanning all vertices.
  VertexSet interval_by_dag(Vertex x, Vertex y) const;

  int dist_to_set(Vertex v, const VertexSet& ys) const;
  int eccentricity(Vertex v) const;
  int diameter() const;

  /// Induced subgraph on s (sorted). Vertex i of the result is s[i].
  /// Throws StructuralError if the induced subgraph is disconnected.
  MetricGraph induced(const VertexSet& s) const;

  /// Forces the distance table (no-op once built).
  void warm() const { (void)table(); }

 private:
  struct Table {
    std::vector<std::uint16_t> dist;
    std::vector<std::uint16_t> pred;
  };
  struct Cache {
    std::once_flag once;
    std::atomic<bool> ready{false};
    Table table;
  };

  std::size_t idx(Vertex x, Vertex y) const { return static_cast<std::size_t>(x) * adj_.size() + y; }
  const Table& table() const {
    return cache_->ready.load(std::memory_order_acquire) ? cache_->table : build_table();
  }
  const Table& build_table() const;

  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexSet> subspaces_;
  std::shared_ptr<Cache> cache_;
};

/// Hausdorff distance of two non-empty vertex sets. Throws ArgumentError on an empty set.
int hausdorff(const MetricGraph& g, const VertexSet& a, const VertexSet& b);
/// Closed R-neighbourhood of a set.
VertexSet neighborhood(const MetricGraph& g, const VertexSet& s, int r);
/// Largest distance between two members of s (0 for singletons).
int set_diameter(const MetricGraph& g, const VertexSet& s);

struct HypOptions {
  std::size_t thin_exhaustive_limit = 320;  // vertex count up to which all triples are scanned
  std::size_t four_point_exhaustive_limit = 64;
  std::size_t all_geodesic_limit = 40;  // vertex count up to which delta_all is computed
  std::uint64_t samples = 200000;       // sampled triples/quadruples above the limits
  std::uint64_t seed = 1;
};

/// Hyperbolicity constants. Thin-triangle values are integers, four-point
/// values are half-integers.
struct HypReport {
  double delta_thin = 0;     // canonical-geodesic triangles
  double delta_4pt = 0;      // four-point defect
  double delta_all = -1;     // thin constant over all geodesics; -1 when not computed
  std::array<Vertex, 3> thin_witness{};  // apex z, then x, y of the offending side
  std::array<Vertex, 4> four_point_witness{};
  bool thin_exhaustive = true;
  bool four_point_exhaustive = true;
};

HypReport hyperbolicity(const MetricGraph& g, const HypOptions& opt = {});

/// Thinness of the canonical triangle with apex z and opposite side geodesic(x, y):
/// max over s on geodesic(x,y) of d(s, geodesic(z,x) u geodesic(z,y)).
int thin_defect(const MetricGraph& g, Vertex z, Vertex x, Vertex y);

/// Four-point defect of a quadruple, as a half-integer.
double four_point_defect(const MetricGraph& g, Vertex x, Vertex y, Vertex z, Vertex w);

}  // namespace coarseforge
