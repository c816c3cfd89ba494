#pragma once

#include <string>
#include <vector>

#include "coarseforge/graph_core.hpp"

namespace coarseforge {

/// Named vertex subset of some host graph.
struct SubspaceRef {
  std::string name;
  VertexSet vertices;
  bool connected = true;  // induced subgraph connected
};

SubspaceRef make_subspace(const MetricGraph& g, std::string name, std::vector<Vertex> vertices);

/// d(v, ys) for every vertex v, by multi-source BFS.
std::vector<int> distances_to_set(const MetricGraph& g, const VertexSet& ys);

/// Exact closest-point projection: argmin of d(x, .) over ys.
VertexSet project(const MetricGraph& g, const VertexSet& ys, Vertex x);
/// Smallest-id member of project(g, ys, x).
Vertex project_canonical(const MetricGraph& g, const VertexSet& ys, Vertex x);
/// Union of point projections of every member of src.
VertexSet project_set(const MetricGraph& g, const VertexSet& ys, const VertexSet& src);

/// Max over y1, y2 in ys and v in interval(y1, y2) of d(v, ys).
int quasiconvexity_gauge(const MetricGraph& g, const VertexSet& ys);

enum class Inclusion { holds, proper, neither };
const char* to_string(Inclusion i);
/// holds iff a lies in the closed r-neighbourhood of b; proper if also b is not within r of a.
Inclusion coarse_inclusion(const MetricGraph& g, const VertexSet& a, const VertexSet& b, int r);

/// Smallest distance between the two sets.
int set_distance(const MetricGraph& g, const VertexSet& a, const VertexSet& b);

struct QuadrilateralResult {
  Vertex b = 0, b2 = 0;
  std::vector<Vertex> interior;  // vertices of [b, b'] farther than 4d+K from both ends
  std::vector<Violation> violations;
};

/// For s on the canonical [b, b'] with d(s, {b, b'}) > 4 delta + K, requires
/// d(s, interval(a, a')) <= 2 delta. Distances here are attained integers, so the
/// continuous strict/non-strict pair is swapped to stay meaningful at delta = 0.
QuadrilateralResult check_quadrilateral(const MetricGraph& g, const VertexSet& h, Vertex a, Vertex a2,
                                        int delta, int k);

struct MeasuredBound {
  double measured = 0;
  double bound = 0;
  std::vector<Violation> violations;
  std::vector<Vertex> witness;
};

/// Max over x, y in xs of max_{p in p_H(x), q in p_H(y)} d(p, q) - d(x, y); bound 12 delta + 2K.
MeasuredBound projection_lipschitz_defect(const MetricGraph& g, const VertexSet& h, const VertexSet& xs,
                                          int delta, int k);

struct BehrstockFirst {
  double kappa1 = 0;       // max over x of min{d(p_V x, p_V W), d(p_W x, p_W V)}
  double kappa_prime = 0;  // R + 12 delta + 2K + point-projection diameter, R = K + 2 delta + 1
  double branch_bound = 0; // 8 delta + 2K
  double branch_measured = 0;  // largest first term among x whose second term exceeds branch_bound
  std::vector<Violation> violations;
};

BehrstockFirst behrstock_first(const MetricGraph& g, const VertexSet& v, const VertexSet& w, const VertexSet& xs,
                               int delta, int k);

/// Max over x of diam(p_V(x) u p_V(p_W(x))); bound 12 delta + 4K. Requires v within w.
MeasuredBound behrstock_second(const MetricGraph& g, const VertexSet& v, const VertexSet& w, const VertexSet& xs,
                               int delta, int k);

/// Largest diameter of a single point projection onto ys over xs.
int point_projection_diameter(const MetricGraph& g, const VertexSet& ys, const VertexSet& xs);

/// All vertices of g as a set.
VertexSet all_vertices(const MetricGraph& g);

}  // namespace coarseforge
