#include "coarseforge/coarse_geometry.hpp"

#include <algorithm>
#include <numeric>

#include "coarseforge/parallel.hpp"

namespace coarseforge {

SubspaceRef make_subspace(const MetricGraph& g, std::string name, std::vector<Vertex> vertices) {
  SubspaceRef s;
  s.name = std::move(name);
  s.vertices = make_vertex_set(std::move(vertices));
  if (s.vertices.empty()) throw ArgumentError("subspace '" + s.name + "' is empty");
  if (s.vertices.back() >= g.size()) throw ArgumentError("subspace '" + s.name + "' has out-of-range vertex");
  try {
    (void)g.induced(s.vertices);
  } catch (const StructuralError&) {
    s.connected = false;
  }
  return s;
}

VertexSet all_vertices(const MetricGraph& g) {
  VertexSet v(g.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> distances_to_set(const MetricGraph& g, const VertexSet& ys) {
  if (ys.empty()) throw ArgumentError("distance to an empty set");
  std::vector<int> d(g.size(), -1);
  std::vector<Vertex> queue(ys.begin(), ys.end());
  for (Vertex y : ys) d[y] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex w : g.neighbors(u))
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
  }
  return d;
}

VertexSet project(const MetricGraph& g, const VertexSet& ys, Vertex x) {
  if (ys.empty()) throw ArgumentError("projection onto an empty set");
  const std::uint16_t* dx = g.dist_row(x);
  int best = kUnreachable;
  for (Vertex y : ys) best = std::min<int>(best, dx[y]);
  VertexSet out;
  for (Vertex y : ys)
    if (dx[y] == best) out.push_back(y);
  return out;
}

Vertex project_canonical(const MetricGraph& g, const VertexSet& ys, Vertex x) {
  if (ys.empty()) throw ArgumentError("projection onto an empty set");
  const std::uint16_t* dx = g.dist_row(x);
  Vertex best = ys.front();
  for (Vertex y : ys)
    if (dx[y] < dx[best]) best = y;
  return best;
}

VertexSet project_set(const MetricGraph& g, const VertexSet& ys, const VertexSet& src) {
  std::vector<Vertex> out;
  for (Vertex x : src) {
    VertexSet p = project(g, ys, x);
    out.insert(out.end(), p.begin(), p.end());
  }
  return make_vertex_set(std::move(out));
}

int point_projection_diameter(const MetricGraph& g, const VertexSet& ys, const VertexSet& xs) {
  int best = 0;
  for (Vertex x : xs) best = std::max(best, set_diameter(g, project(g, ys, x)));
  return best;
}

int quasiconvexity_gauge(const MetricGraph& g, const VertexSet& ys) {
  if (ys.empty()) throw ArgumentError("gauge of an empty set");
  std::vector<int> dy = distances_to_set(g, ys);
  // Candidates outside ys, farthest first; a pair's contribution is the first
  // candidate lying in its interval.
  std::vector<Vertex> far;
  for (Vertex v = 0; v < g.size(); ++v)
    if (dy[v] > 0) far.push_back(v);
  std::stable_sort(far.begin(), far.end(), [&](Vertex a, Vertex b) { return dy[a] > dy[b]; });
  if (far.empty()) return 0;
  std::vector<int> per(ys.size(), 0);
  parallel_for(ys.size(), [&](std::size_t i) {
    const std::uint16_t* d1 = g.dist_row(ys[i]);
    int best = 0;
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      const std::uint16_t* d2 = g.dist_row(ys[j]);
      const int d = d1[ys[j]];
      for (Vertex v : far) {
        if (dy[v] <= best) break;
        if (d1[v] + d2[v] == d) {
          best = dy[v];
          break;
        }
      }
    }
    per[i] = best;
  });
  return *std::max_element(per.begin(), per.end());
}

const char* to_string(Inclusion i) {
  switch (i) {
    case Inclusion::holds: return "holds";
    case Inclusion::proper: return "proper";
    default: return "neither";
  }
}

namespace {

bool within(const MetricGraph& g, const VertexSet& a, const VertexSet& b, int r) {
  for (Vertex x : a)
    if (g.dist_to_set(x, b) > r) return false;
  return true;
}

}  // namespace

Inclusion coarse_inclusion(const MetricGraph& g, const VertexSet& a, const VertexSet& b, int r) {
  if (!within(g, a, b, r)) return Inclusion::neither;
  return within(g, b, a, r) ? Inclusion::holds : Inclusion::proper;
}

int set_distance(const MetricGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw ArgumentError("distance between empty sets");
  int best = kUnreachable;
  for (Vertex x : a) best = std::min(best, g.dist_to_set(x, b));
  return best;
}

QuadrilateralResult check_quadrilateral(const MetricGraph& g, const VertexSet& h, Vertex a, Vertex a2,
                                        int delta, int k) {
  QuadrilateralResult r;
  r.b = project_canonical(g, h, a);
  r.b2 = project_canonical(g, h, a2);
  const int margin = 4 * delta + k;
  VertexSet interval = g.geodesic_interval(a, a2);
  for (Vertex s : g.geodesic(r.b, r.b2)) {
    if (std::min(g.dist(s, r.b), g.dist(s, r.b2)) <= margin) continue;
    r.interior.push_back(s);
    const int d = g.dist_to_set(s, interval);
    if (d > 2 * delta) r.violations.push_back({"quadrilateral", 2.0 * delta, double(d), {a, a2, r.b, r.b2, s}});
  }
  return r;
}

MeasuredBound projection_lipschitz_defect(const MetricGraph& g, const VertexSet& h, const VertexSet& xs,
                                          int delta, int k) {
  MeasuredBound out;
  out.bound = 12.0 * delta + 2.0 * k;
  std::vector<VertexSet> proj(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { proj[i] = project(g, h, xs[i]); });
  struct Best {
    int value = 0;
    std::vector<Vertex> witness;
  };
  std::vector<Best> per(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const std::uint16_t* dx = g.dist_row(xs[i]);
    Best b;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      int far = 0;
      Vertex pw = proj[i][0], qw = proj[j][0];
      for (Vertex p : proj[i]) {
        const std::uint16_t* dp = g.dist_row(p);
        for (Vertex q : proj[j])
          if (dp[q] > far) {
            far = dp[q];
            pw = p;
            qw = q;
          }
      }
      const int defect = far - dx[xs[j]];
      if (defect > b.value) b = {defect, {xs[i], xs[j], pw, qw}};
    }
    per[i] = std::move(b);
  });
  for (const auto& b : per)
    if (b.value > out.measured) {
      out.measured = b.value;
      out.witness = b.witness;
    }
  if (out.measured > out.bound) out.violations.push_back({"projection_lipschitz", out.bound, out.measured, out.witness});
  return out;
}

BehrstockFirst behrstock_first(const MetricGraph& g, const VertexSet& v, const VertexSet& w, const VertexSet& xs,
                               int delta, int k) {
  BehrstockFirst out;
  const VertexSet pvw = project_set(g, v, w);
  const VertexSet pwv = project_set(g, w, v);
  const int proj_diam = std::max(point_projection_diameter(g, v, xs), point_projection_diameter(g, w, xs));
  out.branch_bound = 8.0 * delta + 2.0 * k;
  out.kappa_prime = (k + 2.0 * delta + 1) + 12.0 * delta + 2.0 * k + proj_diam;
  std::vector<std::pair<int, int>> terms(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    terms[i] = {set_distance(g, project(g, v, xs[i]), pvw), set_distance(g, project(g, w, xs[i]), pwv)};
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto [tv, tw] = terms[i];
    out.kappa1 = std::max<double>(out.kappa1, std::min(tv, tw));
    // Whichever term exceeds 8 delta + 2K forces the other below kappa'.
    if (tw > out.branch_bound) {
      out.branch_measured = std::max<double>(out.branch_measured, tv);
      if (tv > out.kappa_prime) out.violations.push_back({"behrstock_first", out.kappa_prime, double(tv), {xs[i]}});
    }
    if (tv > out.branch_bound) {
      out.branch_measured = std::max<double>(out.branch_measured, tw);
      if (tw > out.kappa_prime) out.violations.push_back({"behrstock_first", out.kappa_prime, double(tw), {xs[i]}});
    }
  }
  return out;
}

MeasuredBound behrstock_second(const MetricGraph& g, const VertexSet& v, const VertexSet& w, const VertexSet& xs,
                               int delta, int k) {
  if (!is_subset(v, w)) throw ArgumentError("behrstock_second needs V contained in W");
  MeasuredBound out;
  out.bound = 12.0 * delta + 4.0 * k;
  std::vector<int> per(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    VertexSet pv = project(g, v, xs[i]);
    VertexSet both = set_union(pv, project_set(g, v, project(g, w, xs[i])));
    per[i] = set_diameter(g, both);
  });
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (per[i] > out.measured) {
      out.measured = per[i];
      out.witness = {xs[i]};
    }
  if (out.measured > out.bound) out.violations.push_back({"behrstock_second", out.bound, out.measured, out.witness});
  return out;
}

}  // namespace coarseforge
