#include "coarseforge/graph_core.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <queue>

#include "coarseforge/parallel.hpp"
#include "coarseforge/rng.hpp"

namespace coarseforge {

VertexSet make_vertex_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

MetricGraph::MetricGraph() : MetricGraph(1, {}) {}

MetricGraph::MetricGraph(std::size_t n, std::vector<Edge> edges,
                         std::map<std::string, VertexSet> subspaces)
    : cache_(std::make_shared<Cache>()) {
  if (n == 0) throw StructuralError("graph has no vertices");
  if (n >= kUnreachable) throw StructuralError("graph too large for 16-bit distances");
  for (auto& e : edges) {
    if (e.first >= n || e.second >= n)
      throw StructuralError("edge endpoint out of range: " + std::to_string(std::max(e.first, e.second)));
    if (e.first == e.second) throw StructuralError("self-loop at vertex " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adj_.assign(n, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());

  for (auto& [name, s] : subspaces) {
    s = make_vertex_set(std::move(s));
    if (!s.empty() && s.back() >= n) throw StructuralError("subspace '" + name + "' has out-of-range vertex");
  }
  subspaces_ = std::move(subspaces);

  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[u])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v])
      throw StructuralError("graph is disconnected: vertices 0 and " + std::to_string(v) + " are mutually unreachable");
}

bool MetricGraph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

const MetricGraph::Table& MetricGraph::build_table() const {
  std::call_once(cache_->once, [this] {
    const std::size_t n = adj_.size();
    Table& t = cache_->table;
    t.dist.assign(n * n, kUnreachable);
    t.pred.assign(n * n, 0);
    parallel_for(n, [&](std::size_t src) {
      std::uint16_t* d = &t.dist[src * n];
      std::uint16_t* p = &t.pred[src * n];
      std::vector<Vertex> queue;
      queue.reserve(n);
      queue.push_back(static_cast<Vertex>(src));
      d[src] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : adj_[u])
          if (d[w] == kUnreachable) {
            d[w] = static_cast<std::uint16_t>(d[u] + 1);
            queue.push_back(w);
          }
      }
      p[src] = static_cast<std::uint16_t>(src);
      for (std::size_t y = 0; y < n; ++y) {
        if (y == src) continue;
        for (Vertex w : adj_[y])
          if (d[w] + 1 == d[y]) {
            p[y] = static_cast<std::uint16_t>(w);
            break;
          }
      }
    });
    cache_->ready.store(true, std::memory_order_release);
  });
  return cache_->table;
}

std::vector<Vertex> MetricGraph::geodesic(Vertex x, Vertex y) const {
  std::vector<Vertex> path;
  path.reserve(static_cast<std::size_t>(dist(x, y)) + 1);
  for (Vertex c = y; c != x; c = pred(x, c)) path.push_back(c);
  path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

VertexSet MetricGraph::geodesic_interval(Vertex x, Vertex y) const {
  const std::uint16_t* dx = dist_row(x);
  const std::uint16_t* dy = dist_row(y);
  const int d = dx[y];
  VertexSet out;
  for (std::size_t v = 0; v < size(); ++v)
    if (dx[v] + dy[v] == d) out.push_back(static_cast<Vertex>(v));
  return out;
}

VertexSet MetricGraph::interval_by_dag(Vertex x, Vertex y) const {
  const std::uint16_t* dx = dist_row(x);
  const std::uint16_t* dy = dist_row(y);
  const int d = dx[y];
  std::vector<Vertex> out{x};
  std::vector<Vertex> frontier{x};
  while (!frontier.empty()) {
    std::vector<Vertex> next;
    for (Vertex u : frontier)
      for (Vertex w : adj_[u])
        if (dx[w] == dx[u] + 1 && dx[w] + dy[w] == d) next.push_back(w);
    next = make_vertex_set(std::move(next));
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return make_vertex_set(std::move(out));
}

int MetricGraph::dist_to_set(Vertex v, const VertexSet& ys) const {
  if (ys.empty()) throw ArgumentError("distance to an empty set");
  const std::uint16_t* dv = dist_row(v);
  int best = kUnreachable;
  for (Vertex y : ys) best = std::min<int>(best, dv[y]);
  return best;
}

int MetricGraph::eccentricity(Vertex v) const {
  const std::uint16_t* dv = dist_row(v);
  return *std::max_element(dv, dv + size());
}

int MetricGraph::diameter() const {
  int best = 0;
  for (std::size_t v = 0; v < size(); ++v) best = std::max(best, eccentricity(static_cast<Vertex>(v)));
  return best;
}

MetricGraph MetricGraph::induced(const VertexSet& s) const {
  if (s.empty()) throw ArgumentError("induced subgraph of an empty set");
  std::vector<Edge> sub;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Vertex w : adj_[s[i]]) {
      auto it = std::lower_bound(s.begin(), s.end(), w);
      if (it != s.end() && *it == w) {
        auto j = static_cast<Vertex>(it - s.begin());
        if (j > i) sub.emplace_back(static_cast<Vertex>(i), j);
      }
    }
  try {
    return MetricGraph(s.size(), std::move(sub));
  } catch (const StructuralError& e) {
    throw StructuralError(std::string("induced subgraph: ") + e.what());
  }
}

int hausdorff(const MetricGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw ArgumentError("Hausdorff distance of an empty set");
  int best = 0;
  for (Vertex x : a) best = std::max(best, g.dist_to_set(x, b));
  for (Vertex y : b) best = std::max(best, g.dist_to_set(y, a));
  return best;
}

VertexSet neighborhood(const MetricGraph& g, const VertexSet& s, int r) {
  VertexSet out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const std::uint16_t* dv = g.dist_row(static_cast<Vertex>(v));
    for (Vertex y : s)
      if (dv[y] <= r) {
        out.push_back(static_cast<Vertex>(v));
        break;
      }
  }
  return out;
}

int set_diameter(const MetricGraph& g, const VertexSet& s) {
  int best = 0;
  for (Vertex x : s) {
    const std::uint16_t* dx = g.dist_row(x);
    for (Vertex y : s) best = std::max<int>(best, dx[y]);
  }
  return best;
}

int thin_defect(const MetricGraph& g, Vertex z, Vertex x, Vertex y) {
  VertexSet others;
  for (Vertex v : g.geodesic(z, x)) others.push_back(v);
  for (Vertex v : g.geodesic(z, y)) others.push_back(v);
  others = make_vertex_set(std::move(others));
  int worst = 0;
  for (Vertex s : g.geodesic(x, y)) worst = std::max(worst, g.dist_to_set(s, others));
  return worst;
}

double four_point_defect(const MetricGraph& g, Vertex x, Vertex y, Vertex z, Vertex w) {
  std::array<int, 3> s{g.dist(x, y) + g.dist(z, w), g.dist(x, z) + g.dist(y, w), g.dist(x, w) + g.dist(y, z)};
  std::sort(s.begin(), s.end());
  return (s[2] - s[1]) / 2.0;
}

namespace {

struct ThinBest {
  int value = 0;
  std::array<Vertex, 3> witness{};
};

// All triangles with apex z. dz[x*n+s] = d(s, geodesic(z, x)), filled in BFS
// order from z so the parent row is ready.
// Interior vertices of every canonical geodesic [x, y], stored flat.
struct GeodesicTable {
  std::vector<std::uint32_t> offset;  // n * n + 1 entries
  std::vector<std::uint16_t> inner;
  std::vector<char> mirrored;  // [y, x] is [x, y] reversed, so (x, y) adds nothing when y < x
  std::size_t words = 0;         // 64-bit words per vertex bitset
  std::vector<std::uint64_t> bits;  // interior of [x, y] as a bitset at (x * n + y) * words
};

GeodesicTable geodesic_table(const MetricGraph& g) {
  const std::size_t n = g.size();
  GeodesicTable t;
  t.offset.resize(n * n + 1);
  std::size_t total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint16_t* dx = g.dist_row(static_cast<Vertex>(x));
    for (std::size_t y = 0; y < n; ++y) {
      t.offset[x * n + y] = static_cast<std::uint32_t>(total);
      total += dx[y] > 1 ? dx[y] - 1u : 0u;
    }
  }
  t.offset[n * n] = static_cast<std::uint32_t>(total);
  t.inner.resize(total);
  parallel_for(n, [&](std::size_t x) {
    const std::uint16_t* px = g.pred_row(static_cast<Vertex>(x));
    for (std::size_t y = 0; y < n; ++y) {
      std::uint16_t* out = &t.inner[t.offset[x * n + y]];
      for (Vertex s = px[y]; s != x; s = px[s]) *out++ = static_cast<std::uint16_t>(s);
    }
  });
  t.words = (n + 63) / 64;
  t.bits.assign(n * n * t.words, 0);
  parallel_for(n, [&](std::size_t x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::uint64_t* b = &t.bits[(x * n + y) * t.words];
      for (std::uint32_t i = t.offset[x * n + y]; i < t.offset[x * n + y + 1]; ++i)
        b[t.inner[i] / 64] |= std::uint64_t{1} << (t.inner[i] % 64);
    }
  });
  t.mirrored.assign(n * n, 0);
  parallel_for(n, [&](std::size_t x) {
    for (std::size_t y = 0; y < x; ++y) {
      const std::uint16_t* a = &t.inner[t.offset[x * n + y]];
      const std::uint16_t* b = &t.inner[t.offset[y * n + x + 1]];
      const std::size_t len = t.offset[x * n + y + 1] - t.offset[x * n + y];
      bool same = true;
      for (std::size_t i = 0; i < len && same; ++i) same = a[i] == *(b - 1 - i);
      t.mirrored[x * n + y] = same;
    }
  });
  return t;
}

ThinBest thin_for_apex(const MetricGraph& g, const GeodesicTable& paths, Vertex z, std::vector<std::uint16_t>& dz,
                       std::vector<Vertex>& order, std::vector<std::uint64_t>& above) {
  const std::size_t n = g.size();
  const std::uint16_t* drow = g.dist_row(z);
  order.resize(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return drow[a] < drow[b]; });
  dz.resize(n * n);
  for (Vertex x : order) {
    std::uint16_t* row = &dz[static_cast<std::size_t>(x) * n];
    const std::uint16_t* dx = g.dist_row(x);
    if (x == z) {
      std::copy(dx, dx + n, row);
      continue;
    }
    const std::uint16_t* parent = &dz[static_cast<std::size_t>(g.pred(z, x)) * n];
    for (std::size_t s = 0; s < n; ++s) row[s] = std::min(dx[s], parent[s]);
  }
  // above[x] = {s : d(s, [z, x]) > best}; a pair can only improve on best
  // where its interior meets above[x] and above[y].
  const std::size_t words = paths.words;
  above.resize(n * words);
  ThinBest best;
  auto rebuild = [&] {
    std::fill(above.begin(), above.end(), 0);
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint16_t* rx = &dz[x * n];
      std::uint64_t* a = &above[x * words];
      for (std::size_t s = 0; s < n; ++s)
        if (rx[s] > best.value) a[s / 64] |= std::uint64_t{1} << (s % 64);
    }
  };
  rebuild();
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint16_t* dx = g.dist_row(static_cast<Vertex>(x));
    for (std::size_t y = 0; y < n; ++y) {
      // Along [x, y] the defect is at most d(x, y) / 2; endpoints contribute 0.
      if (dx[y] / 2 <= best.value || paths.mirrored[x * n + y]) continue;
      const std::uint64_t* p = &paths.bits[(x * n + y) * words];
      const std::uint64_t* ax = &above[x * words];
      const std::uint64_t* ay = &above[y * words];
      std::uint64_t hit = 0;
      for (std::size_t k = 0; k < words; ++k) hit |= p[k] & ax[k] & ay[k];
      if (!hit) continue;
      const std::uint16_t* rx = &dz[x * n];
      const std::uint16_t* ry = &dz[y * n];
      int v = 0;
      for (std::uint32_t i = paths.offset[x * n + y]; i < paths.offset[x * n + y + 1]; ++i) {
        const std::uint16_t s = paths.inner[i];
        v = std::max<int>(v, std::min(rx[s], ry[s]));
      }
      best = {v, {z, static_cast<Vertex>(x), static_cast<Vertex>(y)}};
      rebuild();
    }
  }
  return best;
}

double delta_all_geodesics(const MetricGraph& g) {
  const std::size_t n = g.size();
  // f[(s*n + a)*n + b] = max over geodesics gamma from a to b of d(s, gamma).
  std::vector<std::uint16_t> f(n * n * n, 0);
  parallel_for(n, [&](std::size_t s) {
    const std::uint16_t* ds = g.dist_row(static_cast<Vertex>(s));
    std::vector<int> best(n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint16_t* da = g.dist_row(static_cast<Vertex>(a));
      std::vector<Vertex> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](Vertex u, Vertex v) { return da[u] < da[v]; });
      for (std::size_t b = 0; b < n; ++b) {
        const std::uint16_t* db = g.dist_row(static_cast<Vertex>(b));
        const int d = da[b];
        for (Vertex v : order) {
          if (da[v] > d) break;
          if (da[v] + db[v] != d) continue;
          if (v == a) {
            best[v] = ds[v];
            continue;
          }
          int m = -1;
          for (Vertex u : g.neighbors(v))
            if (da[u] + 1 == da[v] && da[u] + db[u] == d) m = std::max(m, best[u]);
          best[v] = std::min<int>(ds[v], m);
        }
        f[(s * n + a) * n + b] = static_cast<std::uint16_t>(best[b]);
      }
    }
  });
  std::vector<int> per_x(n, 0);
  parallel_for(n, [&](std::size_t x) {
    int worst = 0;
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      VertexSet side = g.geodesic_interval(static_cast<Vertex>(x), static_cast<Vertex>(y));
      for (std::size_t z = 0; z < n; ++z)
        for (Vertex s : side)
          worst = std::max<int>(worst, std::min(f[(s * n + x) * n + z], f[(s * n + y) * n + z]));
    }
    per_x[x] = worst;
  });
  return *std::max_element(per_x.begin(), per_x.end());
}

}  // namespace

HypReport hyperbolicity(const MetricGraph& g, const HypOptions& opt) {
  const std::size_t n = g.size();
  g.warm();
  HypReport rep;

  if (n <= opt.thin_exhaustive_limit) {
    std::vector<ThinBest> per(n);
    const unsigned workers = std::max(1u, thread_count());
    std::vector<std::vector<std::uint16_t>> scratch(workers);
    std::vector<std::vector<Vertex>> orders(workers);
    const GeodesicTable paths = geodesic_table(g);
    std::vector<std::vector<std::uint64_t>> above(workers);
    // Stripe apexes over workers; each keeps its own scratch buffer.
    parallel_for(workers, [&](std::size_t w) {
      for (std::size_t z = w; z < n; z += workers)
        per[z] = thin_for_apex(g, paths, static_cast<Vertex>(z), scratch[w], orders[w], above[w]);
    });
    ThinBest best;
    for (const auto& b : per)
      if (b.value > best.value) best = b;
    rep.delta_thin = best.value;
    rep.thin_witness = best.witness;
  } else {
    rep.thin_exhaustive = false;
    XorShift64Star rng(opt.seed);
    int best = 0;
    for (std::uint64_t i = 0; i < opt.samples; ++i) {
      auto z = static_cast<Vertex>(rng.below(n));
      auto x = static_cast<Vertex>(rng.below(n));
      auto y = static_cast<Vertex>(rng.below(n));
      int v = thin_defect(g, z, x, y);
      if (v > best) {
        best = v;
        rep.thin_witness = {z, x, y};
      }
    }
    rep.delta_thin = best;
  }

  double best4 = 0;
  auto consider = [&](Vertex x, Vertex y, Vertex z, Vertex w) {
    double v = four_point_defect(g, x, y, z, w);
    if (v > best4) {
      best4 = v;
      rep.four_point_witness = {x, y, z, w};
    }
  };
  if (n <= opt.four_point_exhaustive_limit) {
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y)
        for (Vertex z = y + 1; z < n; ++z)
          for (Vertex w = z + 1; w < n; ++w) consider(x, y, z, w);
  } else {
    rep.four_point_exhaustive = false;
    XorShift64Star rng(opt.seed ^ 0x4f70u);
    for (std::uint64_t i = 0; i < opt.samples; ++i)
      consider(static_cast<Vertex>(rng.below(n)), static_cast<Vertex>(rng.below(n)),
               static_cast<Vertex>(rng.below(n)), static_cast<Vertex>(rng.below(n)));
  }
  rep.delta_4pt = best4;

  if (n <= opt.all_geodesic_limit) rep.delta_all = delta_all_geodesics(g);
  return rep;
}

}  // namespace coarseforge
