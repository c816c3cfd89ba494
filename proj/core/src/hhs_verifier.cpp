#include "coarseforge/hhs_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coarseforge/deelect.hpp"
#include "coarseforge/parallel.hpp"
#include "coarseforge/rng.hpp"

namespace coarseforge {

namespace {

const std::string kTopName = "Gamma";

std::vector<std::pair<Vertex, Vertex>> sample_pairs(const std::vector<Vertex>& pool, std::uint64_t budget,
                                                    std::uint64_t seed) {
  std::vector<std::pair<Vertex, Vertex>> out;
  const std::uint64_t n = pool.size();
  if (n < 2) return out;
  if (n * (n - 1) / 2 <= budget) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(pool[i], pool[j]);
    return out;
  }
  XorShift64Star rng(seed);
  while (out.size() < budget) {
    const std::uint64_t i = rng.below(n), j = rng.below(n);
    if (i != j) out.emplace_back(pool[i], pool[j]);
  }
  return out;
}

VertexSet iota_set(std::size_t n) {
  VertexSet v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

}  // namespace

HhsStructure::HhsStructure(FactorFamily family) : family_(std::move(family)) {
  const auto& ms = family_.members;
  top_ = std::make_shared<const ConedGraph>(family_.host, ms);
  all_ = iota_set(host().size());
  const std::size_t n = size();
  nested_.assign(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    nested_[u][u] = true;
    nested_[u][top()] = true;
  }
  for (std::size_t u = 0; u < ms.size(); ++u)
    for (std::size_t w = 0; w < ms.size(); ++w)
      if (u != w && is_subset(ms[u].vertices, ms[w].vertices)) nested_[u][w] = true;
  const MetricGraph& g = host();
  proj_.assign(n, std::vector<VertexSet>(g.size()));
  parallel_for(n, [&](std::size_t u) {
    for (Vertex x = 0; x < g.size(); ++x)
      proj_[u][x] = u == top() ? VertexSet{x} : project(g, ms[u].vertices, x);
  });
}

const std::string& HhsStructure::name(std::size_t u) const {
  return u == top() ? kTopName : family_.members[u].name;
}

const VertexSet& HhsStructure::vertices(std::size_t u) const {
  if (u == top()) return all_;
  return family_.members[u].vertices;
}

const ConedGraph& HhsStructure::cone(std::size_t u) const {
  return u == top() ? *top_ : top_->member_cone(static_cast<int>(u));
}

Vertex HhsStructure::local(std::size_t u, Vertex global) const {
  if (u == top()) return global;
  const VertexSet& v = family_.members[u].vertices;
  return static_cast<Vertex>(std::lower_bound(v.begin(), v.end(), global) - v.begin());
}

VertexSet HhsStructure::pi(std::size_t u, Vertex x) const {
  VertexSet out;
  for (Vertex p : proj_[u][x]) out.push_back(local(u, p));
  return out;
}

int HhsStructure::d(std::size_t u, const VertexSet& a, const VertexSet& b) const {
  const MetricGraph& c = cone(u).coned();
  int best = 0;
  auto scan = [&](const VertexSet& s, const VertexSet& t) {
    for (Vertex x : s) {
      const std::uint16_t* dx = c.dist_row(x);
      for (Vertex y : t) best = std::max<int>(best, dx[y]);
    }
  };
  scan(a, a);
  scan(a, b);
  scan(b, b);
  return best;
}

VertexSet HhsStructure::rho(std::size_t v, std::size_t w) const {
  if (v == top()) throw ArgumentError("rho from the top is a map, not a set");
  if (v == w) throw ArgumentError("rho of an index to itself");
  VertexSet out;
  if (nested(v, w)) {
    for (Vertex x : family_.members[v].vertices) out.push_back(local(w, x));
    return out;
  }
  for (Vertex x : project_set(host(), family_.members[w].vertices, family_.members[v].vertices))
    out.push_back(local(w, x));
  return out;
}

HhsStructure build_hhs(const FactorFamily& family) {
  if (family.kind != FamilyKind::factor) throw ArgumentError("build_hhs needs a verified factor family");
  return HhsStructure(family);
}

AxiomReport verify_axioms(const HhsStructure& s, const VerifyOptions& opt) {
  if (opt.sample_budget == 0 || opt.lll_budget == 0) throw ArgumentError("sample budget must be positive");
  const MetricGraph& g = s.host();
  const std::size_t n = s.size(), top = s.top(), m = top;
  const FamilyConstants& fc = s.family().constants;
  AxiomReport rep;
  rep.delta = opt.delta >= 0 ? opt.delta : static_cast<int>(std::ceil(hyperbolicity(g).delta_thin));
  rep.K = fc.K;
  const int delta = rep.delta, K = rep.K;
  rep.core_margin = 4 * delta + 2 * K + algo_constants(delta, K).Delta;

  std::vector<Vertex> core;
  {
    const std::uint16_t* d0 = g.dist_row(opt.base_point);
    const int limit = g.eccentricity(opt.base_point) - rep.core_margin;
    for (Vertex x = 0; x < g.size(); ++x)
      if (d0[x] <= limit) core.push_back(x);
    if (core.empty()) core.push_back(opt.base_point);
  }
  rep.core_size = core.size();

  // Local projections of every vertex into every index.
  std::vector<std::vector<VertexSet>> pi(n, std::vector<VertexSet>(g.size()));
  parallel_for(n, [&](std::size_t u) {
    for (Vertex x = 0; x < g.size(); ++x) pi[u][x] = s.pi(u, x);
  });
  for (std::size_t u = 0; u < n; ++u) s.cone(u).coned().warm();

  // rho[v][w] for member pairs.
  std::vector<std::vector<VertexSet>> rho(m, std::vector<VertexSet>(m));
  parallel_for(m, [&](std::size_t v) {
    for (std::size_t w = 0; w < m; ++w)
      if (v != w) rho[v][w] = s.rho(v, w);
  });

  // (g) delta' and Kapovich-Rafi H per index.
  rep.delta_per_index.assign(n, 0);
  std::vector<int> h_per(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const ConedGraph& c = s.cone(u);
    HypOptions ho;
    ho.seed = opt.seed + u;
    rep.delta_per_index[u] = static_cast<int>(std::ceil(hyperbolicity(c.coned(), ho).delta_thin));
    const auto pairs = sample_pairs(iota_set(c.base().size()), opt.sample_budget, opt.seed ^ (0x9E37 + u));
    std::vector<int> hs(pairs.size(), 0);
    parallel_for(pairs.size(), [&](std::size_t k) {
      const auto [x, y] = pairs[k];
      hs[k] = hausdorff(c.coned(), make_vertex_set(c.base().geodesic(x, y)),
                        make_vertex_set(c.coned().geodesic(x, y)));
    });
    for (int h : hs) h_per[u] = std::max(h_per[u], h);
  }
  for (std::size_t u = 0; u < n; ++u) {
    rep.delta_prime = std::max(rep.delta_prime, rep.delta_per_index[u]);
    rep.H_kr = std::max(rep.H_kr, h_per[u]);
  }

  // (a) coarse Lipschitz over host edges inside the core, and projection diameters.
  {
    std::vector<char> in_core(g.size(), 0);
    for (Vertex x : core) in_core[x] = 1;
    std::vector<int> lip(n, 0), pd(n, 0);
    parallel_for(n, [&](std::size_t u) {
      for (const auto& [x, y] : g.edges())
        if (in_core[x] && in_core[y]) lip[u] = std::max(lip[u], s.d(u, pi[u][x], pi[u][y]));
      for (Vertex x : core) {
        pd[u] = std::max(pd[u], s.d(u, pi[u][x], {}));
        if (pi[u][x].empty()) pd[u] = kUnreachable;
      }
    });
    for (std::size_t u = 0; u < n; ++u) {
      rep.lipschitz = std::max(rep.lipschitz, lip[u]);
      rep.pi_diameter = std::max(rep.pi_diameter, pd[u]);
      if (pd[u] == kUnreachable) rep.violations.push_back({"partial_realization_empty_projection", 0, 0, {Vertex(u)}});
    }
  }

  // Bounded projections and rho diameters.
  rep.Theta_bound = 2 * fc.B + fc.xi + 2;
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t w = 0; w < m; ++w) {
      if (f == w) continue;
      const int dm = s.d(f, rho[w][f], {});
      if (!s.nested(w, f)) rep.rho_diameter = std::max(rep.rho_diameter, dm);
      if (s.nested(f, w)) continue;
      rep.Theta = std::max(rep.Theta, dm);
      if (dm > rep.Theta_bound)
        rep.violations.push_back({"bounded_projections", double(rep.Theta_bound), double(dm), {Vertex(f), Vertex(w)}});
    }
  // rho^U_V inside rho^W_V whenever U is inside W and V is not inside W.
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t w = 0; w < m; ++w) {
      if (v == w || s.nested(v, w)) continue;
      for (std::size_t u = 0; u < m; ++u)
        if (u != w && u != v && s.nested(u, w) && !is_subset(rho[u][v], rho[w][v]))
          rep.violations.push_back({"rho_monotone", 0, 1, {Vertex(u), Vertex(w), Vertex(v)}});
    }

  // (b) consistency.
  {
    std::vector<int> kap(n, 0);
    parallel_for(n, [&](std::size_t v) {
      int best = 0;
      if (v == top) {
        kap[v] = 0;
        return;
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (w == v) continue;
        if (w != top && !s.nested(v, w) && !s.nested(w, v)) {
          if (w < v) continue;
          for (Vertex x : core) {
            const int tv = s.d(v, pi[v][x], rho[w][v]);
            const int tw = s.d(w, pi[w][x], rho[v][w]);
            best = std::max(best, std::min(tv, tw));
          }
        } else if (s.nested(v, w)) {
          const VertexSet rv = w == top ? s.rho(v, top) : rho[v][w];
          for (Vertex x : core) {
            const int a = s.d(w, pi[w][x], rv);
            VertexSet back;
            for (Vertex p : project_set(g, s.vertices(v), s.proj(w, x))) back.push_back(s.local(v, p));
            const int b = s.d(v, pi[v][x], back);
            best = std::max(best, std::min(a, b));
          }
        }
      }
      // d_W(rho^U_W, rho^V_W) for U nested in V, W above or transverse to V.
      for (std::size_t u = 0; u < m; ++u) {
        if (u == v || !s.nested(u, v)) continue;
        for (std::size_t w = 0; w < n; ++w) {
          if (w == v || w == u || s.nested(w, v)) continue;
          const VertexSet ru = w == top ? s.rho(u, top) : rho[u][w];
          const VertexSet rv = w == top ? s.rho(v, top) : rho[v][w];
          best = std::max(best, s.d(w, ru, rv));
        }
      }
      kap[v] = best;
    });
    for (int k : kap) rep.kappa0 = std::max(rep.kappa0, k);
  }

  // (c) bounded geodesic image.
  rep.bgi_bound = std::max(8 * delta + K, 2 * delta + K + rep.H_kr);
  {
    struct Out {
      int need = 0;
      std::vector<Violation> bad;
    };
    std::vector<Out> per(n);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<std::size_t> inner;
      for (std::size_t v = 0; v < m; ++v)
        if (v != w && s.nested(v, w)) inner.push_back(v);
      if (inner.empty()) continue;
      const ConedGraph& cw = s.cone(w);
      const VertexSet& wv = s.vertices(w);
      std::vector<Vertex> pool;
      if (w == top) {
        pool = core;
      } else {
        for (Vertex x : wv)
          if (std::binary_search(core.begin(), core.end(), x)) pool.push_back(s.local(w, x));
      }
      const auto pairs = sample_pairs(pool, opt.sample_budget, opt.seed ^ (0xB61 + w));
      std::vector<Out> local(pairs.size());
      parallel_for(pairs.size(), [&](std::size_t k) {
        const auto path = cw.coned().geodesic(pairs[k].first, pairs[k].second);
        Out o;
        for (std::size_t v : inner) {
          std::vector<Vertex> img;
          for (Vertex p : path) {
            const Vertex gp = w == top ? p : wv[p];
            for (Vertex q : s.proj(v, gp)) img.push_back(s.local(v, q));
          }
          const int diam = s.d(v, make_vertex_set(std::move(img)), {});
          const VertexSet rv = w == top ? s.rho(v, top) : rho[v][w];
          int dist = kUnreachable;
          for (Vertex p : path) dist = std::min(dist, cw.coned().dist_to_set(p, rv));
          o.need = std::max(o.need, std::min(diam, dist));
          if (diam > 8 * delta + K && dist > 2 * delta + K + rep.H_kr)
            o.bad.push_back({"bounded_geodesic_image", double(rep.bgi_bound), double(std::min(diam, dist)),
                             {Vertex(w), Vertex(v), pairs[k].first, pairs[k].second}});
        }
        local[k] = std::move(o);
      });
      for (auto& o : local) {
        per[w].need = std::max(per[w].need, o.need);
        per[w].bad.insert(per[w].bad.end(), o.bad.begin(), o.bad.end());
      }
    }
    for (auto& o : per) {
      rep.E_bgi = std::max(rep.E_bgi, o.need);
      rep.violations.insert(rep.violations.end(), o.bad.begin(), o.bad.end());
    }
  }

  // (d) large links, witnessed by the good quasi-geodesic of each CW.
  {
    const auto pairs = sample_pairs(core, opt.lll_budget, opt.seed ^ 0x111);
    std::vector<int> delta_w(n, delta);
    for (std::size_t w = 0; w < m; ++w)
      delta_w[w] = static_cast<int>(std::ceil(hyperbolicity(s.cone(w).base()).delta_thin));
    std::vector<std::size_t> with_inner;
    for (std::size_t w = 0; w < n; ++w)
      if (w == top || !s.top_cone().nested_in(static_cast<int>(w)).empty()) with_inner.push_back(w);
    struct Out {
      int e_need = 0;
      double lambda_need = 0;
      std::size_t max_t = 0;
    };
    std::vector<Out> per(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
      const auto [x, y] = pairs[k];
      Out o;
      for (std::size_t w : with_inner) {
        const ConedGraph& cw = s.cone(w);
        if (cw.family().empty()) continue;
        const Vertex lx = s.local(w, project_canonical(g, s.vertices(w), x));
        const Vertex ly = s.local(w, project_canonical(g, s.vertices(w), y));
        AlgoOptions ao;
        ao.delta = delta_w[w];
        const GoodQuasiGeodesic gq = good_quasigeodesic(cw, lx, ly, ao);
        std::vector<std::size_t> t;
        for (const Piece& p : gq.tilde.pieces)
          if (p.label >= 0)
            t.push_back(w == top ? static_cast<std::size_t>(p.label)
                                 : static_cast<std::size_t>(s.top_cone().nested_in(static_cast<int>(w))[p.label]));
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        const int dw = s.d(w, pi[w][x], pi[w][y]);
        o.max_t = std::max(o.max_t, t.size());
        o.lambda_need = std::max(o.lambda_need, static_cast<double>(t.size()) / (dw + 1));
        for (std::size_t ti : t) {
          const VertexSet rt = w == top ? s.rho(ti, top) : rho[ti][w];
          o.lambda_need = std::max(o.lambda_need, static_cast<double>(s.d(w, pi[w][x], rt)) / (dw + 1));
        }
        for (std::size_t v = 0; v < m; ++v) {
          if (v == w || !s.nested(v, w)) continue;
          bool covered = false;
          for (std::size_t ti : t)
            if (s.nested(v, ti)) {
              covered = true;
              break;
            }
          if (!covered) o.e_need = std::max(o.e_need, s.d(v, pi[v][x], pi[v][y]) + 1);
        }
      }
      per[k] = o;
    });
    int e_need = 0;
    double lambda_need = 0;
    for (const auto& o : per) {
      e_need = std::max(e_need, o.e_need);
      lambda_need = std::max(lambda_need, o.lambda_need);
      rep.lll.max_T = std::max(rep.lll.max_T, o.max_t);
    }
    rep.lll.samples = pairs.size();
    rep.lll.E = std::max({e_need, rep.pi_diameter, rep.rho_diameter, rep.kappa0});
    for (double l : opt.lambda_grid)
      if (l >= 1 && l >= lambda_need) {
        rep.lll.lambda = l;
        rep.lll.found = true;
        break;
      }
    if (!rep.lll.found) rep.violations.push_back({"large_links_lambda", opt.lambda_grid.back(), lambda_need, {}});
  }

  // (e) uniqueness.
  {
    std::vector<int> grid = opt.theta_grid;
    std::sort(grid.begin(), grid.end());
    const int theta_max = grid.empty() ? 0 : grid.back();
    // Exhaustive up to two million core pairs.
    const auto pairs = sample_pairs(core, std::max<std::uint64_t>(opt.sample_budget, 2000000), opt.seed ^ 0x222);
    std::vector<int> best_d(pairs.size(), 0), dist(pairs.size(), 0);
    parallel_for(pairs.size(), [&](std::size_t k) {
      const auto [x, y] = pairs[k];
      dist[k] = g.dist(x, y);
      int b = s.d(top, pi[top][x], pi[top][y]);
      for (std::size_t u = 0; u < m && b < theta_max; ++u) b = std::max(b, s.d(u, pi[u][x], pi[u][y]));
      best_d[k] = b;
    });
    int prev = 0;
    for (int theta : grid) {
      int t = 0;
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (best_d[k] < theta) t = std::max(t, dist[k]);
      rep.uniqueness.push_back({theta, t + 1});
      if (t + 1 < prev) rep.violations.push_back({"uniqueness_monotone", double(prev), double(t + 1), {}});
      prev = t + 1;
    }
  }

  // (f) complexity.
  rep.complexity = strict_chain_length(s.family().members) + 1;
  if (rep.complexity > fc.c + 1)
    rep.violations.push_back({"complexity", double(fc.c + 1), double(rep.complexity), {}});
  return rep;
}

}  // namespace coarseforge
