#include "coarseforge/deelect.hpp"

#include <algorithm>
#include <cmath>

namespace coarseforge {

QGMeasure measure_qg(const MetricGraph& host, const std::vector<Vertex>& path) {
  QGMeasure m;
  const std::size_t n = path.size();
  m.eps.assign(m.C_grid.size(), 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> arg(m.C_grid.size(), {0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint16_t* di = host.dist_row(path[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double len = static_cast<double>(j - i);
      const double d = di[path[j]];
      for (std::size_t c = 0; c < m.C_grid.size(); ++c) {
        const double e = len - m.C_grid[c] * d;
        if (e > m.eps[c]) {
          m.eps[c] = e;
          arg[c] = {i, j};
        }
      }
    }
  }
  std::size_t pick = m.C_grid.size() - 1;
  for (std::size_t c = 0; c + 1 < m.C_grid.size(); ++c)
    if (m.eps[c] <= m.eps[c + 1] + 1) {
      pick = c;
      break;
    }
  m.C = m.C_grid[pick];
  m.epsilon = m.eps[pick];
  m.worst_subpath = arg[pick];
  return m;
}

AlgoConstants algo_constants(int delta, int k) {
  if (delta < 0 || k < 0) throw ArgumentError("algo_constants: delta and K must be non-negative");
  AlgoConstants c;
  c.delta = delta;
  c.K = k;
  c.xi = 8 * delta + 1;
  c.d_prime = delta * (c.xi + 1);
  c.p = c.xi * (2 * delta * (c.xi + 1) + 1);
  c.D = std::max(delta * (c.p + 1), c.d_prime);
  c.Delta = c.D + 4 * delta;
  c.ball_radius = 3 * c.Delta;
  c.sweep_radius = std::max(1, c.ball_radius);
  return c;
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw ArgumentError("fitted_slope needs two or more (x, y) pairs");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx == 0 ? 0 : sxy / sxx;
}

namespace {

struct Cut {
  std::size_t a, b;  // tilde positions, a < b
};

// Nearest member of h to z in the coned metric, then base metric, then id.
Vertex nearest_in(const ConedGraph& cg, const VertexSet& h, Vertex z) {
  Vertex best = h.front();
  for (Vertex c : h) {
    const int dc = cg.dist_hat(z, c), db = cg.dist_hat(z, best);
    if (dc < db || (dc == db && cg.base().dist(z, c) < cg.base().dist(z, best))) best = c;
  }
  return best;
}

struct SpliceResult {
  VPath gamma;
  std::size_t last_end = 0;  // coned index of the last cut's far end
  std::size_t interruptions = 0;
};

// Replaces tilde[a..b] by a base geodesic for each cut, interrupting gamma where
// a cut end falls inside the replacement of a cone edge.
SpliceResult splice(const ConedGraph& cg, const VPath& gamma, const DeElectMap& m, const std::vector<Cut>& cuts) {
  SpliceResult res;
  std::vector<Vertex> out{gamma.vertices.front()};
  auto push = [&](Vertex v) {
    if (out.back() != v) out.push_back(v);
  };
  auto walk = [&](Vertex from, Vertex to) {
    for (Vertex v : cg.coned().geodesic(from, to)) push(v);
  };
  auto step_of = [&](std::size_t pos) {
    auto it = std::upper_bound(m.coned_pos.begin(), m.coned_pos.end(), pos);
    return static_cast<std::size_t>(it - m.coned_pos.begin()) - 1;
  };
  std::size_t cur = 0;
  for (const Cut& c : cuts) {
    const std::size_t ka = step_of(c.a);
    for (std::size_t k = cur + 1; k <= ka; ++k) push(gamma.vertices[k]);
    const Vertex za = m.tilde.vertices[c.a];
    if (m.coned_pos[ka] != c.a) {
      const VertexSet& h = cg.family()[static_cast<std::size_t>(gamma.step_labels[ka])].vertices;
      const Vertex zp = nearest_in(cg, h, za);
      push(zp);
      walk(zp, za);
      ++res.interruptions;
    }
    for (Vertex v : cg.base().geodesic(za, m.tilde.vertices[c.b])) push(v);
    const std::size_t kb = step_of(c.b);
    if (m.coned_pos[kb] != c.b) {
      const Vertex zb = m.tilde.vertices[c.b];
      const VertexSet& h = cg.family()[static_cast<std::size_t>(gamma.step_labels[kb])].vertices;
      const Vertex zp = nearest_in(cg, h, zb);
      walk(zb, zp);
      ++res.interruptions;
    }
    res.last_end = out.size() - 1;
    cur = kb;
  }
  for (std::size_t k = cur + 1; k < gamma.vertices.size(); ++k) push(gamma.vertices[k]);
  res.gamma = make_coned_path(cg, std::move(out));
  return res;
}

std::vector<std::size_t> owners(const VPath& p) {
  std::vector<std::size_t> owner(p.vertices.size(), 0);
  for (std::size_t k = 0; k < p.pieces.size(); ++k)
    for (std::size_t i = p.pieces[k].begin; i < p.pieces[k].end; ++i) owner[i] = k;
  if (!p.pieces.empty()) owner.back() = p.pieces.size() - 1;
  return owner;
}

std::size_t distinct_pieces(const std::vector<std::size_t>& owner, std::size_t i, std::size_t j) {
  std::vector<std::size_t> ids(owner.begin() + static_cast<std::ptrdiff_t>(i),
                               owner.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

}  // namespace

GoodQuasiGeodesic good_quasigeodesic(const ConedGraph& cg, Vertex x, Vertex y, const AlgoOptions& opt) {
  const MetricGraph& g = cg.base();
  if (x >= g.size() || y >= g.size()) throw ArgumentError("endpoint out of range");
  int k = 0;
  for (std::size_t i = 0; i < cg.family().size(); ++i) k = std::max(k, cg.member_coqc(static_cast<int>(i)));
  const int delta = opt.delta >= 0 ? opt.delta : static_cast<int>(hyperbolicity(g).delta_thin);
  GoodQuasiGeodesic res;
  res.constants = algo_constants(delta, k);
  const AlgoConstants& c = res.constants;

  const std::vector<Vertex> xy = g.geodesic(x, y);
  const std::vector<int> to_xy = distances_to_set(g, make_vertex_set(xy));
  VPath gamma = coned_geodesic(cg, x, y);

  // Step 1: components of tilde outside N_D([x,y]) with at least two pieces
  // are replaced by base geodesics between their neighbouring inside points.
  {
    DeElectMap m = total_deelectrification(cg, gamma);
    const auto owner = owners(m.tilde);
    const std::size_t n = m.tilde.vertices.size();
    std::vector<Cut> cuts;
    for (std::size_t i = 0; i < n;) {
      if (to_xy[m.tilde.vertices[i]] <= c.D) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && to_xy[m.tilde.vertices[j + 1]] > c.D) ++j;
      ++res.step1.components;
      if (distinct_pieces(owner, i, j) >= 2) cuts.push_back({i - 1, j + 1});
      i = j + 1;
    }
    res.step1.replaced = cuts.size();
    if (!cuts.empty()) {
      SpliceResult s = splice(cg, gamma, m, cuts);
      gamma = std::move(s.gamma);
      res.step1.interruptions = s.interruptions;
    }
    for (Vertex v : total_deelectrification(cg, gamma).tilde.vertices)
      res.step1.containment = std::max(res.step1.containment, to_xy[v]);
    res.step1.contained = res.step1.containment <= c.Delta;
    if (!res.step1.contained)
      res.violations.push_back({"step1_containment", double(c.Delta), double(res.step1.containment), {x, y}});
  }

  // Step 2: ball sweep.
  const int dxy = g.dist(x, y);
  const int r = c.sweep_radius;
  res.step2.t.push_back(x);
  if (dxy < c.ball_radius) {
    res.step2.skipped = true;
  } else {
    if (c.Delta >= 1) res.step2.step_bound = static_cast<std::size_t>((dxy + c.Delta - 1) / c.Delta) + 1;
    std::size_t t_pos = 0;
    const VertexSet xy_set = make_vertex_set(xy);
    std::size_t guard = 0;
    while (true) {
      DeElectMap m = total_deelectrification(cg, gamma);
      const VPath& tilde = m.tilde;
      const Vertex t = tilde.vertices[t_pos];
      if (g.dist(t, y) < r) break;
      if (++guard > 4 * (tilde.vertices.size() + 1)) {
        res.violations.push_back({"step2_termination", 0, double(guard), {x, y}});
        break;
      }
      const auto owner = owners(tilde);
      const std::uint16_t* dt = g.dist_row(t);
      const std::size_t n = tilde.vertices.size();
      std::vector<std::size_t> sphere;
      for (std::size_t i = t_pos + 1; i < n;) {
        if (dt[tilde.vertices[i]] < r) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j + 1 < n && dt[tilde.vertices[j + 1]] >= r) ++j;
        if (distinct_pieces(owner, i, j) >= 2 || j == n - 1)
          for (std::size_t q = i; q <= j; ++q)
            if (dt[tilde.vertices[q]] == r) sphere.push_back(q);
        i = j + 1;
      }
      if (sphere.empty()) {
        res.violations.push_back({"step2_empty_sphere", double(r), 0, {x, y, t}});
        break;
      }
      const std::size_t a = sphere.front(), b = sphere.back();
      Vertex next;
      if (a < b) {
        SpliceResult s = splice(cg, gamma, m, {{a, b}});
        gamma = std::move(s.gamma);
        ++res.step2.splices;
        DeElectMap after = total_deelectrification(cg, gamma);
        t_pos = after.coned_pos[s.last_end];
        next = after.tilde.vertices[t_pos];
      } else {
        t_pos = a;
        next = tilde.vertices[a];
      }
      const Vertex pt = project_canonical(g, xy_set, t), pn = project_canonical(g, xy_set, next);
      res.step2.advance.push_back(g.dist(pt, pn));
      res.step2.t.push_back(next);
    }
    if (c.Delta >= 1) {
      for (std::size_t i = 0; i + 1 < res.step2.advance.size(); ++i)
        if (res.step2.advance[i] < c.Delta)
          res.violations.push_back({"step2_advance", double(c.Delta), double(res.step2.advance[i]), {x, y}});
      if (res.step2.t.size() - 1 > res.step2.step_bound)
        res.violations.push_back(
            {"step2_steps", double(res.step2.step_bound), double(res.step2.t.size() - 1), {x, y}});
    }
  }

  res.gamma = gamma;
  DeElectSpec spec;
  spec.mode = opt.mode == DeElectMode::partial ? DeElectMode::total : opt.mode;
  res.tilde = de_electrify(cg, gamma, spec);
  res.constants.tau1 = measure_qg(cg.coned(), res.gamma.vertices);
  res.constants.tau2 = measure_qg(g, res.tilde.vertices);
  return res;
}

}  // namespace coarseforge
