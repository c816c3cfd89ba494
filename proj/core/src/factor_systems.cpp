#include "coarseforge/factor_systems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coarseforge/parallel.hpp"

namespace coarseforge {

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::factor: return "factor";
    case FamilyKind::weak: return "weak";
    case FamilyKind::geodesic_weak: return "geodesic-weak";
    default: return "unverified";
  }
}

bool FactorFamily::passed() const {
  return std::all_of(items.begin(), items.end(), [](const ItemResult& r) { return r.pass; });
}

std::vector<Violation> FactorFamily::violations() const {
  std::vector<Violation> out;
  for (const auto& r : items) out.insert(out.end(), r.violations.begin(), r.violations.end());
  return out;
}

int strict_chain_length(const std::vector<SubspaceRef>& members) {
  const std::size_t m = members.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return members[a].vertices.size() < members[b].vertices.size();
  });
  std::vector<int> len(m, 1);
  int best = m ? 1 : 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const auto& a = members[order[j]].vertices;
      const auto& b = members[order[i]].vertices;
      if (a.size() < b.size() && is_subset(a, b)) {
        len[i] = std::max(len[i], len[j] + 1);
        best = std::max(best, len[i]);
      }
    }
  return best;
}

namespace {

int measured_delta(const MetricGraph& g, int given) {
  if (given >= 0) return given;
  return static_cast<int>(std::ceil(hyperbolicity(g).delta_thin));
}

int max_gauge(const MetricGraph& g, const std::vector<SubspaceRef>& members) {
  std::vector<int> k(members.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) k[i] = quasiconvexity_gauge(g, members[i].vertices);
  return k.empty() ? 0 : *std::max_element(k.begin(), k.end());
}

// proj[i][j] = p_{W_i}(W_j) for i != j.
std::vector<std::vector<VertexSet>> pairwise_projections(const MetricGraph& g, const std::vector<SubspaceRef>& ms) {
  std::vector<std::vector<VertexSet>> proj(ms.size(), std::vector<VertexSet>(ms.size()));
  parallel_for(ms.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (i != j) proj[i][j] = project_set(g, ms[i].vertices, ms[j].vertices);
  });
  return proj;
}

// Least B such that each large projection is B-close to some candidate member.
// Candidates for W_i are the members contained in W_i, or all members.
ItemResult projection_closure(const MetricGraph& g, const std::vector<SubspaceRef>& ms,
                              const std::vector<std::vector<VertexSet>>& proj, int xi, bool inside_only,
                              const char* name) {
  const std::size_t m = ms.size();
  std::vector<int> need(m, 0);
  std::vector<std::pair<std::size_t, std::size_t>> arg(m, {0, 0});
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || set_diameter(g, proj[i][j]) <= xi) continue;
      int best = kUnreachable;
      for (std::size_t u = 0; u < m; ++u)
        if (!inside_only || is_subset(ms[u].vertices, ms[i].vertices))
          best = std::min(best, hausdorff(g, proj[i][j], ms[u].vertices));
      if (best > need[i]) {
        need[i] = best;
        arg[i] = {i, j};
      }
    }
  });
  ItemResult r{name, true, 0, {}};
  for (std::size_t i = 0; i < m; ++i) r.measured = std::max<double>(r.measured, need[i]);
  return r;
}

ItemResult qi_item(const MetricGraph& g, const std::vector<SubspaceRef>& ms, double& qi) {
  ItemResult r{"item1", true, 1, {}};
  std::vector<double> per(ms.size(), 1);
  std::vector<int> bad(ms.size(), 0);
  parallel_for(ms.size(), [&](std::size_t i) {
    const VertexSet& w = ms[i].vertices;
    if (!ms[i].connected) {
      bad[i] = 1;
      return;
    }
    MetricGraph sub = g.induced(w);
    double best = 1;
    for (Vertex a = 0; a < w.size(); ++a) {
      const std::uint16_t* da = g.dist_row(w[a]);
      for (Vertex b = a + 1; b < w.size(); ++b)
        best = std::max(best, sub.dist(a, b) / (da[w[b]] + 1.0));
    }
    per[i] = best;
  });
  for (std::size_t i = 0; i < ms.size(); ++i) {
    r.measured = std::max(r.measured, per[i]);
    if (bad[i]) {
      r.pass = false;
      r.violations.push_back({"item1_disconnected_member", 0, double(i), {static_cast<Vertex>(i)}});
    }
  }
  qi = r.measured;
  return r;
}

}  // namespace

FactorFamily check_factor_system(std::shared_ptr<const MetricGraph> host, std::vector<SubspaceRef> members,
                                 const FactorOptions& opt) {
  const MetricGraph& g = *host;
  FactorFamily f;
  f.host = host;
  f.members = std::move(members);
  const auto& ms = f.members;
  FamilyConstants& c = f.constants;
  c.delta = measured_delta(g, opt.delta);
  c.K = max_gauge(g, ms);
  c.xi = opt.xi >= 0 ? opt.xi : 8 * c.delta + 2 * c.K + 1;
  c.R_used = opt.R_used >= 0 ? opt.R_used : 2 * c.K + 8 * c.delta + 2;

  f.items.push_back(qi_item(g, ms, c.qi));
  if (!f.items.back().pass) return f;

  const auto proj = pairwise_projections(g, ms);
  f.items.push_back(projection_closure(g, ms, proj, c.xi, true, "item2"));
  c.B = static_cast<int>(f.items.back().measured);

  ItemResult item3{"item3", true, 0, {}};
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (i == j || is_subset(ms[i].vertices, ms[j].vertices)) continue;
      const int h = hausdorff(g, proj[i][j], ms[i].vertices);
      if (h <= c.B) {
        item3.pass = false;
        item3.violations.push_back({"item3", double(c.B), double(h), {Vertex(i), Vertex(j)}});
      }
    }
  f.items.push_back(item3);

  c.c = strict_chain_length(ms);
  f.items.push_back({"item4", true, double(c.c), {}});

  ItemResult item5{"item5", true, 0, {}};
  std::vector<std::vector<int>> haus(ms.size(), std::vector<int>(ms.size(), 0));
  parallel_for(ms.size(), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) haus[i][j] = hausdorff(g, ms[i].vertices, ms[j].vertices);
  });
  int closest = kUnreachable;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      closest = std::min(closest, haus[i][j]);
      if (haus[i][j] <= c.R_used)
        item5.violations.push_back({"item5", double(c.R_used), double(haus[i][j]), {Vertex(i), Vertex(j)}});
    }
  item5.pass = item5.violations.empty();
  item5.measured = ms.size() > 1 ? closest : 0;
  f.items.push_back(item5);

  if (f.passed()) f.kind = FamilyKind::factor;
  return f;
}

FactorFamily check_weak_factor_system(std::shared_ptr<const MetricGraph> host, std::vector<SubspaceRef> members,
                                      const WeakOptions& opt) {
  const MetricGraph& g = *host;
  FactorFamily f;
  f.host = host;
  f.members = std::move(members);
  const auto& ms = f.members;
  const std::size_t m = ms.size();
  FamilyConstants& c = f.constants;
  c.delta = measured_delta(g, opt.delta);
  c.K = max_gauge(g, ms);
  c.xi = opt.xi >= 0 ? opt.xi : 8 * c.delta + 2 * c.K + 1;
  c.R_used = opt.R_used >= 0 ? opt.R_used : 2 * c.K + 8 * c.delta + 2;
  c.d_prime = opt.d_prime >= 0 ? opt.d_prime : 2 * c.delta + c.K;
  c.q = 1;
  c.qi = 1;

  // Item 1: longest chain of proper coarse inclusions at R_used.
  {
    std::vector<std::vector<bool>> within(m, std::vector<bool>(m, false));
    parallel_for(m, [&](std::size_t j) {
      const std::vector<int> dj = distances_to_set(g, ms[j].vertices);
      for (std::size_t i = 0; i < m; ++i) {
        bool ok = true;
        for (Vertex v : ms[i].vertices)
          if (dj[v] > c.R_used) {
            ok = false;
            break;
          }
        within[i][j] = ok;
      }
    });
    std::vector<int> len(m, 1);
    bool changed = true;
    std::size_t rounds = 0;
    while (changed && rounds <= m) {
      changed = false;
      ++rounds;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (i != j && within[i][j] && !within[j][i] && len[j] < len[i] + 1) {
            len[j] = len[i] + 1;
            changed = true;
          }
    }
    ItemResult r{"item1", true, 0, {}};
    c.c = m ? *std::max_element(len.begin(), len.end()) : 0;
    r.measured = c.c;
    if (changed) {
      r.pass = false;
      r.violations.push_back({"item1_cycle", double(m), double(c.c), {}});
    }
    f.items.push_back(r);
  }

  // Item 2.
  const auto proj = pairwise_projections(g, ms);
  f.items.push_back(projection_closure(g, ms, proj, c.xi, false, "item2"));
  c.B = static_cast<int>(f.items.back().measured);

  // Item 3': for each v a geodesic with endpoints on V, passing within D' of v,
  // both endpoints at distance >= theta from v.
  {
    const std::uint16_t* d0 = g.dist_row(opt.base_point);
    const int ecc = g.eccentricity(opt.base_point);
    struct Out {
      std::vector<Violation> bad;
      int covered = kUnreachable;
    };
    std::vector<Out> per(m);
    parallel_for(m, [&](std::size_t mi) {
      const VertexSet& vs = ms[mi].vertices;
      Out out;
      // A member whose points are s apart may stop s - 1 short of the sphere.
      int spacing = 1;
      for (Vertex w : vs) {
        const std::uint16_t* dw = g.dist_row(w);
        int nearest = kUnreachable;
        for (Vertex u : vs)
          if (u != w) nearest = std::min<int>(nearest, dw[u]);
        if (nearest != kUnreachable) spacing = std::max(spacing, nearest);
      }
      for (Vertex v : vs) {
        const int target = std::min(opt.theta_max, ecc - (spacing - 1) - static_cast<int>(d0[v]));
        if (target <= 0) continue;
        const std::uint16_t* dv = g.dist_row(v);
        std::vector<Vertex> by_far(vs.begin(), vs.end());
        std::stable_sort(by_far.begin(), by_far.end(), [&](Vertex a, Vertex b) { return dv[a] > dv[b]; });
        std::vector<Vertex> near;
        for (Vertex w = 0; w < g.size(); ++w)
          if (dv[w] <= c.d_prime) near.push_back(w);
        int best = 0;
        for (std::size_t ia = 0; ia < by_far.size() && best < target; ++ia) {
          const Vertex a = by_far[ia];
          if (dv[a] <= best) break;
          const std::uint16_t* da = g.dist_row(a);
          for (std::size_t ib = ia + 1; ib < by_far.size(); ++ib) {
            const Vertex b = by_far[ib];
            if (dv[b] <= best) break;
            bool through = false;
            for (Vertex w : near)
              if (da[w] + g.dist(w, b) == da[b]) {
                through = true;
                break;
              }
            if (through) {
              best = std::min<int>(dv[a], dv[b]);
              break;
            }
          }
        }
        out.covered = std::min(out.covered, std::min(best, target));
        if (best < target) out.bad.push_back({"condition3", double(best + 1), double(best), {v}});
      }
      per[mi] = std::move(out);
    });
    ItemResult r{"item3", true, 0, {}};
    int covered = kUnreachable;
    for (std::size_t i = 0; i < m; ++i) {
      covered = std::min(covered, per[i].covered);
      for (auto& v : per[i].bad) {
        v.witnesses.push_back(static_cast<Vertex>(i));
        r.violations.push_back(std::move(v));
      }
    }
    r.pass = r.violations.empty();
    r.measured = covered == kUnreachable ? 0 : covered;
    f.items.push_back(r);
  }

  if (f.passed()) f.kind = FamilyKind::geodesic_weak;
  return f;
}

VertexSet approx_r(const MetricGraph& g, const VertexSet& q, int r) {
  if (q.empty()) throw ArgumentError("approx_r of an empty set");
  if (r <= 0) return q;
  const std::vector<int> dq = distances_to_set(g, q);
  std::vector<Vertex> cand;
  for (Vertex w = 0; w < g.size(); ++w)
    if (dq[w] > 0 && 2 * dq[w] <= r) cand.push_back(w);
  std::vector<char> keep(cand.size(), 0);
  parallel_for(cand.size(), [&](std::size_t i) {
    const std::uint16_t* dw = g.dist_row(cand[i]);
    std::vector<Vertex> near;
    for (Vertex a : q)
      if (dw[a] <= r) near.push_back(a);
    for (std::size_t x = 0; x < near.size() && !keep[i]; ++x) {
      const std::uint16_t* da = g.dist_row(near[x]);
      for (std::size_t y = x + 1; y < near.size(); ++y) {
        const int d = da[near[y]];
        if (d <= r && dw[near[x]] + dw[near[y]] == d) {
          keep[i] = 1;
          break;
        }
      }
    }
  });
  std::vector<Vertex> out(q.begin(), q.end());
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (keep[i]) out.push_back(cand[i]);
  return make_vertex_set(std::move(out));
}

EquivClasses equivalence_classes(const MetricGraph& g, const std::vector<SubspaceRef>& ms, int r) {
  if (r < 0) throw ArgumentError("negative Hausdorff threshold");
  const std::size_t m = ms.size();
  std::vector<std::vector<int>> haus(m, std::vector<int>(m, 0));
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) haus[i][j] = hausdorff(g, ms[i].vertices, ms[j].vertices);
  });
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (haus[i][j] <= r) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  EquivClasses ec;
  ec.R_used = r;
  ec.class_of.assign(m, 0);
  std::vector<std::size_t> root_class(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = find(i);
    if (root_class[root] == m) {
      root_class[root] = ec.classes.size();
      ec.classes.emplace_back();
      ec.representative.push_back(i);
    }
    ec.class_of[i] = root_class[root];
    ec.classes[root_class[root]].push_back(i);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (ec.class_of[i] == ec.class_of[j]) ec.max_intra_hausdorff = std::max(ec.max_intra_hausdorff, haus[i][j]);
  ec.closure_flagged = ec.max_intra_hausdorff > r;

  const std::size_t k = ec.classes.size();
  std::vector<VertexSet> unions(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Vertex> all;
    for (std::size_t i : ec.classes[c]) all.insert(all.end(), ms[i].vertices.begin(), ms[i].vertices.end());
    unions[c] = make_vertex_set(std::move(all));
  }
  ec.below.assign(k, std::vector<bool>(k, false));
  std::vector<std::vector<char>> below(k, std::vector<char>(k, 0));
  parallel_for(k, [&](std::size_t cj) {
    const std::vector<int> dj = distances_to_set(g, unions[cj]);
    for (std::size_t ci = 0; ci < k; ++ci) {
      bool ok = true;
      for (Vertex v : unions[ci])
        if (dj[v] > r) {
          ok = false;
          break;
        }
      below[ci][cj] = ok;
    }
  });
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      ec.below[a][b] = below[a][b] != 0;
      if (a != b && below[a][b] && below[b][a]) ec.antisymmetric = false;
    }
  return ec;
}

PromotedMember build_P(const MetricGraph& g, const std::vector<SubspaceRef>& ms, const EquivClasses& ec,
                       std::size_t class_id, int zeta) {
  if (class_id >= ec.classes.size()) throw ArgumentError("class index out of range");
  std::vector<Vertex> all;
  for (std::size_t c = 0; c < ec.classes.size(); ++c)
    if (ec.below[c][class_id])
      for (std::size_t i : ec.classes[c]) all.insert(all.end(), ms[i].vertices.begin(), ms[i].vertices.end());
  const VertexSet u = make_vertex_set(std::move(all));
  PromotedMember pm;
  pm.zeta_requested = std::max(0, zeta);
  pm.zeta_used = pm.zeta_requested;
  const int cap = g.diameter();
  VertexSet p = approx_r(g, u, pm.zeta_used);
  while (!make_subspace(g, "", p).connected && pm.zeta_used < cap) p = approx_r(g, u, ++pm.zeta_used);
  pm.member = make_subspace(g, "P[" + ms[ec.representative[class_id]].name + "]", p);
  for (std::size_t i : ec.classes[class_id])
    pm.max_hausdorff = std::max(pm.max_hausdorff, hausdorff(g, ms[i].vertices, pm.member.vertices));
  pm.within_zeta = pm.max_hausdorff <= pm.zeta_used;
  return pm;
}

Promotion promote(const FactorFamily& weak, const FactorOptions& opt) {
  if (weak.kind != FamilyKind::weak && weak.kind != FamilyKind::geodesic_weak)
    throw ArgumentError("promote needs a family that passed the weak check");
  const MetricGraph& g = *weak.host;
  const FamilyConstants& wc = weak.constants;
  Promotion pr;
  pr.classes = equivalence_classes(g, weak.members, wc.R_used);
  const int zeta = 2 * wc.delta + wc.d_prime + wc.K;
  std::vector<SubspaceRef> ps;
  for (std::size_t c = 0; c < pr.classes.classes.size(); ++c) {
    pr.promoted.push_back(build_P(g, weak.members, pr.classes, c, zeta));
    if (!pr.promoted.back().within_zeta)
      pr.violations.push_back({"P_hausdorff", double(pr.promoted.back().zeta_used),
                               double(pr.promoted.back().max_hausdorff), {Vertex(c)}});
    ps.push_back(pr.promoted.back().member);
  }
  FactorOptions fo = opt;
  if (fo.delta < 0) fo.delta = wc.delta;
  if (fo.R_used < 0) fo.R_used = wc.R_used;
  pr.family = check_factor_system(weak.host, ps, fo);

  // P_V coarsely in P_W  <=>  [V] below [W]  <=>  P_V inside P_W; and
  // P_V coarsely in p_{P_V}(P_W)  =>  [V] below [W].
  const int r = wc.R_used;
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b) {
      if (a == b) continue;
      const bool coarse = coarse_inclusion(g, ps[a].vertices, ps[b].vertices, r) != Inclusion::neither;
      const bool order = pr.classes.below[a][b];
      const bool sub = is_subset(ps[a].vertices, ps[b].vertices);
      if (coarse != order || order != sub)
        pr.violations.push_back({"P_order_equivalence", 0, double(coarse) + 2 * order + 4 * sub, {Vertex(a), Vertex(b)}});
      const VertexSet p = project_set(g, ps[a].vertices, ps[b].vertices);
      if (coarse_inclusion(g, ps[a].vertices, p, r) != Inclusion::neither && !order)
        pr.violations.push_back({"P_projection_order", 0, 1, {Vertex(a), Vertex(b)}});
    }
  return pr;
}

FactorFamily sub_factor_system(const FactorFamily& family, std::size_t w, const FactorOptions& opt) {
  if (w >= family.members.size()) throw ArgumentError("member index out of range");
  const VertexSet& wv = family.members[w].vertices;
  auto sub = std::make_shared<const MetricGraph>(family.host->induced(wv));
  std::vector<SubspaceRef> inner;
  for (const auto& u : family.members) {
    if (u.vertices.size() >= wv.size() || !is_subset(u.vertices, wv)) continue;
    std::vector<Vertex> local;
    for (Vertex v : u.vertices)
      local.push_back(static_cast<Vertex>(std::lower_bound(wv.begin(), wv.end(), v) - wv.begin()));
    inner.push_back(make_subspace(*sub, u.name, std::move(local)));
  }
  return check_factor_system(sub, std::move(inner), opt);
}

}  // namespace coarseforge
