#include "coarseforge/coning.hpp"

#include <algorithm>
#include <map>

#include "coarseforge/parallel.hpp"

namespace coarseforge {

namespace {

MetricGraph build_coned(const MetricGraph& base, const std::vector<SubspaceRef>& family,
                        std::vector<ConeEdge>& cone_edges) {
  std::map<Edge, std::vector<int>> labels;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& vs = family[i].vertices;
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (!base.adjacent(vs[a], vs[b])) labels[{vs[a], vs[b]}].push_back(static_cast<int>(i));
  }
  std::vector<Edge> edges = base.edges();
  cone_edges.clear();
  cone_edges.reserve(labels.size());
  for (auto& [e, l] : labels) {
    edges.push_back(e);
    cone_edges.push_back({e.first, e.second, std::move(l)});
  }
  return MetricGraph(base.size(), std::move(edges));
}

Vertex local_id(const VertexSet& s, Vertex v) {
  return static_cast<Vertex>(std::lower_bound(s.begin(), s.end(), v) - s.begin());
}

void append_step(VPath& p, Vertex v, int label) {
  p.vertices.push_back(v);
  p.step_labels.push_back(label);
}

// Splits the base run ending at the path's tail into maximal geodesic pieces.
void push_base_pieces(const MetricGraph& g, VPath& p, std::size_t begin, std::size_t end) {
  std::size_t start = begin;
  for (std::size_t i = begin + 1; i <= end; ++i) {
    if (g.dist(p.vertices[start], p.vertices[i]) != static_cast<int>(i - start)) {
      p.pieces.push_back({start, i - 1, kNoLabel});
      start = i - 1;
    }
  }
  if (end > start) p.pieces.push_back({start, end, kNoLabel});
}

}  // namespace

ConedGraph::ConedGraph(std::shared_ptr<const MetricGraph> base, std::vector<SubspaceRef> family)
    : base_(std::move(base)), family_(std::move(family)) {
  for (const auto& f : family_) {
    if (f.vertices.empty()) throw ArgumentError("family member '" + f.name + "' is empty");
    if (f.vertices.back() >= base_->size()) throw ArgumentError("family member '" + f.name + "' out of range");
  }
  coned_ = build_coned(*base_, family_, cone_edges_);
  member_of_.assign(base_->size(), {});
  for (std::size_t i = 0; i < family_.size(); ++i)
    for (Vertex v : family_[i].vertices) member_of_[v].push_back(static_cast<int>(i));
  nested_.assign(family_.size(), {});
  for (std::size_t w = 0; w < family_.size(); ++w)
    for (std::size_t u = 0; u < family_.size(); ++u)
      if (u != w && family_[u].vertices != family_[w].vertices && is_subset(family_[u].vertices, family_[w].vertices))
        nested_[w].push_back(static_cast<int>(u));
  for (std::size_t i = 0; i < family_.size(); ++i) lazy_.push_back(std::make_unique<Lazy>());
}

int ConedGraph::step_label(Vertex u, Vertex v) const {
  if (base_->adjacent(u, v)) return kNoLabel;
  const auto& a = member_of_[u];
  const auto& b = member_of_[v];
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return a[i];
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return -2;
}

const MetricGraph& ConedGraph::member_graph(int w) const {
  Lazy& l = *lazy_[static_cast<std::size_t>(w)];
  std::call_once(l.graph_once, [&] {
    l.graph = std::make_unique<MetricGraph>(base_->induced(family_[static_cast<std::size_t>(w)].vertices));
  });
  return *l.graph;
}

const ConedGraph& ConedGraph::member_cone(int w) const {
  Lazy& l = *lazy_[static_cast<std::size_t>(w)];
  std::call_once(l.cone_once, [&] {
    const VertexSet& wv = family_[static_cast<std::size_t>(w)].vertices;
    std::vector<SubspaceRef> inner;
    for (int u : nested_[static_cast<std::size_t>(w)]) {
      SubspaceRef s;
      s.name = family_[static_cast<std::size_t>(u)].name;
      for (Vertex v : family_[static_cast<std::size_t>(u)].vertices) s.vertices.push_back(local_id(wv, v));
      inner.push_back(std::move(s));
    }
    l.cone = std::make_unique<ConedGraph>(std::make_shared<MetricGraph>(member_graph(w)), std::move(inner));
  });
  return *l.cone;
}

int ConedGraph::member_coqc(int w) const {
  Lazy& l = *lazy_[static_cast<std::size_t>(w)];
  std::call_once(l.coqc_once, [&] { l.coqc = coqc_gauge(*this, family_[static_cast<std::size_t>(w)].vertices); });
  return l.coqc;
}

VPath make_coned_path(const ConedGraph& cg, std::vector<Vertex> vertices) {
  if (vertices.empty()) throw ArgumentError("empty path");
  VPath p;
  p.host = Host::coned;
  p.vertices = std::move(vertices);
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    int l = cg.step_label(p.vertices[i], p.vertices[i + 1]);
    if (l == -2)
      throw ArgumentError("vertices " + std::to_string(p.vertices[i]) + " and " + std::to_string(p.vertices[i + 1]) +
                          " are not adjacent in the coned graph");
    p.step_labels.push_back(l);
  }
  return p;
}

VPath coned_geodesic(const ConedGraph& cg, Vertex x, Vertex y) {
  return make_coned_path(cg, cg.coned().geodesic(x, y));
}

VPath make_base_path(const MetricGraph& g, std::vector<Vertex> vertices) {
  if (vertices.empty()) throw ArgumentError("empty path");
  VPath p;
  p.vertices = std::move(vertices);
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (!g.adjacent(p.vertices[i], p.vertices[i + 1]))
      throw ArgumentError("vertices " + std::to_string(p.vertices[i]) + " and " + std::to_string(p.vertices[i + 1]) +
                          " are not adjacent");
    p.step_labels.push_back(kNoLabel);
  }
  push_base_pieces(g, p, 0, p.length());
  return p;
}

namespace {

VPath expand(const ConedGraph& cg, const VPath& gamma, DeElectMode mode, std::vector<std::size_t>* coned_pos) {
  VPath out;
  out.host = Host::base;
  out.vertices.push_back(gamma.vertices.front());
  if (coned_pos) coned_pos->assign(1, 0);
  std::size_t run_begin = 0;
  bool in_run = false;
  for (std::size_t k = 0; k + 1 < gamma.vertices.size(); ++k) {
    const Vertex u = gamma.vertices[k], v = gamma.vertices[k + 1];
    const int label = k < gamma.step_labels.size() ? gamma.step_labels[k] : cg.step_label(u, v);
    if (label == kNoLabel) {
      if (!in_run) {
        run_begin = out.vertices.size() - 1;
        in_run = true;
      }
      append_step(out, v, kNoLabel);
    } else {
      if (in_run) {
        push_base_pieces(cg.base(), out, run_begin, out.vertices.size() - 1);
        in_run = false;
      }
      std::vector<Vertex> eta;
      if (mode == DeElectMode::embedded) {
        const VertexSet& members = cg.family()[static_cast<std::size_t>(label)].vertices;
        for (Vertex w : cg.member_graph(label).geodesic(local_id(members, u), local_id(members, v)))
          eta.push_back(members[w]);
      } else {
        eta = cg.base().geodesic(u, v);
      }
      const std::size_t begin = out.vertices.size() - 1;
      for (std::size_t i = 1; i < eta.size(); ++i) append_step(out, eta[i], label);
      out.pieces.push_back({begin, out.vertices.size() - 1, label});
    }
    if (coned_pos) coned_pos->push_back(out.vertices.size() - 1);
  }
  if (in_run) push_base_pieces(cg.base(), out, run_begin, out.vertices.size() - 1);
  return out;
}

// One level of partial de-electrification: every cone edge labelled W becomes
// the canonical geodesic of W coned along its nested members.
VPath partial_level(const ConedGraph& cg, const VPath& gamma) {
  VPath out;
  out.host = Host::base;
  out.vertices.push_back(gamma.vertices.front());
  for (std::size_t k = 0; k + 1 < gamma.vertices.size(); ++k) {
    const Vertex u = gamma.vertices[k], v = gamma.vertices[k + 1];
    const int label = gamma.step_labels[k];
    const std::size_t begin = out.vertices.size() - 1;
    if (label == kNoLabel) {
      append_step(out, v, kNoLabel);
      out.pieces.push_back({begin, begin + 1, kNoLabel});
      continue;
    }
    const VertexSet& members = cg.family()[static_cast<std::size_t>(label)].vertices;
    const ConedGraph& local = cg.member_cone(label);
    const auto& inner = cg.nested_in(label);
    VPath eta = coned_geodesic(local, local_id(members, u), local_id(members, v));
    for (std::size_t i = 0; i + 1 < eta.vertices.size(); ++i) {
      const int l = eta.step_labels[i];
      append_step(out, members[eta.vertices[i + 1]], l == kNoLabel ? kNoLabel : inner[static_cast<std::size_t>(l)]);
      if (l != kNoLabel) out.host = Host::coned;
    }
    out.pieces.push_back({begin, out.vertices.size() - 1, label});
  }
  return out;
}

}  // namespace

VPath de_electrify(const ConedGraph& cg, const VPath& gamma, const DeElectSpec& spec) {
  if (gamma.vertices.empty()) throw ArgumentError("empty path");
  if (spec.mode != DeElectMode::partial) return expand(cg, gamma, spec.mode, nullptr);
  if (spec.level < 1) throw ArgumentError("partial de-electrification needs level >= 1");
  VPath cur = gamma;
  if (cur.step_labels.size() + 1 != cur.vertices.size()) cur = make_coned_path(cg, cur.vertices);
  for (int i = 0; i < spec.level; ++i) cur = partial_level(cg, cur);
  return cur;
}

DeElectMap total_deelectrification(const ConedGraph& cg, const VPath& gamma) {
  DeElectMap m;
  m.tilde = expand(cg, gamma, DeElectMode::total, &m.coned_pos);
  return m;
}

VPath interrupt(const ConedGraph& cg, const VPath& input, const std::vector<std::size_t>& tilde_positions) {
  const VPath gamma = make_coned_path(cg, input.vertices);
  DeElectMap m = total_deelectrification(cg, gamma);
  // Group interior positions by the cone step whose replacement holds them.
  std::map<std::size_t, std::vector<std::size_t>> by_step;
  for (std::size_t pos : tilde_positions) {
    if (pos >= m.tilde.vertices.size()) throw ArgumentError("interruption point out of range");
    auto it = std::upper_bound(m.coned_pos.begin(), m.coned_pos.end(), pos);
    const std::size_t k = static_cast<std::size_t>(it - m.coned_pos.begin()) - 1;
    const bool on_vertex = m.coned_pos[k] == pos;
    const bool on_piece =
        (k < gamma.step_labels.size() && gamma.step_labels[k] != kNoLabel) ||
        (on_vertex && k > 0 && gamma.step_labels[k - 1] != kNoLabel);
    if (!on_piece) throw ArgumentError("interruption point " + std::to_string(pos) + " is not on an H-piece");
    if (!on_vertex) by_step[k].push_back(pos);
  }
  VPath out;
  out.host = Host::coned;
  out.vertices.push_back(gamma.vertices.front());
  int k_max = 0;
  auto walk = [&](Vertex from, Vertex to) {
    std::vector<Vertex> path = cg.coned().geodesic(from, to);
    for (std::size_t i = 1; i < path.size(); ++i) out.vertices.push_back(path[i]);
  };
  for (std::size_t k = 0; k + 1 < gamma.vertices.size(); ++k) {
    auto it = by_step.find(k);
    if (it == by_step.end()) {
      out.vertices.push_back(gamma.vertices[k + 1]);
      continue;
    }
    const int label = gamma.step_labels[k];
    const VertexSet& h = cg.family()[static_cast<std::size_t>(label)].vertices;
    k_max = std::max(k_max, cg.member_coqc(label));
    auto pos = it->second;
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    for (std::size_t p : pos) {
      const Vertex z = m.tilde.vertices[p];
      // Nearest point of H in the coned metric, base distance then id breaking ties.
      Vertex zp = h.front();
      for (Vertex c : h) {
        const int dc = cg.dist_hat(z, c), db = cg.dist_hat(z, zp);
        if (dc < db || (dc == db && cg.base().dist(z, c) < cg.base().dist(z, zp))) zp = c;
      }
      if (out.vertices.back() != zp) out.vertices.push_back(zp);
      walk(zp, z);
      walk(z, zp);
    }
    if (out.vertices.back() != gamma.vertices[k + 1]) out.vertices.push_back(gamma.vertices[k + 1]);
  }
  VPath result = make_coned_path(cg, std::move(out.vertices));
  const std::size_t bound = gamma.length() + tilde_positions.size() * static_cast<std::size_t>(2 * k_max + 1);
  if (result.length() > bound)
    throw InvariantError("interruption grew the path beyond L + |S|(2K+1): " + std::to_string(result.length()) +
                         " > " + std::to_string(bound));
  return result;
}

int coqc_gauge(const ConedGraph& cg, const VertexSet& s) {
  if (s.empty()) throw ArgumentError("gauge of an empty set");
  const std::vector<int> dhat = distances_to_set(cg.coned(), s);
  std::vector<Vertex> far;
  for (Vertex v = 0; v < cg.base().size(); ++v)
    if (dhat[v] > 0) far.push_back(v);
  std::stable_sort(far.begin(), far.end(), [&](Vertex a, Vertex b) { return dhat[a] > dhat[b]; });
  if (far.empty()) return 0;
  const MetricGraph& g = cg.base();
  std::vector<int> per(s.size(), 0);
  parallel_for(s.size(), [&](std::size_t i) {
    const std::uint16_t* d1 = g.dist_row(s[i]);
    int best = 0;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const std::uint16_t* d2 = g.dist_row(s[j]);
      const int d = d1[s[j]];
      for (Vertex v : far) {
        if (dhat[v] <= best) break;
        if (d1[v] + d2[v] == d) {
          best = dhat[v];
          break;
        }
      }
    }
    per[i] = best;
  });
  return *std::max_element(per.begin(), per.end());
}

std::vector<VPath> coned_geodesics(const ConedGraph& cg, Vertex x, Vertex y, std::size_t cap) {
  std::vector<VPath> out;
  if (cap == 0) return out;
  const MetricGraph& h = cg.coned();
  std::vector<Vertex> canonical = h.geodesic(x, y);
  out.push_back(make_coned_path(cg, canonical));
  const std::uint16_t* dy = h.dist_row(y);
  std::vector<Vertex> stack{x};
  // Depth-first walk of the geodesic DAG in ascending neighbour order.
  auto dfs = [&](auto&& self) -> void {
    if (out.size() >= cap) return;
    const Vertex u = stack.back();
    if (u == y) {
      if (stack != canonical) out.push_back(make_coned_path(cg, stack));
      return;
    }
    for (Vertex w : h.neighbors(u)) {
      if (dy[w] + 1 != dy[u]) continue;
      stack.push_back(w);
      self(self);
      stack.pop_back();
      if (out.size() >= cap) return;
    }
  };
  dfs(dfs);
  return out;
}

PigeonholeReport pigeonhole_check(const ConedGraph& cg, int theta, const VertexSet& vertices, std::size_t alternates) {
  if (theta <= 1) throw ArgumentError("pigeonhole check needs theta > 1");
  PigeonholeReport rep;
  rep.theta = theta;
  rep.threshold = 2 * theta * theta;
  struct Partial {
    std::size_t pairs = 0, paths = 0;
    std::vector<Violation> violations;
  };
  std::vector<Partial> per(vertices.size());
  parallel_for(vertices.size(), [&](std::size_t i) {
    Partial& part = per[i];
    const Vertex x = vertices[i];
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const Vertex y = vertices[j];
      if (cg.base().dist(x, y) < rep.threshold) continue;
      ++part.pairs;
      // Every coned geodesic has length d_hat(x, y): the length branch settles all of them at once.
      if (cg.dist_hat(x, y) >= theta) continue;
      for (const VPath& gamma : coned_geodesics(cg, x, y, alternates + 1)) {
        ++part.paths;
        VPath tilde = de_electrify(cg, gamma);
        bool long_piece = false;
        for (const Piece& pc : tilde.pieces)
          if (pc.label != kNoLabel && static_cast<int>(pc.end - pc.begin) >= theta) long_piece = true;
        if (!long_piece)
          part.violations.push_back({"pigeonhole", double(theta), double(gamma.length()), {x, y}});
      }
    }
  });
  for (auto& p : per) {
    rep.pairs_checked += p.pairs;
    rep.paths_checked += p.paths;
    for (auto& v : p.violations) rep.violations.push_back(std::move(v));
  }
  return rep;
}

namespace {

// Index of the piece owning vertex i: the piece where i is not the final vertex,
// or the last piece for the path's end.
std::vector<std::size_t> piece_owner(const VPath& p) {
  std::vector<std::size_t> owner(p.vertices.size(), 0);
  for (std::size_t k = 0; k < p.pieces.size(); ++k)
    for (std::size_t i = p.pieces[k].begin; i < p.pieces[k].end; ++i) owner[i] = k;
  if (!p.pieces.empty()) owner.back() = p.pieces.size() - 1;
  return owner;
}

}  // namespace

NineteenReport nineteen_pieces_check(const ConedGraph& cg, int delta,
                                     const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  NineteenReport rep;
  rep.delta = delta;
  rep.xi = 8 * delta + 1;
  rep.d_prime = delta * (rep.xi + 1);
  rep.p = rep.xi * (2 * delta * (rep.xi + 1) + 1);
  rep.d = std::max(delta * (rep.p + 1), rep.d_prime);
  rep.pairs = pairs.size();
  const MetricGraph& g = cg.base();
  struct Local {
    int pieces = 0, gap = 0, escape = 0;
    std::vector<Violation> violations;
  };
  std::vector<Local> per(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t idx) {
    const auto [x, y] = pairs[idx];
    Local& out = per[idx];
    const VPath tilde = de_electrify(cg, coned_geodesic(cg, x, y));
    const std::vector<Vertex> xy = g.geodesic(x, y);
    const std::vector<int> to_xy = distances_to_set(g, make_vertex_set(xy));
    const std::vector<std::size_t> owner = piece_owner(tilde);
    const std::size_t n = tilde.vertices.size();
    auto components = [&](int radius, auto&& visit) {
      std::size_t i = 0;
      while (i < n) {
        if (to_xy[tilde.vertices[i]] <= radius) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j + 1 < n && to_xy[tilde.vertices[j + 1]] > radius) ++j;
        visit(i, j);
        i = j + 1;
      }
    };
    components(rep.d_prime, [&](std::size_t i, std::size_t j) {
      std::vector<std::size_t> ids(owner.begin() + static_cast<std::ptrdiff_t>(i),
                                   owner.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      std::sort(ids.begin(), ids.end());
      const int count = static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
      out.pieces = std::max(out.pieces, count);
      if (count > rep.p) out.violations.push_back({"nineteen_pieces", double(rep.p), double(count), {x, y}});
    });
    components(rep.d, [&](std::size_t i, std::size_t j) {
      const int gap = g.dist(tilde.vertices[i], tilde.vertices[j]);
      out.gap = std::max(out.gap, gap);
      if (gap > 2 * rep.d + 8 * delta)
        out.violations.push_back({"component_endpoints", double(2 * rep.d + 8 * delta), double(gap), {x, y}});
    });
    const VertexSet tv = make_vertex_set(tilde.vertices);
    for (Vertex s : xy) out.escape = std::max(out.escape, g.dist_to_set(s, tv));
    if (out.escape > 10 * delta + rep.d)
      out.violations.push_back({"geodesic_in_neighbourhood", double(10 * delta + rep.d), double(out.escape), {x, y}});
  });
  for (auto& l : per) {
    rep.max_pieces = std::max(rep.max_pieces, l.pieces);
    rep.max_endpoint_gap = std::max(rep.max_endpoint_gap, l.gap);
    rep.max_geodesic_escape = std::max(rep.max_geodesic_escape, l.escape);
    for (auto& v : l.violations) rep.violations.push_back(std::move(v));
  }
  return rep;
}

}  // namespace coarseforge
