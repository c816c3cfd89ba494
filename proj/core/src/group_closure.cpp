#include "coarseforge/group_closure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "coarseforge/factor_systems.hpp"
#include "coarseforge/parallel.hpp"

namespace coarseforge {

std::vector<std::string> subgroup_elements(const Rewriter& rw, const Subgroup& h, int max_len) {
  std::vector<std::string> gens;
  std::size_t longest = 0;
  for (const auto& w : h) {
    std::string g = rw.reduce(w);
    if (g.empty()) continue;
    longest = std::max(longest, g.size());
    gens.push_back(g);
    gens.push_back(rw.reduce(Rewriter::inverse(g)));
  }
  const std::size_t cap = static_cast<std::size_t>(std::max(0, max_len)) + longest;
  std::unordered_set<std::string> seen{""};
  std::vector<std::string> queue{""};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::string w = queue[head];
    for (const auto& s : gens) {
      std::string u = rw.reduce(w + s);
      if (u.size() > cap || seen.count(u)) continue;
      seen.insert(u);
      queue.push_back(std::move(u));
    }
  }
  std::vector<std::string> out;
  for (auto& w : queue)
    if (static_cast<int>(w.size()) <= max_len) out.push_back(w);
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) { return rw.shortlex_less(a, b); });
  return out;
}

std::vector<SubspaceRef> CosetFamily::members() const {
  std::vector<SubspaceRef> out;
  out.reserve(cosets.size());
  for (const auto& c : cosets) out.push_back(c.subspace);
  return out;
}

namespace {

bool reaches_boundary(const CayleyBall& ball, const VertexSet& s) {
  for (Vertex v : s)
    if (static_cast<int>(ball.words[v].size()) >= ball.radius) return true;
  return false;
}

// {g x : x in elems} inside the ball, or {g x g^-1} when conjugating.
VertexSet translate(const CayleyBall& ball, const std::string& g, const std::vector<std::string>& elems,
                    bool conjugate) {
  const std::string gi = Rewriter::inverse(g);
  std::vector<Vertex> out;
  for (const auto& x : elems) {
    const std::int64_t v = ball.find(conjugate ? g + x + gi : g + x);
    if (v >= 0) out.push_back(static_cast<Vertex>(v));
  }
  return make_vertex_set(std::move(out));
}

}  // namespace

CosetFamily coset_family(std::shared_ptr<const CayleyBall> ball, std::vector<Subgroup> subgroups,
                         const CosetOptions& opt) {
  const CayleyBall& b = *ball;
  const MetricGraph& g = b.graph;
  CosetFamily f;
  f.ball = ball;
  f.subgroups = std::move(subgroups);
  f.core = opt.core >= 0 ? std::min(opt.core, b.radius) : b.radius / 2;
  std::map<VertexSet, std::size_t> seen;
  for (std::size_t k = 0; k < f.subgroups.size(); ++k) {
    const auto elems = subgroup_elements(b.rewriter, f.subgroups[k], b.radius + f.core);
    bool nontrivial = false;
    for (const auto& e : elems)
      if (!e.empty() && static_cast<int>(e.size()) <= b.radius) nontrivial = true;
    if (!nontrivial) throw ArgumentError("subgroup " + std::to_string(k) + " is trivial in the ball");
    for (Vertex v = 0; v < b.words.size(); ++v) {
      if (static_cast<int>(b.words[v].size()) > f.core) continue;
      VertexSet s = translate(b, b.words[v], elems, false);
      if (seen.count(s)) continue;
      seen.emplace(s, f.cosets.size());
      Coset c;
      c.subgroup = k;
      c.representative = b.words[s.front()];
      for (Vertex u : s)
        if (b.rewriter.shortlex_less(b.words[u], c.representative)) c.representative = b.words[u];
      c.touches_boundary = reaches_boundary(b, s);
      c.subspace = make_subspace(g, "H" + std::to_string(k) + ":" + (c.representative.empty() ? "1" : c.representative),
                                 std::move(s));
      f.cosets.push_back(std::move(c));
    }
  }
  f.delta = opt.delta >= 0 ? opt.delta : static_cast<int>(std::ceil(hyperbolicity(g).delta_thin));
  std::vector<int> k(f.cosets.size(), 0);
  parallel_for(f.cosets.size(), [&](std::size_t i) { k[i] = quasiconvexity_gauge(g, f.cosets[i].subspace.vertices); });
  for (int x : k) f.K = std::max(f.K, x);
  f.xi_threshold = opt.xi >= 0 ? opt.xi : 8 * f.delta + 2 * f.K + 1;
  return f;
}

std::vector<ProximalPair> proximal_pairs(const CosetFamily& f) {
  const MetricGraph& g = f.ball->graph;
  const std::size_t m = f.cosets.size();
  std::vector<std::vector<ProximalPair>> per(m);
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const int d = set_diameter(g, project_set(g, f.cosets[i].subspace.vertices, f.cosets[j].subspace.vertices));
      if (d >= f.xi_threshold) per[i].push_back({i, j, d});
    }
  });
  std::vector<ProximalPair> out;
  for (auto& p : per) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Intersection intersection_approx(const CosetFamily& f, std::size_t i, std::size_t j) {
  if (i >= f.cosets.size() || j >= f.cosets.size() || i == j) throw ArgumentError("bad coset pair");
  const CayleyBall& b = *f.ball;
  const MetricGraph& g = b.graph;
  const Rewriter& rw = b.rewriter;
  const Coset& ci = f.cosets[i];
  const Coset& cj = f.cosets[j];
  const VertexSet proj = project_set(g, ci.subspace.vertices, cj.subspace.vertices);
  if (set_diameter(g, proj) < f.xi_threshold) throw ArgumentError("coset pair is not proximal");

  Intersection out;
  const std::string& a = ci.representative;
  out.conjugator = rw.reduce(Rewriter::inverse(a) + cj.representative);
  const std::string& c = out.conjugator;
  const std::string ci_word = Rewriter::inverse(c);
  const int len = b.radius + static_cast<int>(a.size());
  const auto h_elems = subgroup_elements(rw, f.subgroups[ci.subgroup], len);
  const auto j_list = subgroup_elements(rw, f.subgroups[cj.subgroup], len + 2 * static_cast<int>(c.size()));
  const std::unordered_set<std::string> j_elems(j_list.begin(), j_list.end());
  std::vector<std::string> e;
  for (const auto& h : h_elems)
    if (j_elems.count(rw.reduce(ci_word + h + c))) e.push_back(h);

  // Greedy generating set in shortlex order.
  std::unordered_set<std::string> generated{""};
  for (const auto& x : e) {
    if (generated.count(x)) continue;
    out.generators.push_back(x);
    const auto span = subgroup_elements(rw, out.generators, len);
    generated.insert(span.begin(), span.end());
  }

  out.subspace = make_subspace(g, "E(" + ci.subspace.name + "," + cj.subspace.name + ")", translate(b, a, e, false));
  out.hausdorff_to_projection = hausdorff(g, proj, out.subspace.vertices);
  out.bound = 2 * static_cast<int>(c.size()) + 8 * f.delta + 2 * f.K + 2;
  out.within_bound = out.hausdorff_to_projection <= out.bound;
  out.touches_boundary = reaches_boundary(b, out.subspace.vertices);
  return out;
}

ClosureTrace prox_closure(std::shared_ptr<const CayleyBall> ball, std::vector<Subgroup> subgroups,
                          const ClosureOptions& opt) {
  if (opt.height_cap < 1) throw ArgumentError("height cap must be at least 1");
  const MetricGraph& g = ball->graph;
  ClosureTrace trace;
  CosetOptions copt = opt.cosets;
  for (int level = 0;; ++level) {
    CosetFamily fam = coset_family(ball, subgroups, copt);
    copt.delta = fam.delta;
    const int r = opt.R_used >= 0 ? opt.R_used : std::max(trace.R_used, 2 * fam.K + 8 * fam.delta + 2);
    trace.R_used = r;
    ClosureLevel lv;
    lv.subgroups = subgroups;
    lv.cosets = fam.cosets.size();
    lv.classes = equivalence_classes(g, fam.members(), r).classes.size();
    const auto pairs = proximal_pairs(fam);
    lv.proximal = pairs.size();

    std::vector<VertexSet> known;
    for (const auto& c : fam.cosets) known.push_back(c.subspace.vertices);
    std::map<VertexSet, bool> tried;
    for (const auto& p : pairs) {
      Intersection x = intersection_approx(fam, p.i, p.j);
      if (x.generators.empty() || tried.count(x.subspace.vertices)) continue;
      tried.emplace(x.subspace.vertices, true);
      if (!x.within_bound)
        lv.violations.push_back({"intersection_hausdorff", double(x.bound), double(x.hausdorff_to_projection),
                                 {Vertex(p.i), Vertex(p.j)}});
      if (x.touches_boundary) ++lv.boundary_flags;
      bool fresh = true;
      for (const auto& k : known)
        if (hausdorff(g, k, x.subspace.vertices) <= r) {
          fresh = false;
          break;
        }
      if (!fresh) continue;
      known.push_back(x.subspace.vertices);
      lv.added.push_back(subgroups.size());
      subgroups.push_back(x.generators);
    }
    const bool done = lv.added.empty();
    trace.levels.push_back(std::move(lv));
    if (done) {
      trace.stabilized = true;
      trace.stabilized_at = level;
      trace.family = std::move(fam);
      break;
    }
    if (level + 1 >= opt.height_cap) {
      trace.family = coset_family(ball, subgroups, copt);
      break;
    }
  }
  return trace;
}

HeightReport height_probe(const CayleyBall& ball, const std::vector<Subgroup>& subgroups, int xi, int c_max,
                          int conj_radius) {
  const MetricGraph& g = ball.graph;
  std::map<VertexSet, std::string> distinct;
  for (const auto& h : subgroups) {
    const auto elems = subgroup_elements(ball.rewriter, h, ball.radius + 2 * conj_radius);
    for (Vertex v = 0; v < ball.words.size(); ++v) {
      if (static_cast<int>(ball.words[v].size()) > conj_radius) continue;
      VertexSet s = translate(ball, ball.words[v], elems, true);
      distinct.emplace(std::move(s), ball.words[v]);
    }
  }
  std::vector<VertexSet> sets;
  std::vector<std::string> names;
  for (auto& [s, w] : distinct) {
    sets.push_back(s);
    names.push_back(w);
  }
  HeightReport rep;
  rep.conjugates = sets.size();
  std::vector<std::size_t> chain;
  auto dfs = [&](auto&& self, std::size_t from, const VertexSet& cur) -> void {
    if (static_cast<int>(chain.size()) > rep.height) {
      rep.height = static_cast<int>(chain.size());
      rep.witness.clear();
      for (std::size_t k : chain) rep.witness.push_back(names[k]);
    }
    if (rep.height >= c_max || static_cast<int>(chain.size()) >= c_max) return;
    for (std::size_t k = from; k < sets.size(); ++k) {
      VertexSet next = chain.empty() ? sets[k] : set_intersection(cur, sets[k]);
      if (next.empty() || set_diameter(g, next) < xi) continue;
      chain.push_back(k);
      self(self, k + 1, next);
      chain.pop_back();
      if (rep.height >= c_max) return;
    }
  };
  dfs(dfs, 0, {});
  return rep;
}

}  // namespace coarseforge
