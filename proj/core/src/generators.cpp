#include "coarseforge/generators.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "coarseforge/rng.hpp"

namespace coarseforge {

namespace {

char invert_letter(char c) {
  return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                     : static_cast<char>(std::tolower(c));
}

}  // namespace

Rewriter::Rewriter(const std::vector<std::string>& generators,
                   std::vector<std::pair<std::string, std::string>> rules)
    : rank_(256, -1) {
  for (const auto& g : generators) {
    if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0])))
      throw ArgumentError("generator must be a single lowercase letter: '" + g + "'");
    if (rank_[static_cast<unsigned char>(g[0])] >= 0) throw ArgumentError("duplicate generator '" + g + "'");
    rank_[static_cast<unsigned char>(g[0])] = static_cast<int>(alphabet_.size());
    alphabet_.push_back(g[0]);
    rank_[static_cast<unsigned char>(invert_letter(g[0]))] = static_cast<int>(alphabet_.size());
    alphabet_.push_back(invert_letter(g[0]));
  }
  for (char c : alphabet_) {
    std::string lhs{c, invert_letter(c)};
    bool present = std::any_of(rules.begin(), rules.end(), [&](const auto& r) { return r.first == lhs; });
    if (!present) rules.emplace_back(lhs, "");
  }
  for (const auto& [lhs, rhs] : rules) {
    for (char c : lhs + rhs)
      if (rank_[static_cast<unsigned char>(c)] < 0)
        throw ArgumentError(std::string("rule uses unknown letter '") + c + "'");
    if (lhs.empty()) throw ArgumentError("rule with empty left side");
    if (!shortlex_less(rhs, lhs)) throw ArgumentError("rule " + lhs + " -> " + rhs + " is not shortlex-reducing");
  }
  rules_ = std::move(rules);
}

bool Rewriter::shortlex_less(const std::string& a, const std::string& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = rank_[static_cast<unsigned char>(a[i])];
    int rb = rank_[static_cast<unsigned char>(b[i])];
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::string Rewriter::apply(std::string w, bool reversed) const {
  const std::size_t k = rules_.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& [lhs, rhs] = rules_[reversed ? k - 1 - i : i];
      auto pos = w.find(lhs);
      if (pos != std::string::npos) {
        w.replace(pos, lhs.size(), rhs);
        changed = true;
        break;
      }
    }
  }
  return w;
}

std::string Rewriter::reduce(std::string w) const { return apply(std::move(w), false); }
std::string Rewriter::reduce_reversed(std::string w) const { return apply(std::move(w), true); }

std::string Rewriter::inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = invert_letter(c);
  return out;
}

void Rewriter::check_confluence() const {
  // Rules shrink words in shortlex order, so rewriting terminates and it is
  // enough that every critical pair rejoins.
  auto fail = [](const std::string& w, const std::string& f, const std::string& r) {
    throw StructuralError("rewriting system is not confluent: witness word '" + w + "' reduces to '" + f +
                          "' and '" + r + "'");
  };
  for (const auto& [l1, r1] : rules_)
    for (const auto& [l2, r2] : rules_) {
      // Proper overlap: a suffix of l1 is a prefix of l2.
      for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
        if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
        const std::string w = l1 + l2.substr(k);
        const std::string f = reduce(r1 + l2.substr(k)), r = reduce(l1.substr(0, l1.size() - k) + r2);
        if (f != r) fail(w, f, r);
      }
      // l2 inside l1.
      if (l1 == l2) continue;
      for (std::size_t p = l1.find(l2); p != std::string::npos; p = l1.find(l2, p + 1)) {
        const std::string f = reduce(r1), r = reduce(l1.substr(0, p) + r2 + l1.substr(p + l2.size()));
        if (f != r) fail(l1, f, r);
      }
    }
}

std::int64_t CayleyBall::find(const std::string& w) const {
  auto it = index.find(rewriter.reduce(w));
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

CayleyBall cayley_ball(const PresentationSpec& spec) {
  if (spec.radius < 0) throw ArgumentError("radius must be non-negative");
  CayleyBall ball;
  ball.radius = spec.radius;
  ball.rewriter = Rewriter(spec.generators, spec.rules);
  ball.rewriter.check_confluence();

  const std::string& alphabet = ball.rewriter.alphabet();
  ball.words.push_back("");
  ball.index.emplace("", 0);
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < ball.words.size(); ++head) {
    const std::string w = ball.words[head];
    for (char s : alphabet) {
      std::string u = ball.rewriter.reduce(w + s);
      if (static_cast<int>(u.size()) > spec.radius) continue;
      auto it = ball.index.find(u);
      Vertex id;
      if (it == ball.index.end()) {
        id = static_cast<Vertex>(ball.words.size());
        ball.index.emplace(u, id);
        ball.words.push_back(u);
      } else {
        id = it->second;
      }
      if (id != head) edges.emplace_back(static_cast<Vertex>(head), id);
    }
  }
  ball.graph = MetricGraph(ball.words.size(), std::move(edges));
  return ball;
}

ApproxGraph approximation_graph(const MetricGraph& space, int zeta, int lambda) {
  if (zeta < 1) throw ArgumentError("zeta must be positive");
  if (lambda < 0) lambda = 5 * zeta;
  ApproxGraph out;
  out.zeta = zeta;
  out.lambda = lambda;
  const std::size_t n = space.size();
  for (Vertex p = 0; p < n; ++p) {
    bool separated = true;
    for (Vertex q : out.net)
      if (space.dist(p, q) < zeta) {
        separated = false;
        break;
      }
    if (separated) out.net.push_back(p);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.net.size(); ++i)
    for (std::size_t j = i + 1; j < out.net.size(); ++j)
      if (space.dist(out.net[i], out.net[j]) <= lambda)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  out.graph = MetricGraph(out.net.size(), std::move(edges));

  out.omega.resize(n);
  for (Vertex p = 0; p < n; ++p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.net.size(); ++i)
      if (space.dist(p, out.net[i]) < space.dist(p, out.net[best])) best = i;
    out.omega[p] = static_cast<Vertex>(best);
  }
  const double z5 = 5.0 * zeta;
  for (Vertex x = 0; x < n && out.bounds_hold; ++x)
    for (Vertex y = x + 1; y < n; ++y) {
      const double d = space.dist(x, y);
      const double dw = out.graph.dist(out.omega[x], out.omega[y]);
      if (d / z5 - z5 > dw || dw > d + 1) {
        out.bounds_hold = false;
        out.bound_witness = {x, y};
        break;
      }
    }
  return out;
}

MetricGraph star_fixture(int ray_count, int ray_length) {
  if (ray_count < 1 || ray_length < 1) throw ArgumentError("star needs at least one ray of positive length");
  const auto m = static_cast<Vertex>(ray_count);
  const auto len = static_cast<Vertex>(ray_length);
  auto vertex = [&](Vertex ray, Vertex k) { return k == 0 ? 0u : 1 + ray * len + (k - 1); };
  std::vector<Edge> edges;
  std::vector<VertexSet> rays(m);
  for (Vertex r = 0; r < m; ++r)
    for (Vertex k = 1; k <= len; ++k) {
      edges.emplace_back(vertex(r, k - 1), vertex(r, k));
      rays[r].push_back(vertex(r, k));
    }
  std::map<std::string, VertexSet> subspaces;
  VertexSet i0 = rays[0];
  i0.insert(i0.begin(), 0);
  subspaces["I0"] = i0;
  for (Vertex r = 1; r < m; ++r) subspaces["F" + std::to_string(r)] = set_union(i0, rays[r]);
  return MetricGraph(1 + m * len, std::move(edges), std::move(subspaces));
}

MetricGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return MetricGraph(n, std::move(edges));
}

MetricGraph cycle_graph(std::size_t n) {
  if (n < 3) throw ArgumentError("cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return MetricGraph(n, std::move(edges));
}

MetricGraph random_tree(std::size_t n, std::uint64_t seed) {
  XorShift64Star rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(static_cast<Vertex>(rng.below(i)), i);
  return MetricGraph(n, std::move(edges));
}

}  // namespace coarseforge
