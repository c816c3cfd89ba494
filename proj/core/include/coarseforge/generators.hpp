#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coarseforge/graph_core.hpp"

namespace coarseforge {

/// Generators are single lowercase letters; the uppercase letter is the inverse.
struct PresentationSpec {
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, std::string>> rules;
  int radius = 0;
};

/// Word rewriting by the first applicable rule at its leftmost match.
class Rewriter {
 public:
  Rewriter() = default;
  /// Validates letters, adds missing free reductions, and rejects rules that are
  /// not shortlex-reducing.
  Rewriter(const std::vector<std::string>& generators,
           std::vector<std::pair<std::string, std::string>> rules);

  std::string reduce(std::string w) const;
  std::string reduce_reversed(std::string w) const;  // same rules, opposite priority
  std::string multiply(const std::string& a, const std::string& b) const { return reduce(a + b); }
  static std::string inverse(const std::string& w);

  const std::string& alphabet() const { return alphabet_; }  // a A b B ...
  const std::vector<std::pair<std::string, std::string>>& rules() const { return rules_; }
  bool shortlex_less(const std::string& a, const std::string& b) const;

  /// Checks that every critical pair (overlap or inclusion of two left sides)
  /// reduces to one normal form. Throws StructuralError naming the overlap word.
  void check_confluence() const;

 private:
  std::string apply(std::string w, bool reversed) const;

  std::string alphabet_;
  std::vector<int> rank_;  // letter -> position in alphabet_
  std::vector<std::pair<std::string, std::string>> rules_;
};

struct CayleyBall {
  MetricGraph graph;
  std::vector<std::string> words;  // normal form per vertex; words[0] is the identity
  std::unordered_map<std::string, Vertex> index;
  Rewriter rewriter;
  int radius = 0;

  /// Vertex of a word's normal form, or -1 if outside the ball.
  std::int64_t find(const std::string& w) const;
};

/// Ball of the given radius in the Cayley graph. Vertices are normal forms of
/// length <= radius in BFS order; edges join words differing by one generator.
CayleyBall cayley_ball(const PresentationSpec& spec);

struct ApproxGraph {
  MetricGraph graph;          // vertex i is net[i]
  std::vector<Vertex> net;    // greedy maximal zeta-net, ascending ids
  std::vector<Vertex> omega;  // point -> index of nearest net vertex
  int zeta = 0;
  int lambda = 0;
  bool bounds_hold = true;  // d/(5z) - 5z <= d_Omega <= d + 1 on all pairs
  std::pair<Vertex, Vertex> bound_witness{};
};

/// Net graph of a finite metric space: net points within lambda (default 5 zeta)
/// are adjacent. Throws StructuralError if that graph is disconnected.
ApproxGraph approximation_graph(const MetricGraph& space, int zeta, int lambda = -1);

/// Centre 0 with ray_count rays of ray_length. Subspace "I0" is ray 0 plus the
/// centre; "F<n>" is I0 plus ray n, for n in 1..ray_count-1.
MetricGraph star_fixture(int ray_count, int ray_length);

MetricGraph path_graph(std::size_t n);
MetricGraph cycle_graph(std::size_t n);
/// Random recursive tree: vertex i attaches to a uniformly chosen earlier vertex.
MetricGraph random_tree(std::size_t n, std::uint64_t seed);

}  // namespace coarseforge
