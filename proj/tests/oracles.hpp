#pragma once

// Brute-force reference computations. They share nothing with the library
// beyond the adjacency lists, so agreement is evidence rather than tautology.

#include <algorithm>
#include <limits>
#include <vector>

#include "coarseforge/graph_core.hpp"

namespace oracle {

using coarseforge::MetricGraph;
using coarseforge::Vertex;
using coarseforge::VertexSet;

inline std::vector<std::vector<int>> floyd_warshall(const MetricGraph& g) {
  const std::size_t n = g.size();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (Vertex j : g.neighbors(static_cast<Vertex>(i))) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Plain queue BFS from every vertex; for graphs too large for Floyd-Warshall.
inline std::vector<std::vector<int>> bfs_all(const MetricGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  std::vector<Vertex> queue(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto& row = d[s];
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<Vertex>(s);
    row[s] = 0;
    while (head < tail) {
      const Vertex u = queue[head++];
      for (Vertex v : g.neighbors(u))
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue[tail++] = v;
        }
    }
  }
  return d;
}

// Largest four-point defect over all quadruples, in half-units.
inline double four_point_delta(const std::vector<std::vector<int>>& d) {
  const std::size_t n = d.size();
  int best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) {
          int s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return best / 2.0;
}

inline int set_dist(const std::vector<std::vector<int>>& d, Vertex v, const VertexSet& s) {
  int best = std::numeric_limits<int>::max();
  for (Vertex u : s) best = std::min(best, d[v][u]);
  return best;
}

inline int hausdorff(const std::vector<std::vector<int>>& d, const VertexSet& a, const VertexSet& b) {
  int h = 0;
  for (Vertex v : a) h = std::max(h, set_dist(d, v, b));
  for (Vertex v : b) h = std::max(h, set_dist(d, v, a));
  return h;
}

// Diameter of the closest-point projection of `src` onto `onto`.
inline int projection_diameter(const std::vector<std::vector<int>>& d, const VertexSet& onto, const VertexSet& src) {
  VertexSet image;
  for (Vertex x : src) {
    const int m = set_dist(d, x, onto);
    for (Vertex u : onto)
      if (d[x][u] == m) image.push_back(u);
  }
  int diam = 0;
  for (Vertex a : image)
    for (Vertex b : image) diam = std::max(diam, d[a][b]);
  return diam;
}

}  // namespace oracle
