#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarseforge {

using Vertex = std::uint32_t;
// Sorted, duplicate-free vertex list.
using VertexSet = std::vector<Vertex>;

inline constexpr std::uint16_t kUnreachable = 0xFFFF;
inline constexpr int kNoLabel = -1;

// Input that violates a structural precondition (disconnected graph, bad edge, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an argument outside the documented domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound asserted at runtime did not hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One failed bound. Serialises as {"check","bound","measured","witnesses"}.
struct Violation {
  std::string check;
  double bound = 0;
  double measured = 0;
  std::vector<Vertex> witnesses;
};

VertexSet make_vertex_set(std::vector<Vertex> v);
bool is_subset(const VertexSet& a, const VertexSet& b);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool contains(const VertexSet& s, Vertex v);

}  // namespace coarseforge
