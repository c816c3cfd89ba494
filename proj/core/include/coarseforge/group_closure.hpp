#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coarseforge/coarse_geometry.hpp"
#include "coarseforge/generators.hpp"

namespace coarseforge {

/// A subgroup given by generator words.
using Subgroup = std::vector<std::string>;

/// Normal forms of subgroup elements up to `max_len`, found by BFS over the
/// generators and their inverses (intermediate words may run one generator longer).
std::vector<std::string> subgroup_elements(const Rewriter& rw, const Subgroup& h, int max_len);

struct CosetOptions {
  int core = -1;   // cosets must meet the ball of this radius; radius / 2 when negative
  int xi = -1;     // 8 delta + 2K + 1 when negative
  int delta = -1;  // thin delta of the ball, measured when negative
};

struct Coset {
  SubspaceRef subspace;
  std::size_t subgroup = 0;
  std::string representative;  // shortlex-minimal word of the coset inside the ball
  bool touches_boundary = false;
};

struct CosetFamily {
  std::shared_ptr<const CayleyBall> ball;
  std::vector<Subgroup> subgroups;
  std::vector<Coset> cosets;
  int core = 0;
  int delta = 0;
  int K = 0;
  int xi_threshold = 0;

  std::shared_ptr<const MetricGraph> host() const { return {ball, &ball->graph}; }
  std::vector<SubspaceRef> members() const;
};

/// All left cosets gH meeting the core ball, as vertex sets {g h} of the ball,
/// deduplicated by vertex set. Throws ArgumentError if some subgroup is trivial in the ball.
CosetFamily coset_family(std::shared_ptr<const CayleyBall> ball, std::vector<Subgroup> subgroups,
                         const CosetOptions& opt = {});

struct ProximalPair {
  std::size_t i = 0, j = 0;
  int diameter = 0;  // diam p_{C_i}(C_j)
};

/// Ordered pairs of distinct cosets whose projection diameter reaches xi_threshold.
std::vector<ProximalPair> proximal_pairs(const CosetFamily& f);

struct Intersection {
  Subgroup generators;       // of E = H n g J g^-1, g = a^-1 b
  std::string conjugator;    // g
  SubspaceRef subspace;      // a E inside the ball
  int hausdorff_to_projection = 0;
  int bound = 0;             // 2|g| + 8 delta + 2K + 2
  bool within_bound = true;
  bool touches_boundary = false;
};

/// Ball-scale a(H n a^-1 b J b^-1 a) for the cosets aH = C_i, bJ = C_j. Throws
/// ArgumentError if the pair is not proximal.
Intersection intersection_approx(const CosetFamily& f, std::size_t i, std::size_t j);

struct ClosureOptions {
  int height_cap = 4;
  int R_used = -1;  // 2K + 8 delta + 2 when negative
  CosetOptions cosets;
};

struct ClosureLevel {
  std::vector<Subgroup> subgroups;
  std::size_t cosets = 0;
  std::size_t classes = 0;
  std::size_t proximal = 0;
  std::vector<std::size_t> added;  // indices of subgroups added at this level
  std::size_t boundary_flags = 0;  // intersections whose subspace reaches the ball boundary
  std::vector<Violation> violations;
};

struct ClosureTrace {
  std::vector<ClosureLevel> levels;
  int stabilized_at = -1;  // M, or -1 if the cap was reached first
  bool stabilized = false;
  int R_used = 0;
  CosetFamily family;      // coset family of the final subgroup list
};

ClosureTrace prox_closure(std::shared_ptr<const CayleyBall> ball, std::vector<Subgroup> subgroups,
                          const ClosureOptions& opt = {});

struct HeightReport {
  int height = 0;
  std::size_t conjugates = 0;           // distinct conjugate vertex sets examined
  std::vector<std::string> witness;     // conjugators of a maximal chain
};

/// Largest c <= c_max such that c distinct conjugates gHg^-1 (|g| <= conj_radius)
/// share a vertex set of diameter >= xi inside the ball.
HeightReport height_probe(const CayleyBall& ball, const std::vector<Subgroup>& subgroups, int xi, int c_max,
                          int conj_radius);

}  // namespace coarseforge
