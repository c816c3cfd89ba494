#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coarseforge/coning.hpp"

namespace coarseforge {

struct QGMeasure {
  std::vector<double> C_grid{1, 1.5, 2, 3, 4, 6, 8};
  std::vector<double> eps;  // eps[i] = max over i<=j of L(sub) - C_grid[i] * d(ends)
  double C = 1;
  double epsilon = 0;
  std::pair<std::size_t, std::size_t> worst_subpath{0, 0};
};

/// Empirical (C, eps) of a vertex path in `host`. The reported C is the
/// smallest grid value whose eps is within 1 of the next one.
QGMeasure measure_qg(const MetricGraph& host, const std::vector<Vertex>& path);

struct AlgoConstants {
  int delta = 0;
  int K = 0;
  int xi = 0;        // 8 delta + 1
  int d_prime = 0;   // delta (xi + 1)
  int p = 0;         // xi (floor(2 delta (xi + 1)) + 1)
  int D = 0;         // max{delta (p + 1), D'}
  int Delta = 0;     // ceil(D + 4 delta)
  int ball_radius = 0;   // 3 Delta
  int sweep_radius = 0;  // ball_radius, raised to 1 when Delta = 0 so the sweep advances
  QGMeasure tau1, tau2;
};

/// Throws ArgumentError on negative input.
AlgoConstants algo_constants(int delta, int k);

struct Step1Report {
  std::size_t components = 0;  // components of tilde - N_D([x,y])
  std::size_t replaced = 0;    // those with >= 2 pieces
  std::size_t interruptions = 0;
  int containment = 0;         // max distance of the new de-electrification from [x,y]
  bool contained = true;       // containment <= Delta
};

struct Step2Report {
  bool skipped = false;
  std::vector<Vertex> t;      // t_0 = x, t_1, ...
  std::vector<int> advance;   // d(p(t_i), p(t_{i+1})) along [x,y]
  std::size_t splices = 0;
  std::size_t step_bound = 0; // ceil(d / Delta) + 1 when Delta >= 1
};

struct AlgoOptions {
  int delta = -1;  // thin delta of the base; measured when negative
  DeElectMode mode = DeElectMode::total;  // flavour used for the reported tilde
};

struct GoodQuasiGeodesic {
  VPath gamma;  // coned path
  VPath tilde;  // its de-electrification
  AlgoConstants constants;
  Step1Report step1;
  Step2Report step2;
  std::vector<Violation> violations;
};

/// Coned quasi-geodesic from x to y whose de-electrifications are base
/// quasi-geodesics: canonical coned geodesic, then component replacement
/// outside N_D([x,y]), then the ball sweep that removes backtracking.
GoodQuasiGeodesic good_quasigeodesic(const ConedGraph& cg, Vertex x, Vertex y, const AlgoOptions& opt = {});

/// Least-squares slope of ys against xs. Throws ArgumentError on fewer than two points.
double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace coarseforge
