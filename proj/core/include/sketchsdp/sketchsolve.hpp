#pragma once

// Sketch-and-solve clustering: Bernoulli sketch, SDP clustering of the
// sketch, nearest-centroid extrapolation.

#include "sketchsdp/core.hpp"
#include "sketchsdp/random.hpp"
#include "sketchsdp/sdp.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sketchsdp {

struct SketchSolveConfig {
  int k = 2;
  double p = 1.0;
  std::uint64_t seed = 0;
  SolverConfig solver;
  std::optional<double> cap;
};

/// Each index of [n] kept independently with probability p. Throws
/// "sketch too small; increase p" when fewer than k indices survive.
std::vector<Index> bernoulli_sketch(Index n, double p, int k, Rng& rng);

struct SketchSolveDiagnostics {
  std::vector<Index> sketch;
  std::optional<double> sketch_prox;  // prox of the sketch w.r.t. the SDP clustering
  Residuals residuals;
  SolveStatus status = SolveStatus::converged;
  int iterations = 0;
  bool exact = false;        // Z was partition-exact
  bool fewer_cells = false;  // final assignment emptied some cluster
  double sdp_value = 0.0;
  double t_sketch = 0.0;
  double t_sdp = 0.0;
  double t_assign = 0.0;
  double t_total = 0.0;
};

struct SketchSolveResult {
  Partition partition;          // of all n points; may have fewer than k cells
  Partition sketch_partition;   // SDP clustering of the sketch
  PointMatrix centers;          // sketch centroids
  SketchSolveDiagnostics diagnostics;
};

SketchSolveResult sketch_and_solve(const Dataset& x, const SketchSolveConfig& cfg);

/// SDP clustering of the whole sketch `y` (solve then round).
struct SketchClustering {
  Partition partition;
  SdpSolution solution;
  bool exact;
};
SketchClustering cluster_sketch(const Dataset& y, int k, const SolverConfig& solver,
                                std::optional<double> cap = std::nullopt);

/// True when partitioning the union of the balls B(mu_a, radius) by nearest
/// center in `found` reproduces the balls exactly: each ball maps to a
/// distinct center, and every ball lies strictly on its center's side of
/// each bisector.
bool planted_balls_recovered(const PointMatrix& ball_centers, const PointMatrix& found, double radius = 1.0);

}  // namespace sketchsdp
