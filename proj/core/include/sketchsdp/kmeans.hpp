#pragma once

// Lloyd's algorithm, k-means++ seeding and farthest-point initialization.

#include "sketchsdp/core.hpp"
#include "sketchsdp/random.hpp"

#include <vector>

namespace sketchsdp {

struct KmeansResult {
  Partition partition;
  PointMatrix centers;
  double value;          // normalized objective of `partition`
  double initial_value;  // normalized potential of the initial centers
  int iterations;
  bool converged;
  std::vector<double> history;  // objective after each iteration
};

struct KmeansppInit {
  PointMatrix centers;
  std::vector<Index> indices;
  double potential;  // (1/n) sum_i min_j ||x_i - c_j||^2, i.e. V^(0)
};

/// Indices of k distinct data points chosen by farthest-point traversal.
using InitIndices = std::vector<Index>;

inline constexpr int kDefaultLloydIterations = 300;

/// D^2-sampling seeding. The first center is uniform over points; points
/// already chosen have zero weight, so indices are distinct unless every
/// remaining point coincides with a chosen one (then a uniform unchosen index
/// is taken).
KmeansppInit kmeanspp_init(const Dataset& x, int k, Rng& rng);

/// Normalized potential of `centers`: (1/n) sum_i min_j ||x_i - c_j||^2.
double potential(const Dataset& x, const PointMatrix& centers);

/// Lloyd iterations from `init_centers` (k rows). Stops when the assignment
/// repeats, the relative decrease drops below 1e-12, or after max_iter
/// iterations. A cluster left empty is re-seeded with the point farthest from
/// its own center, taken from a cluster with at least two members, so the
/// result always has exactly k clusters when n >= k.
KmeansResult lloyd(const Dataset& x, int k, const PointMatrix& init_centers,
                   int max_iter = kDefaultLloydIterations);

/// L = V^(0) / (8 (ln k + 2)).
double kmeanspp_lower_bound(double v0, int k);

/// One independent draw of L from a fresh k-means++ seeding.
double kmeanspp_lb_sample(const Dataset& x, int k, Rng& rng);

/// Farthest-point traversal starting at index 0; argmax ties go to the lowest
/// index.
InitIndices deterministic_kmeanspp(const Dataset& x, int k);

/// b = max_i min_j ||x_i - x_{init_j}||^2.
double coverage_radius_b(const Dataset& x, const InitIndices& init);

/// k-center objective f(Z) = max_i min_j ||x_i - z_j|| (not squared).
double kcenter_cost(const Dataset& x, const PointMatrix& centers);

PointMatrix rows_of(const Dataset& x, const std::vector<Index>& indices);

}  // namespace sketchsdp
