#pragma once

// Synthetic data with planted clusters: the stochastic ball model and
// identity-covariance Gaussian mixtures.

#include "sketchsdp/core.hpp"
#include "sketchsdp/random.hpp"

#include <vector>

namespace sketchsdp {

enum class Model { sbm, gmm };

struct PlantedDataset {
  Dataset data;
  std::vector<int> labels;
  Model model;
  PointMatrix centers;
  double scale;  // ball radius (SBM) or per-coordinate standard deviation (GMM)
  std::vector<double> weights;

  /// Planted labels as a partition; throws if some component drew no point.
  Partition planted() const { return Partition(labels, static_cast<int>(centers.rows())); }
};

/// Uniform point in the origin-centred unit ball of R^d.
Vector uniform_ball_point(Index d, Rng& rng);

/// m points uniform on each unit ball around the rows of `centers`, grouped
/// by ball.
PlantedDataset sample_sbm(const PointMatrix& centers, Index m, Rng& rng);

/// `count` points uniform on the union of the (disjoint) unit balls around
/// `centers`, each point picking its ball uniformly.
PlantedDataset sample_ball_union(const PointMatrix& centers, Index count, Rng& rng);

/// n i.i.d. draws from the mixture of N(mu_t, I) with weights p(t).
PlantedDataset sample_gmm(const PointMatrix& means, const std::vector<double>& weights, Index n, Rng& rng);

/// Centers (0, ..., 0) and (delta, 0, ..., 0) in R^d.
PointMatrix two_ball_centers(double delta, Index d = 2);

/// k points uniform in [0, side]^d.
PointMatrix hypercube_centers(int k, Index d, double side, Rng& rng);

/// 10000 points, d = 5, 10 equal-weight unit Gaussians centred in a cube of
/// side 500.
PlantedDataset norm10(Rng& rng);
/// 10000 points, d = 15, 25 equal-weight unit Gaussians centred in a cube of
/// side 500.
PlantedDataset norm25(Rng& rng);

}  // namespace sketchsdp
