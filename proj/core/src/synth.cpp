#include "sketchsdp/synth.hpp"

#include "sketchsdp/error.hpp"

#include <cmath>
#include <numeric>

namespace sketchsdp {

Vector uniform_ball_point(Index d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector g(d);
  double norm = 0.0;
  do {
    for (Index j = 0; j < d; ++j) g(j) = gauss(rng);
    norm = g.norm();
  } while (norm == 0.0);
  const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(d));
  return g * (radius / norm);
}

PlantedDataset sample_sbm(const PointMatrix& centers, Index m, Rng& rng) {
  const Index k = centers.rows();
  const Index d = centers.cols();
  if (k < 1 || d < 1) throw Error("SBM needs at least one center");
  if (m < 1) throw Error("SBM needs m >= 1 points per ball");
  PointMatrix pts(k * m, d);
  std::vector<int> labels(static_cast<std::size_t>(k * m));
  for (Index a = 0; a < k; ++a) {
    for (Index i = 0; i < m; ++i) {
      const Index row = a * m + i;
      pts.row(row) = centers.row(a) + uniform_ball_point(d, rng).transpose();
      labels[static_cast<std::size_t>(row)] = static_cast<int>(a);
    }
  }
  return {Dataset(std::move(pts)), std::move(labels), Model::sbm, centers, 1.0,
          std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k))};
}

PlantedDataset sample_ball_union(const PointMatrix& centers, Index count, Rng& rng) {
  const Index k = centers.rows();
  const Index d = centers.cols();
  if (k < 1 || d < 1) throw Error("SBM needs at least one center");
  if (count < 1) throw Error("need at least one point");
  std::uniform_int_distribution<Index> pick(0, k - 1);
  PointMatrix pts(count, d);
  std::vector<int> labels(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    const Index a = pick(rng);
    pts.row(i) = centers.row(a) + uniform_ball_point(d, rng).transpose();
    labels[static_cast<std::size_t>(i)] = static_cast<int>(a);
  }
  return {Dataset(std::move(pts)), std::move(labels), Model::sbm, centers, 1.0,
          std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k))};
}

PlantedDataset sample_gmm(const PointMatrix& means, const std::vector<double>& weights, Index n, Rng& rng) {
  const Index k = means.rows();
  const Index d = means.cols();
  if (k < 1 || d < 1) throw Error("GMM needs at least one mean");
  if (static_cast<Index>(weights.size()) != k) throw Error("GMM needs one weight per mean");
  if (n < 1) throw Error("GMM needs n >= 1");
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error("GMM weights must be nonnegative");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw Error("GMM weights must sum to 1");
  std::discrete_distribution<int> component(weights.begin(), weights.end());
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointMatrix pts(n, d);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const int t = component(rng);
    labels[static_cast<std::size_t>(i)] = t;
    for (Index j = 0; j < d; ++j) pts(i, j) = means(t, j) + gauss(rng);
  }
  return {Dataset(std::move(pts)), std::move(labels), Model::gmm, means, 1.0, weights};
}

PointMatrix two_ball_centers(double delta, Index d) {
  if (d < 1) throw Error("dimension must be positive");
  PointMatrix c = PointMatrix::Zero(2, d);
  c(1, 0) = delta;
  return c;
}

PointMatrix hypercube_centers(int k, Index d, double side, Rng& rng) {
  if (k < 1 || d < 1) throw Error("need k >= 1 and d >= 1");
  std::uniform_real_distribution<double> unif(0.0, side);
  PointMatrix c(k, d);
  for (Index a = 0; a < k; ++a) {
    for (Index j = 0; j < d; ++j) c(a, j) = unif(rng);
  }
  return c;
}

namespace {

PlantedDataset norm_preset(int k, Index d, Rng& rng) {
  const PointMatrix means = hypercube_centers(k, d, 500.0, rng);
  return sample_gmm(means, std::vector<double>(static_cast<std::size_t>(k), 1.0 / k), 10000, rng);
}

}  // namespace

PlantedDataset norm10(Rng& rng) { return norm_preset(10, 5, rng); }

PlantedDataset norm25(Rng& rng) { return norm_preset(25, 15, rng); }

}  // namespace sketchsdp
