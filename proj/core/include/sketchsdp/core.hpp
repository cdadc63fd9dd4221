#pragma once

// Datasets, partitions, squared-distance matrices and k-means objectives.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace sketchsdp {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
/// Row-per-point storage for datasets and center lists.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// An ordered, immutable collection of n >= 1 finite points in R^d, d >= 1.
class Dataset {
 public:
  explicit Dataset(PointMatrix points);
  static Dataset from_rows(const std::vector<std::vector<double>>& rows);

  Index n() const noexcept { return points_.rows(); }
  Index d() const noexcept { return points_.cols(); }
  const PointMatrix& points() const noexcept { return points_; }
  auto point(Index i) const { return points_.row(i); }

  /// Rows selected by `indices`, in the given order (repeats allowed).
  Dataset subset(std::span<const Index> indices) const;

 private:
  PointMatrix points_;
};

/// Assignment of [n] to k nonempty clusters labelled 0..k-1.
///
/// The clustering type used throughout requires 2 <= k; k = 1 is accepted
/// here because a few internal paths (k-means++ on one cluster, degenerate
/// nearest-centroid assignments) legitimately produce it.
class Partition {
 public:
  Partition(std::vector<int> assignment, int k);

  /// Relabels arbitrary integer labels to 0..k-1 in order of first
  /// appearance; k is the number of distinct labels.
  static Partition from_labels(const std::vector<int>& labels);

  Index n() const noexcept { return static_cast<Index>(assignment_.size()); }
  int k() const noexcept { return k_; }
  int operator[](Index i) const { return assignment_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& assignment() const noexcept { return assignment_; }

  std::vector<Index> sizes() const;
  std::vector<std::vector<Index>> clusters() const;

  /// Same clustering up to a permutation of labels.
  bool same_clustering(const Partition& other) const;

  /// Restriction to the points listed in `indices` (relabelled by first
  /// appearance).
  Partition restricted(std::span<const Index> indices) const;

 private:
  std::vector<int> assignment_;
  int k_;
};

/// Dense symmetric matrix of squared Euclidean distances, optionally clamped.
class DistanceMatrix {
 public:
  DistanceMatrix(Matrix entries, std::optional<double> cap);

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  std::optional<double> truncation_cap() const noexcept { return cap_; }

 private:
  Matrix entries_;
  std::optional<double> cap_;
};

/// D_ij = min(||x_i - x_j||^2, cap). A non-positive cap is rejected.
DistanceMatrix distance_matrix(const Dataset& x, std::optional<double> cap = std::nullopt);

Vector centroid(const Dataset& x, std::span<const Index> members);

/// k x d matrix of cluster centroids.
PointMatrix centroids(const Dataset& x, const Partition& partition);

/// Normalized k-means objective (1/n) sum_S sum_{i in S} ||x_i - c_S||^2.
double kmeans_value(const Dataset& x, const Partition& partition);

/// (1/2n) tr(D Z_Gamma), evaluated blockwise without forming Z_Gamma.
double trace_form_value(const DistanceMatrix& distances, const Partition& partition);

/// Z_Gamma = sum_S (1/|S|) 1_S 1_S^T.
Matrix partition_matrix(const Partition& partition);

/// Index of the nearest center for every point; ties go to the lowest index.
std::vector<int> nearest_centers(const Dataset& x, const PointMatrix& centers);

/// Partition induced by nearest centers. Centers that attract no point are
/// dropped, so the result may have fewer clusters than centers.
Partition assign_to_nearest(const Dataset& x, const PointMatrix& centers);

struct BruteForceResult {
  double value;
  Partition partition;
};

inline constexpr Index kBruteForceLimit = 12;

/// Visits every partition of [n] into exactly k nonempty blocks, encoded as a
/// restricted growth string.
void for_each_partition(Index n, int k, const std::function<void(const std::vector<int>&)>& visit);

/// Exact minimum of kmeans_value over all k-partitions; n <= 12.
BruteForceResult brute_force_ip(const Dataset& x, int k);

}  // namespace sketchsdp
