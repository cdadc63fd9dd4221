#include "sketchsdp/core.hpp"

#include "sketchsdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

namespace sketchsdp {

Dataset::Dataset(PointMatrix points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw Error("dataset needs n >= 1 points with d >= 1 coordinates");
  }
  if (!points_.allFinite()) {
    throw Error("dataset contains non-finite coordinates");
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error("dataset needs n >= 1 points with d >= 1 coordinates");
  }
  const auto d = rows.front().size();
  PointMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw Error("ragged point rows");
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return Dataset(std::move(m));
}

Dataset Dataset::subset(std::span<const Index> indices) const {
  PointMatrix m(static_cast<Index>(indices.size()), d());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const Index i = indices[r];
    if (i < 0 || i >= n()) throw Error("subset index out of range");
    m.row(static_cast<Index>(r)) = points_.row(i);
  }
  return Dataset(std::move(m));
}

Partition::Partition(std::vector<int> assignment, int k) : assignment_(std::move(assignment)), k_(k) {
  if (k_ < 1) throw Error("partition needs k >= 1");
  if (static_cast<std::size_t>(k_) > assignment_.size()) {
    throw Error("partition needs k <= n");
  }
  std::vector<char> seen(static_cast<std::size_t>(k_), 0);
  for (int c : assignment_) {
    if (c < 0 || c >= k_) throw Error("cluster index out of range");
    seen[static_cast<std::size_t>(c)] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error("empty cluster");
  }
}

Partition Partition::from_labels(const std::vector<int>& labels) {
  std::unordered_map<int, int> relabel;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = relabel.try_emplace(l, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  const int k = static_cast<int>(relabel.size());
  return Partition(std::move(out), k);
}

std::vector<Index> Partition::sizes() const {
  std::vector<Index> s(static_cast<std::size_t>(k_), 0);
  for (int c : assignment_) ++s[static_cast<std::size_t>(c)];
  return s;
}

std::vector<std::vector<Index>> Partition::clusters() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    out[static_cast<std::size_t>(assignment_[i])].push_back(static_cast<Index>(i));
  }
  return out;
}

bool Partition::same_clustering(const Partition& other) const {
  if (n() != other.n() || k_ != other.k_) return false;
  std::vector<int> map_fwd(static_cast<std::size_t>(k_), -1);
  std::vector<int> map_bwd(static_cast<std::size_t>(k_), -1);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    const auto a = static_cast<std::size_t>(assignment_[i]);
    const auto b = static_cast<std::size_t>(other.assignment_[i]);
    if (map_fwd[a] == -1 && map_bwd[b] == -1) {
      map_fwd[a] = static_cast<int>(b);
      map_bwd[b] = static_cast<int>(a);
    } else if (map_fwd[a] != static_cast<int>(b) || map_bwd[b] != static_cast<int>(a)) {
      return false;
    }
  }
  return true;
}

Partition Partition::restricted(std::span<const Index> indices) const {
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (Index i : indices) labels.push_back((*this)[i]);
  return from_labels(labels);
}

DistanceMatrix::DistanceMatrix(Matrix entries, std::optional<double> cap)
    : entries_(std::move(entries)), cap_(cap) {
  if (entries_.rows() != entries_.cols()) throw Error("distance matrix must be square");
}

DistanceMatrix distance_matrix(const Dataset& x, std::optional<double> cap) {
  if (cap && !(*cap > 0.0)) throw Error("distance cap must be positive");
  const Index n = x.n();
  const auto& p = x.points();
  Matrix d = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      double v = (p.row(i) - p.row(j)).squaredNorm();
      if (cap) v = std::min(v, *cap);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d), cap);
}

Vector centroid(const Dataset& x, std::span<const Index> members) {
  if (members.empty()) throw Error("empty cluster");
  Vector c = Vector::Zero(x.d());
  for (Index i : members) {
    if (i < 0 || i >= x.n()) throw Error("centroid index out of range");
    c += x.point(i).transpose();
  }
  return c / static_cast<double>(members.size());
}

PointMatrix centroids(const Dataset& x, const Partition& partition) {
  if (partition.n() != x.n()) throw Error("partition size does not match dataset");
  PointMatrix c = PointMatrix::Zero(partition.k(), x.d());
  const auto sizes = partition.sizes();
  for (Index i = 0; i < x.n(); ++i) c.row(partition[i]) += x.point(i);
  for (int a = 0; a < partition.k(); ++a) {
    c.row(a) /= static_cast<double>(sizes[static_cast<std::size_t>(a)]);
  }
  return c;
}

double kmeans_value(const Dataset& x, const Partition& partition) {
  const PointMatrix c = centroids(x, partition);
  double total = 0.0;
  for (Index i = 0; i < x.n(); ++i) total += (x.point(i) - c.row(partition[i])).squaredNorm();
  return total / static_cast<double>(x.n());
}

double trace_form_value(const DistanceMatrix& distances, const Partition& partition) {
  const Index n = distances.size();
  if (partition.n() != n) throw Error("partition size does not match distance matrix");
  double total = 0.0;
  for (const auto& members : partition.clusters()) {
    double block = 0.0;
    for (Index i : members) {
      for (Index j : members) block += distances(i, j);
    }
    total += block / static_cast<double>(members.size());
  }
  return total / (2.0 * static_cast<double>(n));
}

Matrix partition_matrix(const Partition& partition) {
  const Index n = partition.n();
  Matrix z = Matrix::Zero(n, n);
  for (const auto& members : partition.clusters()) {
    const double w = 1.0 / static_cast<double>(members.size());
    for (Index i : members) {
      for (Index j : members) z(i, j) = w;
    }
  }
  return z;
}

std::vector<int> nearest_centers(const Dataset& x, const PointMatrix& centers) {
  if (centers.rows() < 1) throw Error("need at least one center");
  if (centers.cols() != x.d()) throw Error("center dimension does not match dataset");
  if (!centers.allFinite()) throw Error("centers must be finite");
  std::vector<int> out(static_cast<std::size_t>(x.n()));
  for (Index i = 0; i < x.n(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < centers.rows(); ++c) {
      const double dist = (x.point(i) - centers.row(c)).squaredNorm();
      if (dist < best_d) {
        best_d = dist;
        best = static_cast<int>(c);
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

Partition assign_to_nearest(const Dataset& x, const PointMatrix& centers) {
  auto labels = nearest_centers(x, centers);
  // Compact labels while keeping center order, so surviving cluster ids are
  // increasing in center index.
  std::vector<int> remap(static_cast<std::size_t>(centers.rows()), -1);
  for (int l : labels) remap[static_cast<std::size_t>(l)] = 0;
  int next = 0;
  for (auto& r : remap) {
    if (r == 0) r = next++;
  }
  for (auto& l : labels) l = remap[static_cast<std::size_t>(l)];
  return Partition(std::move(labels), next);
}

void for_each_partition(Index n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (k < 1 || n < k) return;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  // Depth-first over restricted growth strings: rgs[i] <= max(rgs[0..i-1]) + 1,
  // pruning branches that can no longer reach k blocks.
  std::function<void(Index, int)> rec = [&](Index i, int used) {
    if (i == n) {
      if (used == k) visit(rgs);
      return;
    }
    if (used + (n - i) < k) return;
    const int top = std::min(used + 1, k);
    for (int c = 0; c < top; ++c) {
      rgs[static_cast<std::size_t>(i)] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
}

BruteForceResult brute_force_ip(const Dataset& x, int k) {
  if (x.n() > kBruteForceLimit) throw Error("oracle limit exceeded");
  if (k < 1 || k > x.n()) throw Error("brute force needs 1 <= k <= n");
  const Index n = x.n();
  const Index d = x.d();
  const PointMatrix centered = x.points().rowwise() - x.points().colwise().mean();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_rgs;
  PointMatrix sums(k, d);
  std::vector<double> counts(static_cast<std::size_t>(k));
  for_each_partition(n, k, [&](const std::vector<int>& rgs) {
    sums.setZero();
    std::fill(counts.begin(), counts.end(), 0.0);
    double sq = 0.0;
    for (Index i = 0; i < n; ++i) {
      const int c = rgs[static_cast<std::size_t>(i)];
      sums.row(c) += centered.row(i);
      counts[static_cast<std::size_t>(c)] += 1.0;
      sq += centered.row(i).squaredNorm();
    }
    // sum ||x - c_S||^2 = sum ||x||^2 - sum_S ||sum_S x||^2 / |S|
    double v = sq;
    for (int c = 0; c < k; ++c) v -= sums.row(c).squaredNorm() / counts[static_cast<std::size_t>(c)];
    if (v < best) {
      best = v;
      best_rgs = rgs;
    }
  });
  Partition p(best_rgs, k);
  // Recompute from centroids to avoid cancellation in the expanded form.
  return {kmeans_value(x, p), p};
}

}  // namespace sketchsdp
