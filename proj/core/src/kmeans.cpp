#include "sketchsdp/kmeans.hpp"

#include "sketchsdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sketchsdp {
namespace {

std::vector<double> nearest_sq_dist(const Dataset& x, const PointMatrix& centers) {
  std::vector<double> out(static_cast<std::size_t>(x.n()), std::numeric_limits<double>::infinity());
  for (Index i = 0; i < x.n(); ++i) {
    for (Index c = 0; c < centers.rows(); ++c) {
      out[static_cast<std::size_t>(i)] =
          std::min(out[static_cast<std::size_t>(i)], (x.point(i) - centers.row(c)).squaredNorm());
    }
  }
  return out;
}

}  // namespace

PointMatrix rows_of(const Dataset& x, const std::vector<Index>& indices) {
  PointMatrix out(static_cast<Index>(indices.size()), x.d());
  for (std::size_t r = 0; r < indices.size(); ++r) out.row(static_cast<Index>(r)) = x.point(indices[r]);
  return out;
}

double potential(const Dataset& x, const PointMatrix& centers) {
  double total = 0.0;
  for (double v : nearest_sq_dist(x, centers)) total += v;
  return total / static_cast<double>(x.n());
}

KmeansppInit kmeanspp_init(const Dataset& x, int k, Rng& rng) {
  if (k < 1) throw Error("k-means++ needs k >= 1");
  if (k > x.n()) throw Error("k-means++ needs k <= n");
  const auto n = static_cast<std::size_t>(x.n());
  std::vector<Index> chosen;
  std::vector<char> taken(n, 0);
  chosen.reserve(static_cast<std::size_t>(k));

  std::uniform_int_distribution<Index> first(0, x.n() - 1);
  chosen.push_back(first(rng));
  taken[static_cast<std::size_t>(chosen.back())] = 1;

  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = (x.point(static_cast<Index>(i)) - x.point(chosen.back())).squaredNorm();
  }
  while (chosen.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += taken[i] ? 0.0 : dist[i];
    Index next = -1;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double target = u(rng);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i] || dist[i] <= 0.0) continue;
        acc += dist[i];
        next = static_cast<Index>(i);
        if (acc >= target) break;
      }
    } else {
      std::vector<Index> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!taken[i]) free.push_back(static_cast<Index>(i));
      }
      std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
      next = free[pick(rng)];
    }
    chosen.push_back(next);
    taken[static_cast<std::size_t>(next)] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], (x.point(static_cast<Index>(i)) - x.point(next)).squaredNorm());
    }
  }
  double pot = 0.0;
  for (double v : dist) pot += v;
  return {rows_of(x, chosen), std::move(chosen), pot / static_cast<double>(n)};
}

KmeansResult lloyd(const Dataset& x, int k, const PointMatrix& init_centers, int max_iter) {
  if (k < 1 || k > x.n()) throw Error("Lloyd needs 1 <= k <= n");
  if (init_centers.rows() != k || init_centers.cols() != x.d()) {
    throw Error("Lloyd needs k initial centers of matching dimension");
  }
  const Index n = x.n();
  const double initial = potential(x, init_centers);
  PointMatrix centers = init_centers;
  std::vector<int> labels;
  std::vector<double> history;
  double value = initial;
  bool converged = false;
  int it = 0;

  for (; it < std::max(1, max_iter); ++it) {
    auto next = nearest_centers(x, centers);

    // Re-seed empty clusters with the worst-served point of a cluster that
    // can spare one.
    std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
    for (int l : next) ++sizes[static_cast<std::size_t>(l)];
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) continue;
      Index worst = -1;
      double worst_d = -1.0;
      for (Index i = 0; i < n; ++i) {
        const int l = next[static_cast<std::size_t>(i)];
        if (sizes[static_cast<std::size_t>(l)] < 2) continue;
        const double dist = (x.point(i) - centers.row(l)).squaredNorm();
        if (dist > worst_d) {
          worst_d = dist;
          worst = i;
        }
      }
      --sizes[static_cast<std::size_t>(next[static_cast<std::size_t>(worst)])];
      next[static_cast<std::size_t>(worst)] = c;
      sizes[static_cast<std::size_t>(c)] = 1;
    }

    const bool unchanged = next == labels;
    labels = std::move(next);
    const Partition p(labels, k);
    centers = centroids(x, p);
    const double v = kmeans_value(x, p);
    history.push_back(v);
    const double prev = value;
    value = v;
    if (unchanged || (prev - v <= 1e-12 * std::max(prev, std::numeric_limits<double>::min()))) {
      converged = true;
      ++it;
      break;
    }
  }
  return {Partition(labels, k), centers, value, initial, it, converged, std::move(history)};
}

double kmeanspp_lower_bound(double v0, int k) {
  if (k < 1) throw Error("k must be positive");
  return v0 / (8.0 * (std::log(static_cast<double>(k)) + 2.0));
}

double kmeanspp_lb_sample(const Dataset& x, int k, Rng& rng) {
  return kmeanspp_lower_bound(kmeanspp_init(x, k, rng).potential, k);
}

InitIndices deterministic_kmeanspp(const Dataset& x, int k) {
  if (k < 1 || k > x.n()) throw Error("farthest-point init needs 1 <= k <= n");
  const auto n = static_cast<std::size_t>(x.n());
  InitIndices out{0};
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = (x.point(static_cast<Index>(i)) - x.point(0)).squaredNorm();
  while (out.size() < static_cast<std::size_t>(k)) {
    std::size_t best = 0;
    double best_d = -1.0;
    std::vector<char> used(n, 0);
    for (Index c : out) used[static_cast<std::size_t>(c)] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      // Strict comparison keeps the lowest index on ties. Chosen indices are
      // skipped so coincident data still yields k distinct indices.
      if (!used[i] && dist[i] > best_d) {
        best_d = dist[i];
        best = i;
      }
    }
    out.push_back(static_cast<Index>(best));
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], (x.point(static_cast<Index>(i)) - x.point(static_cast<Index>(best))).squaredNorm());
    }
  }
  return out;
}

double coverage_radius_b(const Dataset& x, const InitIndices& init) {
  if (init.empty()) throw Error("empty initialization");
  double b = 0.0;
  for (double v : nearest_sq_dist(x, rows_of(x, init))) b = std::max(b, v);
  return b;
}

double kcenter_cost(const Dataset& x, const PointMatrix& centers) {
  double f = 0.0;
  for (double v : nearest_sq_dist(x, centers)) f = std::max(f, v);
  return std::sqrt(f);
}

}  // namespace sketchsdp
