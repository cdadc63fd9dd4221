#pragma once

// Independent reference computations used as test oracles. Everything here is
// written with plain loops and std containers, sharing no code with the
// library beyond its value types.

#include "sketchsdp/core.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using sketchsdp::Dataset;
using sketchsdp::Index;

inline std::vector<std::vector<double>> rows(const Dataset& x) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(x.n()));
  for (Index i = 0; i < x.n(); ++i) {
    for (Index j = 0; j < x.d(); ++j) out[static_cast<std::size_t>(i)].push_back(x.points()(i, j));
  }
  return out;
}

inline double sqdist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

/// (1/n) sum ||x_i - c_{label(i)}||^2 with centroids computed directly.
inline double kmeans_value(const Dataset& x, const std::vector<int>& labels, int k) {
  const auto r = rows(x);
  const std::size_t d = r.front().size();
  std::vector<std::vector<double>> c(static_cast<std::size_t>(k), std::vector<double>(d, 0.0));
  std::vector<double> cnt(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto a = static_cast<std::size_t>(labels[i]);
    cnt[a] += 1.0;
    for (std::size_t j = 0; j < d; ++j) c[a][j] += r[i][j];
  }
  for (std::size_t a = 0; a < c.size(); ++a) {
    for (auto& v : c[a]) v /= cnt[a];
  }
  double total = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) total += sqdist(r[i], c[static_cast<std::size_t>(labels[i])]);
  return total / static_cast<double>(r.size());
}

/// Visits every surjective labelling [n] -> [k] (k^n candidates, so small n
/// only). Each partition is visited k! times.
inline void for_each_labelling(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> lab(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (int l : lab) seen[static_cast<std::size_t>(l)] = 1;
    bool onto = true;
    for (char s : seen) onto = onto && s;
    if (onto) visit(lab);
    int pos = 0;
    while (pos < n && ++lab[static_cast<std::size_t>(pos)] == k) {
      lab[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
}

/// Minimum k-means value over all partitions, by brute-force labelling.
inline double min_kmeans(const Dataset& x, int k) {
  double best = std::numeric_limits<double>::infinity();
  for_each_labelling(static_cast<int>(x.n()), k,
                     [&](const std::vector<int>& lab) { best = std::min(best, kmeans_value(x, lab, k)); });
  return best;
}

/// (1/2n) sum_{S} (1/|S|) sum_{i,j in S} ||x_i - x_j||^2 from raw coordinates.
inline double trace_form(const Dataset& x, const std::vector<int>& labels, int k) {
  const auto r = rows(x);
  double total = 0.0;
  for (int a = 0; a < k; ++a) {
    double block = 0.0;
    double size = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (labels[i] != a) continue;
      size += 1.0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (labels[j] == a) block += sqdist(r[i], r[j]);
      }
    }
    total += block / size;
  }
  return total / (2.0 * static_cast<double>(r.size()));
}

/// Smallest value of (1/2s) tr(D Z_Gamma) over all k-partitions of s points
/// described by a distance matrix.
inline double min_trace_over_partitions(const sketchsdp::Matrix& d, int k) {
  const int s = static_cast<int>(d.rows());
  double best = std::numeric_limits<double>::infinity();
  for_each_labelling(s, k, [&](const std::vector<int>& lab) {
    double total = 0.0;
    for (int a = 0; a < k; ++a) {
      double block = 0.0;
      double size = 0.0;
      for (int i = 0; i < s; ++i) {
        if (lab[static_cast<std::size_t>(i)] != a) continue;
        size += 1.0;
        for (int j = 0; j < s; ++j) {
          if (lab[static_cast<std::size_t>(j)] == a) block += d(i, j);
        }
      }
      total += block / size;
    }
    best = std::min(best, total / (2.0 * s));
  });
  return best;
}

/// k-center cost of the centers at `idx`, non-squared.
inline double kcenter(const Dataset& x, const std::vector<Index>& idx) {
  const auto r = rows(x);
  double worst = 0.0;
  for (const auto& p : r) {
    double near = std::numeric_limits<double>::infinity();
    for (Index c : idx) near = std::min(near, std::sqrt(sqdist(p, r[static_cast<std::size_t>(c)])));
    worst = std::max(worst, near);
  }
  return worst;
}

/// Minimum k-center cost over all k-subsets of the points.
inline double best_kcenter_subset(const Dataset& x, int k) {
  const int n = static_cast<int>(x.n());
  double best = std::numeric_limits<double>::infinity();
  std::vector<Index> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == k) {
      best = std::min(best, kcenter(x, pick));
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace oracle
