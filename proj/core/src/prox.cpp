#include "sketchsdp/prox.hpp"

#include "sketchsdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sketchsdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ClusterGeometry {
  PointMatrix centers;
  std::vector<Index> sizes;
  double spread;  // sum_R ||X_R||^2
};

void check_pair(const Partition& p, int s, int t) {
  if (s < 0 || t < 0 || s >= p.k() || t >= p.k()) throw Error("cluster id out of range");
  if (s == t) throw Error("alpha/beta need distinct clusters");
}

double centered_norm_sq(const Dataset& x, const std::vector<Index>& members, const Eigen::RowVectorXd& c) {
  Matrix m(x.d(), static_cast<Index>(members.size()));
  for (std::size_t j = 0; j < members.size(); ++j) {
    m.col(static_cast<Index>(j)) = (x.point(members[j]) - c).transpose();
  }
  const double norm = linalg::spectral_norm(m);
  return norm * norm;
}

ClusterGeometry geometry(const Dataset& x, const Partition& p) {
  if (p.n() != x.n()) throw Error("partition size does not match dataset");
  ClusterGeometry g{centroids(x, p), p.sizes(), 0.0};
  const auto members = p.clusters();
  for (int a = 0; a < p.k(); ++a) {
    g.spread += centered_norm_sq(x, members[static_cast<std::size_t>(a)], g.centers.row(a));
  }
  return g;
}

double alpha_from(const Dataset& x, const Partition& p, const PointMatrix& c, int s, int t) {
  const Eigen::RowVectorXd diff = c.row(s) - c.row(t);
  const double len = diff.norm();
  if (!(len > 0.0)) throw Error("degenerate centroid pair");
  const Eigen::RowVectorXd dir = diff / len;
  const Eigen::RowVectorXd mid = 0.5 * (c.row(s) + c.row(t));
  double best = kInf;
  for (Index i = 0; i < x.n(); ++i) {
    if (p[i] != s) continue;
    best = std::min(best, (x.point(i) - mid).dot(dir));
  }
  return best;
}

double beta_from(const ClusterGeometry& g, int s, int t) {
  const double inv = 1.0 / static_cast<double>(g.sizes[static_cast<std::size_t>(s)]) +
                     1.0 / static_cast<double>(g.sizes[static_cast<std::size_t>(t)]);
  return 0.5 * std::sqrt(inv * g.spread);
}

}  // namespace

double alpha(const Dataset& x, const Partition& partition, int s, int t) {
  check_pair(partition, s, t);
  return alpha_from(x, partition, centroids(x, partition), s, t);
}

double beta(const Dataset& x, const Partition& partition, int s, int t) {
  check_pair(partition, s, t);
  return beta_from(geometry(x, partition), s, t);
}

double prox_value(const Dataset& x, const Partition& partition) {
  if (partition.k() < 2) throw Error("prox needs at least two clusters");
  const auto g = geometry(x, partition);
  double best = kInf;
  for (int s = 0; s < partition.k(); ++s) {
    for (int t = 0; t < partition.k(); ++t) {
      if (s == t) continue;
      best = std::min(best, alpha_from(x, partition, g.centers, s, t) - beta_from(g, s, t));
    }
  }
  return best;
}

double shape_threshold_c1(const ShapeInputs& in) {
  const double k = in.k;
  const double d = static_cast<double>(in.d);
  const double ratio = in.pi_max / in.pi_min;
  const double first = 48.0 * ratio * ratio * std::log(36.0 * k * k * k * (d + 1.0));
  double margin_term = 1.0;
  if (in.r > 0.0) {
    const double t = in.delta / (2.0 * in.r) - 1.0;
    if (!(t > 0.0)) return kInf;
    margin_term = std::max(1.0, 1.0 / (t * t));
  }
  const double second = 16.0 * margin_term * std::log(2.0 * k * (d + 2.0));
  return (2.0 / std::numbers::ln2) * std::max(first, second) / in.pi_min;
}

double shape_proximity_rhs(const ShapeInputs& in, double c) {
  const double k = in.k;
  const double d = static_cast<double>(in.d);
  const double cp = c * in.pi_min;
  const double two_over_ln2 = 2.0 / std::numbers::ln2;
  const double lead = (2.0 * in.r / in.delta + 1.5) * 8.0 *
                      std::sqrt(std::log(8.0 * k * k * (d + 2.0)) / cp * two_over_ln2);
  const double inner = (16.0 * std::sqrt(3.0) + std::sqrt(104.0 / 3.0)) * k / std::sqrt(cp) *
                       (in.pi_max / in.pi_min) * std::sqrt(std::log(36.0 * k * k * k * (d + 1.0))) *
                       std::sqrt(two_over_ln2);
  return lead + 0.5 * std::sqrt(inner);
}

double shape_threshold_c2(const ShapeInputs& in) {
  if (!(in.prox > 0.0)) return kInf;
  if (in.r == 0.0) return 1.0;  // prox / r is unbounded: holds for every c
  const double target = in.prox / in.r;
  double lo = 1.0;
  double hi = 1e12;
  if (shape_proximity_rhs(in, lo) < target) return lo;
  while (shape_proximity_rhs(in, hi) >= target) {
    if (hi > 1e290) return kInf;
    lo = hi;
    hi *= 1e6;
  }
  // The right side decreases like c^{-1/2} and c^{-1/4}: one crossing.
  for (int it = 0; it < 200 && hi > lo * (1.0 + 1e-6); ++it) {
    const double mid = std::sqrt(lo * hi);
    if (shape_proximity_rhs(in, mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double shape_parameter(const ShapeInputs& in) {
  if (!(in.prox > 0.0) || in.r > in.delta / 2.0) return kInf;
  return std::max(shape_threshold_c1(in), shape_threshold_c2(in));
}

ShapeStats cluster_stats(const Dataset& x, const Partition& partition) {
  if (partition.k() < 2) throw Error("cluster statistics need at least two clusters");
  const PointMatrix c = centroids(x, partition);
  double delta = kInf;
  for (int s = 0; s < partition.k(); ++s) {
    for (int t = s + 1; t < partition.k(); ++t) delta = std::min(delta, (c.row(s) - c.row(t)).norm());
  }
  double r = 0.0;
  for (Index i = 0; i < x.n(); ++i) r = std::max(r, (x.point(i) - c.row(partition[i])).norm());
  const auto sizes = partition.sizes();
  const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
  const double n = static_cast<double>(x.n());
  ShapeStats st{delta, r, prox_value(x, partition), static_cast<double>(*mn) / n,
                static_cast<double>(*mx) / n, partition.k(), x.d(), kInf};
  st.shape_parameter = shape_parameter(ShapeInputs{st.delta, st.r, st.prox, st.pi_min, st.pi_max, st.k, st.d});
  return st;
}

double shape_parameter(const Dataset& x, const Partition& partition) {
  return cluster_stats(x, partition).shape_parameter;
}

}  // namespace sketchsdp
