#include "oracle.hpp"

#include "sketchsdp/error.hpp"
#include "sketchsdp/prox.hpp"
#include "sketchsdp/sdp.hpp"
#include "sketchsdp/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sketchsdp;

namespace {

Dataset line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> r;
  for (double x : xs) r.push_back({x});
  return Dataset::from_rows(r);
}

// Shape thresholds evaluated directly from the two sketch-size inequalities.
// The proximity inequality reads prox/r >= A t^2 + B t with t = (c pi_min)^(-1/4),
// so its crossing point solves a quadratic.
double c1_oracle(const ShapeInputs& in) {
  const double k = in.k;
  const double d = static_cast<double>(in.d);
  const double ratio = in.pi_max / in.pi_min;
  const double g = std::max(1.0, std::pow(in.delta / (2 * in.r) - 1, -2));
  return (2 / std::log(2.0)) / in.pi_min *
         std::max(48 * ratio * ratio * std::log(36 * k * k * k * (d + 1)), 16 * g * std::log(2 * k * (d + 2)));
}

double c2_oracle(const ShapeInputs& in) {
  const double k = in.k;
  const double d = static_cast<double>(in.d);
  const double two_ln2 = 2 / std::log(2.0);
  const double a = (2 * in.r / in.delta + 1.5) * 8 * std::sqrt(std::log(8 * k * k * (d + 2)) * two_ln2);
  const double b = 0.5 * std::sqrt((16 * std::sqrt(3.0) + std::sqrt(104.0 / 3)) * k * (in.pi_max / in.pi_min) *
                                   std::sqrt(std::log(36 * k * k * k * (d + 1))) * std::sqrt(two_ln2));
  const double q = in.prox / in.r;
  const double t = (-b + std::sqrt(b * b + 4 * a * q)) / (2 * a);
  return std::max(1.0, std::pow(t, -4) / in.pi_min);
}

Dataset random_points(Rng& rng, Index n, Index d, double spread) {
  std::normal_distribution<double> g(0.0, spread);
  PointMatrix m(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) m(i, j) = g(rng);
  }
  return Dataset(m);
}

// Two tight groups whose separation varies; some instances have a prox-positive
// partition and some do not.
Dataset two_groups(Rng& rng, Index n, double sep) {
  std::normal_distribution<double> g(0.0, 0.3);
  PointMatrix m(n, 2);
  for (Index i = 0; i < n; ++i) {
    m(i, 0) = g(rng) + (i % 2 == 0 ? 0.0 : sep);
    m(i, 1) = g(rng);
  }
  return Dataset(m);
}

}  // namespace

TEST(Alpha, Examples) {
  EXPECT_DOUBLE_EQ(alpha(line({0, 4}), Partition({0, 1}, 2), 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(alpha(line({0, 1, 4}), Partition({0, 0, 1}, 2), 0, 1), 1.25);
  const auto x = line({-5, -4, 4, 5});
  const Partition p({0, 0, 1, 1}, 2);
  EXPECT_DOUBLE_EQ(alpha(x, p, 0, 1), alpha(x, p, 1, 0));
  EXPECT_THROW(alpha(line({-1, 1, 0}), Partition({0, 0, 1}, 2), 0, 1), Error);
  EXPECT_THROW(alpha(line({0, 4}), Partition({0, 1}, 2), 0, 0), Error);
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta(line({0, 4, 9}), Partition({0, 1, 2}, 3), 0, 2), 0.0);
  EXPECT_NEAR(beta(line({-1, 1, 10}), Partition({0, 0, 1}, 2), 0, 1), 0.5 * std::sqrt(3.0), 1e-12);
  const auto x = line({0, 1, 3, 7, 8});
  const Partition p({0, 0, 1, 1, 1}, 2);
  EXPECT_DOUBLE_EQ(beta(x, p, 0, 1), beta(x, p, 1, 0));
}

TEST(Prox, Examples) {
  EXPECT_DOUBLE_EQ(prox_value(line({0, 4}), Partition({0, 1}, 2)), 2.0);
  // {0,1} | {2,3}: centroids 0.5 and 2.5, midpoint 1.5; alpha = 0.5 both ways.
  // Each centered cluster is (-0.5, 0.5) with squared norm 0.5, so
  // beta = 0.5 * sqrt((1/2 + 1/2) * 1) = 0.5.
  EXPECT_NEAR(prox_value(line({0, 1, 2, 3}), Partition({0, 0, 1, 1}, 2)), 0.0, 1e-12);
  EXPECT_THROW(prox_value(line({0, 1}), Partition({0, 0}, 1)), Error);
}

TEST(Prox, MultiDimensionalOracle) {
  // Hand evaluation in d = 2: clusters {(0,0),(0,2)} and {(6,1)}.
  const auto x = Dataset::from_rows({{0, 0}, {0, 2}, {6, 1}});
  const Partition p({0, 0, 1}, 2);
  // c_S = (0,1), c_T = (6,1), midpoint (3,1), direction (-1,0): alpha_ST = 3, alpha_TS = 3.
  // X_S columns (0,-1), (0,1): squared norm 2; beta = 0.5 * sqrt(1.5 * 2).
  EXPECT_NEAR(prox_value(x, p), 3.0 - 0.5 * std::sqrt(3.0), 1e-12);
}

TEST(ClusterStats, Examples) {
  auto st = cluster_stats(line({0, 4}), Partition({0, 1}, 2));
  EXPECT_DOUBLE_EQ(st.delta, 4.0);
  EXPECT_EQ(st.r, 0.0);
  EXPECT_DOUBLE_EQ(st.prox, 2.0);
  EXPECT_DOUBLE_EQ(st.pi_min, 0.5);
  EXPECT_DOUBLE_EQ(st.pi_max, 0.5);

  st = cluster_stats(line({0, 1, 10, 11}), Partition({0, 0, 1, 1}, 2));
  EXPECT_DOUBLE_EQ(st.delta, 10.0);
  EXPECT_DOUBLE_EQ(st.r, 0.5);
  EXPECT_LE(st.pi_min * st.k, 1.0);
  EXPECT_GE(st.pi_max * st.k, 1.0);
}

TEST(ClusterStats, DilationEquivariance) {
  Rng rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = two_groups(rng, 20, 6.0 + rep);
    const Partition p(std::vector<int>([&] {
                        std::vector<int> l;
                        for (int i = 0; i < 20; ++i) l.push_back(i % 2);
                        return l;
                      }()),
                      2);
    const auto a = cluster_stats(x, p);
    ASSERT_GT(a.prox, 0.0);
    for (double c : {0.1, 3.0, 250.0}) {
      const auto b = cluster_stats(Dataset(PointMatrix(c * x.points())), p);
      EXPECT_NEAR(b.prox, c * a.prox, 1e-9 * std::max(1.0, c));
      EXPECT_NEAR(b.delta, c * a.delta, 1e-9 * std::max(1.0, c));
      EXPECT_NEAR(b.r, c * a.r, 1e-9 * std::max(1.0, c));
      EXPECT_EQ(b.pi_min, a.pi_min);
      EXPECT_NEAR(b.shape_parameter, a.shape_parameter, 1e-6 * a.shape_parameter);
    }
  }
}

TEST(ClusterStats, GeometricBound) {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = random_points(rng, 12, 2, 2.0);
    std::vector<int> l;
    for (int i = 0; i < 12; ++i) l.push_back(i % 3);
    const Partition p(l, 3);
    const auto st = cluster_stats(x, p);
    double max_alpha = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 3; ++s) {
      for (int t = 0; t < 3; ++t) {
        if (s != t) max_alpha = std::max(max_alpha, alpha(x, p, s, t));
      }
    }
    EXPECT_LE(st.prox, max_alpha + 1e-12);
    EXPECT_LE(max_alpha, st.delta / 2 + st.r + 1e-12);
  }
}

TEST(ShapeParameter, HypothesesFail) {
  // prox <= 0.
  EXPECT_TRUE(std::isinf(shape_parameter(line({0, 1, 2, 3}), Partition({0, 0, 1, 1}, 2))));
  ShapeInputs in{4.0, 2.5, 0.1, 0.5, 0.5, 2, 1};
  EXPECT_TRUE(std::isinf(shape_parameter(in)));
  in.prox = -1.0;
  in.r = 0.5;
  EXPECT_TRUE(std::isinf(shape_parameter(in)));
}

TEST(ShapeParameter, MatchesClosedFormOracle) {
  // Singletons at distance 4 in d = 1 with a small positive radius.
  const ShapeInputs tiny{4.0, 1e-3, 2.0 - 1e-3, 0.5, 0.5, 2, 1};
  EXPECT_NEAR(shape_threshold_c1(tiny), c1_oracle(tiny), 1e-9 * c1_oracle(tiny));
  EXPECT_NEAR(shape_threshold_c2(tiny), c2_oracle(tiny), 1e-5 * c2_oracle(tiny));
  EXPECT_TRUE(std::isfinite(shape_parameter(tiny)));

  Rng rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    ShapeInputs in;
    in.k = 2 + static_cast<int>(rng() % 8);
    in.d = 1 + static_cast<Index>(rng() % 30);
    in.delta = 1.0 + 20.0 * u(rng);
    in.r = in.delta * 0.49 * u(rng) + 1e-6;
    in.prox = (in.delta / 2 - in.r) * (0.01 + 0.99 * u(rng));
    in.pi_min = (0.2 + 0.8 * u(rng)) / in.k;
    in.pi_max = std::max(in.pi_min, std::min(1.0 - (in.k - 1) * in.pi_min, (1.0 + u(rng)) / in.k));
    if (in.pi_max * in.k < 1.0) in.pi_max = 1.0 / in.k;
    const double c1 = c1_oracle(in);
    const double c2 = c2_oracle(in);
    EXPECT_NEAR(shape_threshold_c1(in), c1, 1e-9 * c1);
    EXPECT_NEAR(shape_threshold_c2(in), c2, 2e-6 * c2);
    EXPECT_NEAR(shape_parameter(in), std::max(c1, c2), 2e-6 * std::max(c1, c2));
    // The proximity inequality holds at c2 and fails just below it.
    if (c2 > 1.0) {
      EXPECT_LE(shape_proximity_rhs(in, c2 * (1 + 1e-5)), in.prox / in.r);
      EXPECT_GE(shape_proximity_rhs(in, c2 * (1 - 1e-5)), in.prox / in.r);
    }
  }
}

TEST(Prox, AtMostOnePositivePartitionAndItIsOptimal) {
  Rng rng(10);
  int with_positive = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const Index n = 4 + static_cast<Index>(rng() % 6);
    const auto x = two_groups(rng, n, 1.0 + 0.25 * rep);
    int positive = 0;
    std::vector<int> winner;
    for_each_partition(n, 2, [&](const std::vector<int>& lab) {
      if (prox_value(x, Partition(lab, 2)) > 0.0) {
        ++positive;
        winner = lab;
      }
    });
    EXPECT_LE(positive, 1);
    if (positive == 1) {
      ++with_positive;
      const Partition g(winner, 2);
      EXPECT_TRUE(brute_force_ip(x, 2).partition.same_clustering(g));
      if (n <= 8) {
        const auto sol = solve_two_stage(build_problem(x, 2, std::nullopt), SolverConfig{}, 1e-8);
        EXPECT_LE((sol.z - partition_matrix(g)).norm(), 1e-4) << "n=" << n;
      }
    }
  }
  EXPECT_GT(with_positive, 10);
}

TEST(Prox, StochasticBallLimit) {
  Rng rng(99);
  const auto planted = sample_sbm(two_ball_centers(4.0), 10000, rng);
  EXPECT_NEAR(prox_value(planted.data, planted.planted()), 0.5, 0.1);
}
