#include "sketchsdp/error.hpp"
#include "sketchsdp/sketchsolve.hpp"
#include "sketchsdp/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sketchsdp;

TEST(BernoulliSketch, Examples) {
  Rng rng(1);
  EXPECT_EQ(bernoulli_sketch(5, 1.0, 2, rng), (std::vector<Index>{0, 1, 2, 3, 4}));
  const Index n = 100000;
  const double p = 0.1;
  const auto w = bernoulli_sketch(n, p, 2, rng);
  EXPECT_NEAR(static_cast<double>(w.size()), p * n, 3.0 * std::sqrt(n * p * (1 - p)));
  EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
  try {
    bernoulli_sketch(3, 1e-9, 2, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "sketch too small; increase p");
  }
  EXPECT_THROW(bernoulli_sketch(3, 0.0, 1, rng), Error);
  EXPECT_THROW(bernoulli_sketch(3, 1.5, 1, rng), Error);
}

TEST(SketchAndSolve, TwoPointMasses) {
  PointMatrix m(8, 2);
  for (Index i = 0; i < 8; ++i) {
    m(i, 0) = i < 4 ? 0.0 : 10.0;
    m(i, 1) = 0.0;
  }
  SketchSolveConfig cfg;
  cfg.k = 2;
  cfg.p = 1.0;
  const auto r = sketch_and_solve(Dataset(m), cfg);
  EXPECT_TRUE(r.partition.same_clustering(Partition({0, 0, 0, 0, 1, 1, 1, 1}, 2)));
  EXPECT_TRUE(r.diagnostics.exact);
  EXPECT_FALSE(r.diagnostics.fewer_cells);
  EXPECT_EQ(r.diagnostics.sketch.size(), 8u);
}

TEST(SketchAndSolve, FullSketchMatchesDirectRounding) {
  Rng rng(3);
  const auto planted = sample_sbm(two_ball_centers(3.0), 6, rng);
  SketchSolveConfig cfg;
  cfg.k = 2;
  cfg.p = 1.0;
  const auto r = sketch_and_solve(planted.data, cfg);
  const auto sol = solve(build_problem(planted.data, 2), cfg.solver);
  const auto direct = round_solution(sol.z, planted.data, 2);
  EXPECT_TRUE(r.sketch_partition.same_clustering(direct.partition));
}

TEST(SketchAndSolve, ValidOutputAndProxConsistency) {
  Rng rng(4);
  const auto planted = sample_sbm(two_ball_centers(4.0), 300, rng);
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SketchSolveConfig cfg;
    cfg.k = 2;
    cfg.p = 20.0 / 600.0;
    cfg.seed = seed;
    SketchSolveResult r = [&] {
      try {
        return sketch_and_solve(planted.data, cfg);
      } catch (const Error&) {
        cfg.seed += 1000;
        return sketch_and_solve(planted.data, cfg);
      }
    }();
    EXPECT_EQ(r.partition.n(), planted.data.n());
    EXPECT_LE(r.partition.k(), 2);
    if (r.diagnostics.sketch_prox && *r.diagnostics.sketch_prox > 0.0) {
      ++positive;
      const Partition restricted = [&] {
        std::vector<int> lab;
        for (Index i : r.diagnostics.sketch) lab.push_back(r.partition[i]);
        return Partition::from_labels(lab);
      }();
      EXPECT_TRUE(restricted.same_clustering(r.sketch_partition));
    }
  }
  EXPECT_GT(positive, 0);
}

TEST(SketchAndSolve, DeterministicForSeed) {
  Rng rng(5);
  const auto planted = sample_sbm(two_ball_centers(3.5), 100, rng);
  SketchSolveConfig cfg;
  cfg.k = 2;
  cfg.p = 0.2;
  cfg.seed = 9;
  const auto a = sketch_and_solve(planted.data, cfg);
  const auto b = sketch_and_solve(planted.data, cfg);
  EXPECT_EQ(a.diagnostics.sketch, b.diagnostics.sketch);
  EXPECT_EQ(a.partition.assignment(), b.partition.assignment());
}

TEST(PlantedRecovery, Geometry) {
  const PointMatrix mu = two_ball_centers(4.0);
  EXPECT_TRUE(planted_balls_recovered(mu, mu));
  PointMatrix swapped(2, 2);
  swapped << 4, 0, 0, 0;
  EXPECT_TRUE(planted_balls_recovered(mu, swapped));
  PointMatrix shifted = mu;
  shifted(0, 0) = 2.5;  // bisector at 3.25 cuts the second ball
  EXPECT_FALSE(planted_balls_recovered(mu, shifted));
  shifted(0, 0) = 0.9;  // bisector at 2.45: still leaves both balls whole
  EXPECT_TRUE(planted_balls_recovered(mu, shifted));
  PointMatrix same(2, 2);
  same << 0, 0, 0.1, 0;
  EXPECT_FALSE(planted_balls_recovered(mu, same));
}
