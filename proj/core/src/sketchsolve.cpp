#include "sketchsdp/sketchsolve.hpp"

#include "sketchsdp/error.hpp"
#include "sketchsdp/prox.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace sketchsdp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<Index> bernoulli_sketch(Index n, double p, int k, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw Error("Bernoulli rate must lie in (0, 1]");
  std::vector<Index> w;
  if (p == 1.0) {
    w.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i;
  } else {
    // Gaps between kept indices are geometric, so the draw costs O(pn).
    std::geometric_distribution<Index> gap(p);
    for (Index i = gap(rng); i < n;) {
      w.push_back(i);
      const Index step = gap(rng);
      if (step >= n - i - 1) break;
      i += step + 1;
    }
  }
  if (static_cast<Index>(w.size()) < k) throw Error("sketch too small; increase p");
  return w;
}

SketchClustering cluster_sketch(const Dataset& y, int k, const SolverConfig& solver, std::optional<double> cap) {
  const auto problem = build_problem(y, k, cap);
  auto sol = solve(problem, solver);
  auto rounding = round_solution(sol.z, y, k);
  return {std::move(rounding.partition), std::move(sol), rounding.exact};
}

SketchSolveResult sketch_and_solve(const Dataset& x, const SketchSolveConfig& cfg) {
  if (cfg.k < 1) throw Error("k must be positive");
  const auto t0 = Clock::now();
  Rng rng = make_stream(cfg.seed, 0);
  SketchSolveDiagnostics diag;
  diag.sketch = bernoulli_sketch(x.n(), cfg.p, cfg.k, rng);
  const Dataset y = x.subset(diag.sketch);
  diag.t_sketch = seconds_since(t0);

  const auto t1 = Clock::now();
  auto clustering = cluster_sketch(y, cfg.k, cfg.solver, cfg.cap);
  const PointMatrix centers = centroids(y, clustering.partition);
  diag.t_sdp = seconds_since(t1);
  diag.residuals = clustering.solution.residuals;
  diag.status = clustering.solution.status;
  diag.iterations = clustering.solution.iterations;
  diag.exact = clustering.exact;
  diag.sdp_value = clustering.solution.primal_value;
  if (clustering.partition.k() >= 2) {
    try {
      diag.sketch_prox = prox_value(y, clustering.partition);
    } catch (const Error&) {
      diag.sketch_prox.reset();
    }
  }

  const auto t2 = Clock::now();
  Partition full = assign_to_nearest(x, centers);
  diag.t_assign = seconds_since(t2);
  diag.fewer_cells = full.k() < cfg.k;
  diag.t_total = seconds_since(t0);
  return {std::move(full), std::move(clustering.partition), centers, std::move(diag)};
}

bool planted_balls_recovered(const PointMatrix& ball_centers, const PointMatrix& found, double radius) {
  const Index k = ball_centers.rows();
  if (found.rows() != k || found.cols() != ball_centers.cols()) return false;
  std::vector<Index> match(static_cast<std::size_t>(k));
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  for (Index a = 0; a < k; ++a) {
    Index best = 0;
    double best_d = (found.row(0) - ball_centers.row(a)).squaredNorm();
    for (Index c = 1; c < k; ++c) {
      const double dist = (found.row(c) - ball_centers.row(a)).squaredNorm();
      if (dist < best_d) {
        best_d = dist;
        best = c;
      }
    }
    if (used[static_cast<std::size_t>(best)]) return false;
    used[static_cast<std::size_t>(best)] = 1;
    match[static_cast<std::size_t>(a)] = best;
  }
  for (Index a = 0; a < k; ++a) {
    const auto ca = found.row(match[static_cast<std::size_t>(a)]);
    for (Index b = 0; b < k; ++b) {
      if (b == match[static_cast<std::size_t>(a)]) continue;
      const auto cb = found.row(b);
      const Eigen::RowVectorXd diff = ca - cb;
      const Eigen::RowVectorXd mid = 0.5 * (ca + cb);
      // Worst point of the ball is mu_a - radius * diff / |diff|.
      if ((ball_centers.row(a) - mid).dot(diff) - radius * diff.norm() <= 0.0) return false;
    }
  }
  return true;
}

}  // namespace sketchsdp
