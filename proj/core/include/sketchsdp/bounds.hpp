#pragma once

// Random sketches and Monte Carlo lower bounds on the optimal k-means value.

#include "sketchsdp/core.hpp"
#include "sketchsdp/random.hpp"
#include "sketchsdp/sdp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sketchsdp {

enum class Replacement { with, without };

const char* to_string(Replacement r);

/// Row indices of a uniform sketch of size s, in draw order.
std::vector<Index> sketch_indices(Index n, Index s, Replacement replacement, Rng& rng);
Dataset sketch_uniform(const Dataset& x, Index s, Replacement replacement, Rng& rng);

struct BoundConfig {
  int k = 2;
  Index s = 300;
  int trials = 30;
  double epsilon = 0.01;
  std::optional<double> u;  // Hoeffding truncation level; unset means b
  std::optional<Replacement> replacement;  // unset means the method's own default
  std::uint64_t seed = 0;
  std::optional<double> cap;
  SolverConfig solver = [] {
    SolverConfig c;
    c.tol_primal = c.tol_dual = c.tol_gap = 1e-4;
    return c;
  }();
  double tol_high = 1e-6;
  int threads = 1;
};

void validate(const BoundConfig& cfg);

enum class BoundMethod { hoeffding, markov, baseline_lh, baseline_lm };

const char* to_string(BoundMethod m);

struct TrialRecord {
  int trial = 0;
  std::uint64_t sketch_hash = 0;
  double primal = 0.0;     // SDP primal value (diagnostic)
  double certified = 0.0;  // certified lower bound before clipping at 0
  double value = 0.0;      // value entering the bound
  double seconds = 0.0;
  int iterations = 0;
  bool failed = false;  // solver error; value is 0
  std::string status;
};

struct PhaseTimings {
  double init = 0.0;  // k-means++ seedings for the L_i
  double kpp = 0.0;   // k-means++ with Lloyd on the full data (min v_i)
  double sdp = 0.0;   // sketching and SDP trials
};

struct BoundReport {
  BoundMethod method = BoundMethod::hoeffding;
  double bound = 0.0;
  std::vector<TrialRecord> trials;
  int truncation_count = 0;  // trials where min{v, u} clipped
  std::optional<double> u;   // truncation level used (Hoeffding forms)
  PhaseTimings timings;
  std::optional<double> upper_bound_minvi;
};

/// mean(min{v_i, u}) - sqrt(u^2 / (2 l) ln(1/eps)), eps in (0, 1].
double hoeffding_value(const std::vector<double>& values, double u, double epsilon);
/// eps^(1/l) min_i v_i, eps in (0, 1].
double markov_value(const std::vector<double>& values, double epsilon);

/// One SDP trial on a given sketch: k-means++ and Lloyd on the sketch give the
/// warm start, and the certified lower bound (clipped at 0) is the value.
TrialRecord sdp_trial(const Dataset& sketch, const BoundConfig& cfg, Rng& rng);

/// Algorithm with Hoeffding's inequality; sketches default to sampling with
/// replacement, u defaults to the coverage radius b of deterministic k-means++.
BoundReport hoeffding_bound(const Dataset& x, const BoundConfig& cfg);

/// Algorithm with Markov's inequality; sketches default to sampling without
/// replacement.
BoundReport markov_bound(const Dataset& x, const BoundConfig& cfg);

struct BaselineReport {
  BoundReport lh;
  BoundReport lm;
  double avg_li = 0.0;
  std::vector<double> li;
};

/// The k-means++ baselines: l draws of L_i = V^(0) / (8 (ln k + 2)).
BaselineReport baseline_bounds(const Dataset& x, const BoundConfig& cfg);

struct BestKmeans {
  double min_vi;
  Partition partition;
  double init_seconds;
  double lloyd_seconds;
};

/// Smallest Lloyd-converged value over `restarts` k-means++ runs.
BestKmeans best_kmeanspp_value(const Dataset& x, int k, int restarts, Rng& rng);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Exceptions are
/// rethrown (the first by index) after all workers finish.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace sketchsdp
