#include "sketchsdp/bounds.hpp"

#include "sketchsdp/error.hpp"
#include "sketchsdp/kmeans.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

namespace sketchsdp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::uint64_t kHoeffdingTag = 1;
constexpr std::uint64_t kMarkovTag = 2;
constexpr std::uint64_t kBaselineTag = 3;

std::uint64_t stream_id(std::uint64_t tag, int trial) {
  return (tag << 32) | static_cast<std::uint32_t>(trial);
}

std::vector<TrialRecord> run_sdp_trials(const Dataset& x, const BoundConfig& cfg, Replacement repl,
                                        std::uint64_t tag) {
  std::vector<TrialRecord> out(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](int t) {
    Rng rng = make_stream(cfg.seed, stream_id(tag, t));
    const auto idx = sketch_indices(x.n(), cfg.s, repl, rng);
    const Dataset y = x.subset(idx);
    TrialRecord rec = sdp_trial(y, cfg, rng);
    rec.trial = t;
    rec.sketch_hash = hash_indices(idx);
    out[static_cast<std::size_t>(t)] = rec;
  });
  return out;
}

double total_seconds(const std::vector<TrialRecord>& trials) {
  double s = 0.0;
  for (const auto& t : trials) s += t.seconds;
  return s;
}

std::vector<double> values_of(const std::vector<TrialRecord>& trials) {
  std::vector<double> v;
  v.reserve(trials.size());
  for (const auto& t : trials) v.push_back(t.value);
  return v;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("epsilon must lie in (0, 1]");
}

}  // namespace

const char* to_string(Replacement r) { return r == Replacement::with ? "with" : "without"; }

const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::hoeffding:
      return "hoeffding";
    case BoundMethod::markov:
      return "markov";
    case BoundMethod::baseline_lh:
      return "baseline_LH";
    case BoundMethod::baseline_lm:
      return "baseline_LM";
  }
  return "unknown";
}

std::vector<Index> sketch_indices(Index n, Index s, Replacement replacement, Rng& rng) {
  if (n < 1) throw Error("cannot sketch an empty dataset");
  if (s < 1) throw Error("sketch size must be positive");
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(s));
  if (replacement == Replacement::with) {
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (Index j = 0; j < s; ++j) out.push_back(pick(rng));
    return out;
  }
  if (s > n) throw Error("sketch size exceeds n without replacement");
  // Partial Fisher-Yates; the first s slots are the draws in order.
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index j = 0; j < s; ++j) {
    std::uniform_int_distribution<Index> pick(j, n - 1);
    std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(pick(rng))]);
    out.push_back(perm[static_cast<std::size_t>(j)]);
  }
  return out;
}

Dataset sketch_uniform(const Dataset& x, Index s, Replacement replacement, Rng& rng) {
  const auto idx = sketch_indices(x.n(), s, replacement, rng);
  return x.subset(idx);
}

void validate(const BoundConfig& cfg) {
  if (cfg.k < 1) throw Error("k must be positive");
  if (cfg.s < cfg.k) throw Error("sketch size must be at least k");
  if (cfg.trials < 1) throw Error("need at least one trial");
  check_epsilon(cfg.epsilon);
  if (cfg.u && !(*cfg.u >= 0.0)) throw Error("truncation level u must be nonnegative");
  if (cfg.threads < 1) throw Error("threads must be positive");
}

double hoeffding_value(const std::vector<double>& values, double u, double epsilon) {
  if (values.empty()) throw Error("no trial values");
  check_epsilon(epsilon);
  double sum = 0.0;
  for (double v : values) sum += std::min(v, u);
  const double l = static_cast<double>(values.size());
  return sum / l - std::sqrt(u * u / (2.0 * l) * std::log(1.0 / epsilon));
}

double markov_value(const std::vector<double>& values, double epsilon) {
  if (values.empty()) throw Error("no trial values");
  check_epsilon(epsilon);
  const double l = static_cast<double>(values.size());
  return std::pow(epsilon, 1.0 / l) * *std::min_element(values.begin(), values.end());
}

TrialRecord sdp_trial(const Dataset& sketch, const BoundConfig& cfg, Rng& rng) {
  const auto t0 = Clock::now();
  TrialRecord rec;
  try {
    const auto init = kmeanspp_init(sketch, cfg.k, rng);
    const auto km = lloyd(sketch, cfg.k, init.centers);
    const auto problem = build_problem(sketch, cfg.k, cfg.cap);
    SolverConfig solver = cfg.solver;
    if (km.partition.k() == cfg.k) solver.warm_start = km.partition;
    const auto sol = solve_two_stage(problem, solver, cfg.tol_high);
    rec.primal = sol.primal_value;
    rec.certified = sol.certified_lower_bound;
    rec.value = std::max(0.0, sol.certified_lower_bound);
    rec.iterations = sol.iterations;
    rec.status = to_string(sol.status);
  } catch (const Error&) {
    rec.primal = std::numeric_limits<double>::quiet_NaN();
    rec.certified = std::numeric_limits<double>::quiet_NaN();
    rec.value = 0.0;
    rec.failed = true;
    rec.status = "failed";
  }
  rec.seconds = seconds_since(t0);
  return rec;
}

BoundReport hoeffding_bound(const Dataset& x, const BoundConfig& cfg) {
  validate(cfg);
  BoundReport rep;
  rep.method = BoundMethod::hoeffding;
  double u = 0.0;
  if (cfg.u) {
    u = *cfg.u;
  } else {
    const auto t0 = Clock::now();
    u = coverage_radius_b(x, deterministic_kmeanspp(x, cfg.k));
    rep.timings.init += seconds_since(t0);
  }
  rep.u = u;
  rep.trials = run_sdp_trials(x, cfg, cfg.replacement.value_or(Replacement::with), kHoeffdingTag);
  rep.timings.sdp = total_seconds(rep.trials);
  const auto values = values_of(rep.trials);
  for (double v : values) rep.truncation_count += v > u ? 1 : 0;
  rep.bound = hoeffding_value(values, u, cfg.epsilon);
  return rep;
}

BoundReport markov_bound(const Dataset& x, const BoundConfig& cfg) {
  validate(cfg);
  BoundReport rep;
  rep.method = BoundMethod::markov;
  rep.trials = run_sdp_trials(x, cfg, cfg.replacement.value_or(Replacement::without), kMarkovTag);
  rep.timings.sdp = total_seconds(rep.trials);
  rep.bound = markov_value(values_of(rep.trials), cfg.epsilon);
  return rep;
}

BaselineReport baseline_bounds(const Dataset& x, const BoundConfig& cfg) {
  if (cfg.trials < 1) throw Error("need at least one trial");
  check_epsilon(cfg.epsilon);
  if (cfg.k < 1 || cfg.k > x.n()) throw Error("baselines need 1 <= k <= n");
  BaselineReport out;
  out.li.resize(static_cast<std::size_t>(cfg.trials));
  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  const auto t0 = Clock::now();
  parallel_for(cfg.trials, cfg.threads, [&](int t) {
    const auto t1 = Clock::now();
    Rng rng = make_stream(cfg.seed, stream_id(kBaselineTag, t));
    const double li = kmeanspp_lb_sample(x, cfg.k, rng);
    out.li[static_cast<std::size_t>(t)] = li;
    auto& rec = records[static_cast<std::size_t>(t)];
    rec.trial = t;
    rec.primal = std::numeric_limits<double>::quiet_NaN();
    rec.certified = li;
    rec.value = li;
    rec.status = "kmeans++";
    rec.seconds = seconds_since(t1);
  });
  const double init_seconds = seconds_since(t0);

  double u = 0.0;
  double extra_init = 0.0;
  if (cfg.u) {
    u = *cfg.u;
  } else {
    const auto t1 = Clock::now();
    u = coverage_radius_b(x, deterministic_kmeanspp(x, cfg.k));
    extra_init = seconds_since(t1);
  }

  out.avg_li = std::accumulate(out.li.begin(), out.li.end(), 0.0) / static_cast<double>(out.li.size());
  out.lh.method = BoundMethod::baseline_lh;
  out.lh.bound = hoeffding_value(out.li, u, cfg.epsilon);
  out.lh.u = u;
  for (double v : out.li) out.lh.truncation_count += v > u ? 1 : 0;
  out.lh.trials = records;
  out.lh.timings.init = init_seconds + extra_init;
  out.lm.method = BoundMethod::baseline_lm;
  out.lm.bound = markov_value(out.li, cfg.epsilon);
  out.lm.trials = std::move(records);
  out.lm.timings.init = init_seconds;
  return out;
}

BestKmeans best_kmeanspp_value(const Dataset& x, int k, int restarts, Rng& rng) {
  if (restarts < 1) throw Error("restarts must be positive");
  if (k < 1 || k > x.n()) throw Error("k-means++ needs 1 <= k <= n");
  std::optional<KmeansResult> best;
  double init_seconds = 0.0;
  double lloyd_seconds = 0.0;
  for (int r = 0; r < restarts; ++r) {
    const auto t0 = Clock::now();
    const auto init = kmeanspp_init(x, k, rng);
    const auto t1 = Clock::now();
    auto km = lloyd(x, k, init.centers);
    init_seconds += std::chrono::duration<double>(t1 - t0).count();
    lloyd_seconds += seconds_since(t1);
    if (!best || km.value < best->value) best = std::move(km);
  }
  return {best->value, best->partition, init_seconds, lloyd_seconds};
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(threads, count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sketchsdp
