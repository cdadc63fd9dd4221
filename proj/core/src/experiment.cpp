#include "sketchsdp/experiment.hpp"

#include "sketchsdp/bounds.hpp"
#include "sketchsdp/error.hpp"
#include "sketchsdp/kmeans.hpp"
#include "sketchsdp/sketchsolve.hpp"
#include "sketchsdp/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#ifndef SKETCHSDP_VERSION
#define SKETCHSDP_VERSION "unknown"
#endif
#ifndef SKETCHSDP_COMPILER
#define SKETCHSDP_COMPILER "unknown"
#endif
#ifndef SKETCHSDP_BUILD_TYPE
#define SKETCHSDP_BUILD_TYPE "unknown"
#endif

namespace sketchsdp {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDataStream = 0xDA7A;
constexpr std::uint64_t kMinViStream = 0x4B50;
constexpr std::uint64_t kPhaseTag = 0x50;
constexpr std::uint64_t kRuntimeTag = 0x52;
constexpr std::uint64_t kSketchSolveStream = 0x5353;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string hex64(std::uint64_t v) {
  std::array<char, 20> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(v));
  return buf.data();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw Error("invalid value for " + key + ": '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw Error("invalid value for " + key + ": '" + value + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<T>(key, item));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += shortest(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i > 0 ? "," : "") + v[i];
  return out;
}

bool has_task(const ExperimentConfig& cfg, const std::string& task) {
  return std::find(cfg.tasks.begin(), cfg.tasks.end(), task) != cfg.tasks.end();
}

struct Input {
  Dataset data;
  std::optional<std::vector<int>> labels;
  std::string name;
};

PointMatrix line_centers(int k, Index d, double spacing) {
  PointMatrix c = PointMatrix::Zero(k, d);
  for (int a = 0; a < k; ++a) c(a, 0) = spacing * a;
  return c;
}

Input load_input(const ExperimentConfig& cfg) {
  if (!cfg.input.empty()) {
    auto data = load_csv(cfg.input, cfg.delimiter, cfg.header);
    const auto name = cfg.dataset_name.empty() ? std::filesystem::path(cfg.input).stem().string() : cfg.dataset_name;
    return {std::move(data), std::nullopt, name};
  }
  Rng rng = make_stream(cfg.seed, kDataStream);
  const auto name = cfg.dataset_name.empty() ? cfg.synth : cfg.dataset_name;
  const int k = cfg.k.value_or(2);
  if (cfg.synth == "sbm") {
    const Index n = cfg.n > 0 ? cfg.n : 1000;
    const Index d = cfg.d > 0 ? cfg.d : 2;
    if (n < k) throw Error("synthetic n must be at least k");
    auto p = sample_sbm(line_centers(k, d, cfg.delta), n / k, rng);
    return {std::move(p.data), std::move(p.labels), name};
  }
  if (cfg.synth == "gmm") {
    const Index n = cfg.n > 0 ? cfg.n : 1000;
    const Index d = cfg.d > 0 ? cfg.d : 2;
    auto p = sample_gmm(line_centers(k, d, cfg.delta), std::vector<double>(static_cast<std::size_t>(k), 1.0 / k), n,
                        rng);
    return {std::move(p.data), std::move(p.labels), name};
  }
  if (cfg.synth == "norm10") {
    auto p = norm10(rng);
    return {std::move(p.data), std::move(p.labels), name};
  }
  if (cfg.synth == "norm25") {
    auto p = norm25(rng);
    return {std::move(p.data), std::move(p.labels), name};
  }
  throw Error("unknown synthetic generator '" + cfg.synth + "'");
}

std::string timed(const ExperimentConfig& cfg, double seconds) {
  return cfg.timings ? format_sci(seconds) : "NA";
}

std::string opt_sci(const std::optional<double>& v) { return v ? format_sci(*v) : "NA"; }

std::string num(double v) { return std::isnan(v) ? "NA" : shortest(v); }

BoundConfig bound_config(const ExperimentConfig& cfg) {
  BoundConfig b;
  b.k = *cfg.k;
  b.s = cfg.sketch_size;
  b.trials = cfg.trials;
  b.epsilon = cfg.epsilon;
  b.seed = cfg.seed;
  b.cap = cfg.cap;
  b.solver = SolverConfig{};
  b.solver.tol_primal = cfg.tol_low;
  b.solver.tol_dual = cfg.tol_low;
  b.solver.tol_gap = cfg.tol_low;
  b.solver.max_iter = cfg.max_iter;
  b.tol_high = cfg.tol_high;
  b.threads = cfg.threads;
  if (cfg.replacement == "with") b.replacement = Replacement::with;
  if (cfg.replacement == "without") b.replacement = Replacement::without;
  return b;
}

SolverConfig solver_config(const ExperimentConfig& cfg) {
  SolverConfig s;
  s.tol_primal = cfg.tol_high;
  s.tol_dual = cfg.tol_high;
  s.tol_gap = cfg.tol_high;
  s.max_iter = cfg.max_iter;
  return s;
}

void append_trials(std::string& out, const char* method, const std::vector<TrialRecord>& trials,
                   const ExperimentConfig& cfg, bool has_sketch) {
  for (const auto& t : trials) {
    out += std::string(method) + "\t" + std::to_string(t.trial) + "\t" + (has_sketch ? hex64(t.sketch_hash) : "NA") +
           "\t" + num(t.primal) + "\t" + num(t.certified) + "\t" + num(t.value) + "\t" +
           (cfg.timings ? num(t.seconds) : "NA") + "\t" + t.status + "\n";
  }
}

void run_bounds(const ExperimentConfig& cfg, const Input& in, std::map<std::string, std::string>& files) {
  const int k = *cfg.k;
  const bool want_h = has_task(cfg, "hoeffding");
  const bool want_m = has_task(cfg, "markov");
  const bool want_b = has_task(cfg, "baselines");
  const Dataset& x = in.data;

  Rng kpp_rng = make_stream(cfg.seed, kMinViStream);
  const auto best = best_kmeanspp_value(x, k, cfg.restarts.value_or(cfg.trials), kpp_rng);
  const double t_kpp = best.init_seconds + best.lloyd_seconds;

  BoundConfig bcfg = bound_config(cfg);
  if (cfg.u == "minvi") {
    bcfg.u = best.min_vi;
  } else if (cfg.u != "b") {
    bcfg.u = parse_number<double>("u", cfg.u);
  }

  std::optional<double> avg_li, lh, lm, bh, bm;
  std::optional<double> t_init;
  double t_sdp = 0.0;
  bool any_sdp = false;
  std::string sidecar = "method\ttrial\tsketch_hash\tprimal\tcertified\tvalue\tseconds\tstatus\n";
  if (want_b) {
    const auto rep = baseline_bounds(x, bcfg);
    avg_li = rep.avg_li;
    lh = rep.lh.bound;
    lm = rep.lm.bound;
    t_init = rep.lm.timings.init;
    append_trials(sidecar, "baseline", rep.lm.trials, cfg, false);
  }
  if (want_h) {
    const auto rep = hoeffding_bound(x, bcfg);
    bh = rep.bound;
    t_sdp += rep.timings.sdp;
    any_sdp = true;
    append_trials(sidecar, "hoeffding", rep.trials, cfg, true);
  }
  if (want_m) {
    const auto rep = markov_bound(x, bcfg);
    bm = rep.bound;
    t_sdp += rep.timings.sdp;
    any_sdp = true;
    append_trials(sidecar, "markov", rep.trials, cfg, true);
  }

  std::string table = "dataset\tk\tmin_vi\tavg_Li\tL_H\tL_M\tB_H\tB_M\tT_init\tT_kpp\tT_SDP\n";
  table += in.name + "\t" + std::to_string(k) + "\t" + format_sci(best.min_vi) + "\t" + opt_sci(avg_li) + "\t" +
           opt_sci(lh) + "\t" + opt_sci(lm) + "\t" + opt_sci(bh) + "\t" + opt_sci(bm) + "\t" +
           (t_init ? timed(cfg, *t_init) : "NA") + "\t" + timed(cfg, t_kpp) + "\t" +
           (any_sdp ? timed(cfg, t_sdp) : "NA") + "\n";
  files["bounds.tsv"] = table;
  files["trials.tsv"] = sidecar;
}

void run_sketch_solve(const ExperimentConfig& cfg, const Input& in, std::map<std::string, std::string>& files) {
  SketchSolveConfig sc;
  sc.k = *cfg.k;
  sc.p = *cfg.bernoulli_p;
  sc.seed = derive_seed(cfg.seed, kSketchSolveStream);
  sc.solver = solver_config(cfg);
  sc.cap = cfg.cap;
  const auto res = sketch_and_solve(in.data, sc);
  const auto& dg = res.diagnostics;
  std::string recovered = "NA";
  if (in.labels) {
    const auto planted = Partition::from_labels(*in.labels);
    recovered = res.partition.same_clustering(planted) ? "1" : "0";
  }
  std::string table =
      "dataset\tk\tn\tsketch_size\tclusters\texact\tfewer_cells\trecovered\tsketch_prox\tsdp_value\tkmeans_value\t"
      "residual_primal\tresidual_dual\tstatus\tT_sketch\tT_SDP\tT_assign\n";
  table += in.name + "\t" + std::to_string(sc.k) + "\t" + std::to_string(in.data.n()) + "\t" +
           std::to_string(dg.sketch.size()) + "\t" + std::to_string(res.partition.k()) + "\t" +
           (dg.exact ? "1" : "0") + "\t" + (dg.fewer_cells ? "1" : "0") + "\t" + recovered + "\t" +
           opt_sci(dg.sketch_prox) + "\t" + format_sci(dg.sdp_value) + "\t" +
           format_sci(kmeans_value(in.data, res.partition)) + "\t" + format_sci(dg.residuals.primal) + "\t" +
           format_sci(dg.residuals.dual) + "\t" + to_string(dg.status) + "\t" + timed(cfg, dg.t_sketch) + "\t" +
           timed(cfg, dg.t_sdp) + "\t" + timed(cfg, dg.t_assign) + "\n";
  files["sketch_solve.tsv"] = table;
  std::string labels = "index\tcluster\n";
  for (Index i = 0; i < in.data.n(); ++i) {
    labels += std::to_string(i) + "\t" + std::to_string(res.partition[i]) + "\n";
  }
  files["assignments.tsv"] = labels;
}

std::vector<double> default_deltas() {
  std::vector<double> v;
  for (int i = 0; i <= 20; ++i) v.push_back(2.0 + 0.1 * i);
  return v;
}

std::vector<Index> default_sketch_sizes() {
  std::vector<Index> v;
  for (Index w = 2; w <= 30; w += 2) v.push_back(w);
  return v;
}

void run_phase_diagram(const ExperimentConfig& cfg, std::map<std::string, std::string>& files) {
  const auto deltas = cfg.delta_list.empty() ? default_deltas() : cfg.delta_list;
  const auto sizes = cfg.sketch_list.empty() ? default_sketch_sizes() : cfg.sketch_list;
  const int k = 2;
  const SolverConfig solver = solver_config(cfg);
  std::string out = "delta\tsketch_size\trecovery_rate\n";
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    const PointMatrix centers = two_ball_centers(deltas[di], 2);
    for (std::size_t wi = 0; wi < sizes.size(); ++wi) {
      std::vector<char> ok(static_cast<std::size_t>(cfg.trials), 0);
      parallel_for(cfg.trials, cfg.threads, [&](int t) {
        const std::uint64_t stream = (kPhaseTag << 48) | (static_cast<std::uint64_t>(di) << 32) |
                                     (static_cast<std::uint64_t>(wi) << 20) | static_cast<std::uint64_t>(t);
        Rng rng = make_stream(cfg.seed, stream);
        const auto sample = sample_ball_union(centers, sizes[wi], rng);
        if (sample.data.n() < k) return;
        try {
          const auto cl = cluster_sketch(sample.data, k, solver, cfg.cap);
          ok[static_cast<std::size_t>(t)] = planted_balls_recovered(centers, centroids(sample.data, cl.partition)) ? 1 : 0;
        } catch (const SolverDiverged&) {
          ok[static_cast<std::size_t>(t)] = 0;
        }
      });
      const auto hits = std::count(ok.begin(), ok.end(), 1);
      out += shortest(deltas[di]) + "\t" + std::to_string(sizes[wi]) + "\t" +
             format_sci(static_cast<double>(hits) / cfg.trials) + "\n";
    }
  }
  files["phase_diagram.tsv"] = out;
}

void run_runtime_curve(const ExperimentConfig& cfg, std::map<std::string, std::string>& files) {
  const int k = 2;
  const PointMatrix centers = two_ball_centers(cfg.delta, 2);
  std::string out = "n\tmethod\tseconds\n";
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const Index n = cfg.n_list[ni];
    double t_sketch = 0.0;
    double t_kpp = 0.0;
    for (int rep = 0; rep < cfg.trials; ++rep) {
      const std::uint64_t stream = (kRuntimeTag << 48) | (static_cast<std::uint64_t>(ni) << 32) |
                                   static_cast<std::uint64_t>(rep);
      Rng rng = make_stream(cfg.seed, stream);
      const auto sample = sample_ball_union(centers, n, rng);
      SketchSolveConfig sc;
      sc.k = k;
      sc.p = std::min(10.0 / static_cast<double>(n), 1.0);
      sc.seed = derive_seed(cfg.seed, stream);
      sc.solver = solver_config(cfg);
      sc.cap = cfg.cap;
      std::optional<SketchSolveResult> res;
      for (int attempt = 0; !res; ++attempt) {
        try {
          res = sketch_and_solve(sample.data, sc);
        } catch (const Error& e) {
          // A sketch with fewer than k points is redrawn.
          if (std::string(e.what()).find("sketch too small") == std::string::npos || attempt > 1000) throw;
          sc.seed = derive_seed(sc.seed, 1);
        }
      }
      t_sketch += res->diagnostics.t_total;
      const auto t0 = Clock::now();
      const auto init = kmeanspp_init(sample.data, k, rng);
      lloyd(sample.data, k, init.centers);
      t_kpp += seconds_since(t0);
    }
    out += std::to_string(n) + "\tsketch_and_solve\t" + timed(cfg, t_sketch / cfg.trials) + "\n";
    out += std::to_string(n) + "\tkmeanspp\t" + timed(cfg, t_kpp / cfg.trials) + "\n";
  }
  files["runtime_curve.tsv"] = out;
}

}  // namespace

ExperimentConfig apply_key_values(ExperimentConfig cfg, const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (key.rfind("build.", 0) == 0) continue;
    if (key == "input") {
      cfg.input = value;
    } else if (key == "delimiter") {
      if (value == "tab" || value == "\\t") {
        cfg.delimiter = '\t';
      } else if (value.size() == 1) {
        cfg.delimiter = value[0];
      } else {
        throw Error("delimiter must be a single character or 'tab'");
      }
    } else if (key == "header") {
      cfg.header = parse_bool(key, value);
    } else if (key == "synth") {
      cfg.synth = value;
    } else if (key == "n") {
      cfg.n = parse_number<Index>(key, value);
    } else if (key == "d") {
      cfg.d = parse_number<Index>(key, value);
    } else if (key == "delta") {
      cfg.delta = parse_number<double>(key, value);
    } else if (key == "dataset") {
      cfg.dataset_name = value;
    } else if (key == "task") {
      cfg.tasks = split_list(value);
    } else if (key == "k") {
      if (value.empty()) {
        cfg.k.reset();
      } else {
        cfg.k = parse_number<int>(key, value);
      }
    } else if (key == "sketch_size") {
      cfg.sketch_size = parse_number<Index>(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_number<int>(key, value);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_number<double>(key, value);
    } else if (key == "bernoulli_p") {
      if (value.empty()) {
        cfg.bernoulli_p.reset();
      } else {
        cfg.bernoulli_p = parse_number<double>(key, value);
      }
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "cap") {
      if (value.empty() || value == "off") {
        cfg.cap.reset();
      } else {
        cfg.cap = parse_number<double>(key, value);
      }
    } else if (key == "restarts") {
      if (value.empty()) {
        cfg.restarts.reset();
      } else {
        cfg.restarts = parse_number<int>(key, value);
      }
    } else if (key == "u") {
      cfg.u = value;
    } else if (key == "replacement") {
      cfg.replacement = value;
    } else if (key == "tol_low") {
      cfg.tol_low = parse_number<double>(key, value);
    } else if (key == "tol_high") {
      cfg.tol_high = parse_number<double>(key, value);
    } else if (key == "max_iter") {
      cfg.max_iter = parse_number<int>(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_number<int>(key, value);
    } else if (key == "delta_list") {
      cfg.delta_list = parse_list<double>(key, value);
    } else if (key == "sketch_list") {
      cfg.sketch_list = parse_list<Index>(key, value);
    } else if (key == "n_list") {
      cfg.n_list = parse_list<Index>(key, value);
    } else if (key == "timings") {
      cfg.timings = parse_bool(key, value);
    } else if (key == "export") {
      cfg.export_path = value;
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      throw Error("unknown configuration key '" + key + "'");
    }
  }
  return cfg;
}

KeyValues to_key_values(const ExperimentConfig& cfg) {
  KeyValues kv;
  kv["input"] = cfg.input;
  kv["delimiter"] = cfg.delimiter == '\t' ? "tab" : std::string(1, cfg.delimiter);
  kv["header"] = cfg.header ? "true" : "false";
  kv["synth"] = cfg.synth;
  kv["n"] = std::to_string(cfg.n);
  kv["d"] = std::to_string(cfg.d);
  kv["delta"] = shortest(cfg.delta);
  kv["dataset"] = cfg.dataset_name;
  kv["task"] = join(cfg.tasks);
  kv["k"] = cfg.k ? std::to_string(*cfg.k) : "";
  kv["sketch_size"] = std::to_string(cfg.sketch_size);
  kv["trials"] = std::to_string(cfg.trials);
  kv["epsilon"] = shortest(cfg.epsilon);
  kv["bernoulli_p"] = cfg.bernoulli_p ? shortest(*cfg.bernoulli_p) : "";
  kv["seed"] = std::to_string(cfg.seed);
  kv["cap"] = cfg.cap ? shortest(*cfg.cap) : "off";
  kv["restarts"] = cfg.restarts ? std::to_string(*cfg.restarts) : "";
  kv["u"] = cfg.u;
  kv["replacement"] = cfg.replacement;
  kv["tol_low"] = shortest(cfg.tol_low);
  kv["tol_high"] = shortest(cfg.tol_high);
  kv["max_iter"] = std::to_string(cfg.max_iter);
  kv["threads"] = std::to_string(cfg.threads);
  kv["delta_list"] = join(cfg.delta_list);
  kv["sketch_list"] = join(cfg.sketch_list);
  kv["n_list"] = join(cfg.n_list);
  kv["timings"] = cfg.timings ? "true" : "false";
  kv["export"] = cfg.export_path;
  kv["out_dir"] = cfg.out_dir;
  return kv;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.tasks.empty()) throw Error("no task given");
  for (const auto& t : cfg.tasks) {
    if (std::find(known_tasks().begin(), known_tasks().end(), t) == known_tasks().end()) {
      throw Error("unknown task '" + t + "'");
    }
  }
  const bool needs_data = has_task(cfg, "sketch_solve") || has_task(cfg, "hoeffding") ||
                          has_task(cfg, "markov") || has_task(cfg, "baselines") || !cfg.export_path.empty();
  if (needs_data) {
    if (cfg.input.empty() == cfg.synth.empty()) throw Error("give exactly one of --input or --synth");
    if (!cfg.k) throw Error("--k is required");
  }
  if (cfg.k && *cfg.k < 2) throw Error("k must be at least 2");
  if (cfg.trials < 1) throw Error("trials must be positive");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw Error("epsilon must lie in (0, 1)");
  if (cfg.cap && !(*cfg.cap > 0.0)) throw Error("cap must be positive");
  if (cfg.restarts && *cfg.restarts < 1) throw Error("restarts must be positive");
  if (!(cfg.tol_low > 0.0 && cfg.tol_high > 0.0)) throw Error("tolerances must be positive");
  if (cfg.max_iter < 1) throw Error("max_iter must be positive");
  if (cfg.threads < 1) throw Error("threads must be positive");
  if (cfg.replacement != "default" && cfg.replacement != "with" && cfg.replacement != "without") {
    throw Error("replacement must be default, with or without");
  }
  if (cfg.u != "minvi" && cfg.u != "b") {
    const double u = parse_number<double>("u", cfg.u);
    if (!(u >= 0.0)) throw Error("u must be nonnegative");
  }
  if (has_task(cfg, "hoeffding") || has_task(cfg, "markov")) {
    if (cfg.sketch_size < *cfg.k) throw Error("sketch size must be at least k");
  }
  if (has_task(cfg, "sketch_solve")) {
    if (!cfg.bernoulli_p) throw Error("--bernoulli-p is required for sketch_solve");
    if (!(*cfg.bernoulli_p > 0.0 && *cfg.bernoulli_p <= 1.0)) throw Error("bernoulli_p must lie in (0, 1]");
  }
  if (has_task(cfg, "runtime_curve")) {
    if (cfg.n_list.empty()) throw Error("--n-list is required for runtime_curve");
    for (Index n : cfg.n_list) {
      if (n < 2) throw Error("runtime_curve sizes must be at least 2");
    }
  }
  for (Index w : cfg.sketch_list) {
    if (w < 1) throw Error("phase diagram sketch sizes must be positive");
  }
}

Dataset load_dataset(const ExperimentConfig& cfg) { return load_input(cfg).data; }

std::string build_info() {
  return std::string("sketchsdp ") + SKETCHSDP_VERSION + " (" + SKETCHSDP_COMPILER + ", " + SKETCHSDP_BUILD_TYPE + ")";
}

std::map<std::string, std::string> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::map<std::string, std::string> files;
  std::optional<Input> input;
  const bool needs_data = has_task(cfg, "sketch_solve") || has_task(cfg, "hoeffding") ||
                          has_task(cfg, "markov") || has_task(cfg, "baselines") || !cfg.export_path.empty();
  if (needs_data) input = load_input(cfg);
  if (input && *cfg.k > input->data.n()) throw Error("k exceeds the number of points");

  if (has_task(cfg, "hoeffding") || has_task(cfg, "markov") || has_task(cfg, "baselines")) {
    run_bounds(cfg, *input, files);
  }
  if (has_task(cfg, "sketch_solve")) run_sketch_solve(cfg, *input, files);
  if (has_task(cfg, "phase_diagram")) run_phase_diagram(cfg, files);
  if (has_task(cfg, "runtime_curve")) run_runtime_curve(cfg, files);
  if (!cfg.export_path.empty()) files[cfg.export_path] = to_csv(input->data);

  KeyValues manifest = to_key_values(cfg);
  manifest["build.info"] = build_info();
  manifest["build.log_base"] = "natural";
  std::string outputs;
  for (const auto& [name, content] : files) outputs += (outputs.empty() ? "" : ",") + name;
  manifest["build.outputs"] = outputs;
  files["manifest.txt"] = to_key_values(manifest);
  return files;
}

void write_outputs(const std::filesystem::path& dir, const std::map<std::string, std::string>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    const auto path = dir / name;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("failed writing " + path.string());
  }
}

}  // namespace sketchsdp
