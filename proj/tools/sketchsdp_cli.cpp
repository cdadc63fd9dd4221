// Command-line front end. Settings come from an optional key = value config
// file first; flags given on the command line override it.

#include "sketchsdp/error.hpp"
#include "sketchsdp/experiment.hpp"
#include "sketchsdp/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

// Flags that map one-to-one onto configuration keys.
const std::vector<Flag> kFlags{
    {"--input", "input", "CSV file, one point per row"},
    {"--delimiter", "delimiter", "CSV delimiter: one character or 'tab' (default ',')"},
    {"--header", "header", "whether the CSV has a header row (true/false)"},
    {"--synth", "synth", "synthetic data: sbm, gmm, norm10, norm25"},
    {"--n", "n", "synthetic sample size"},
    {"--d", "d", "synthetic dimension"},
    {"--delta", "delta", "center separation for sbm/gmm and runtime_curve"},
    {"--dataset", "dataset", "dataset name in report tables"},
    {"--k", "k", "number of clusters"},
    {"--sketch-size", "sketch_size", "sketch size s for the bound tasks"},
    {"--trials", "trials", "number of trials l"},
    {"--epsilon", "epsilon", "error rate in (0, 1)"},
    {"--bernoulli-p", "bernoulli_p", "Bernoulli sketch rate for sketch_solve"},
    {"--seed", "seed", "master random seed"},
    {"--cap", "cap", "clamp squared distances at this value ('off' disables)"},
    {"--restarts", "restarts", "k-means++ restarts for min v_i (default: trials)"},
    {"--u", "u", "Hoeffding truncation: minvi, b, or a number"},
    {"--replacement", "replacement", "sketch sampling: default, with, without"},
    {"--tol-low", "tol_low", "first-stage solver tolerance"},
    {"--tol-high", "tol_high", "second-stage solver tolerance"},
    {"--max-iter", "max_iter", "solver iteration cap"},
    {"--threads", "threads", "worker threads for independent trials"},
    {"--delta-list", "delta_list", "phase diagram separations, comma separated"},
    {"--sketch-list", "sketch_list", "phase diagram sketch sizes, comma separated"},
    {"--n-list", "n_list", "runtime curve sizes, comma separated"},
    {"--timings", "timings", "record wall-clock columns (true/false)"},
    {"--export", "export", "also write the dataset as CSV under this name"},
    {"--out-dir", "out_dir", "output directory"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sketch-and-solve k-means clustering and high-confidence lower bounds"};
  app.option_defaults()->always_capture_default(false);

  std::string config_path;
  std::vector<std::string> tasks;
  bool print_config = false;
  bool version = false;
  std::map<std::string, std::string> given;

  app.add_option("--config", config_path, "key = value configuration file (flags override it)");
  app.add_option("--task", tasks,
                 "sketch_solve, hoeffding, markov, baselines, phase_diagram, runtime_curve; repeat or comma separate")
      ->delimiter(',');
  std::vector<CLI::Option*> opts;
  for (const auto& f : kFlags) opts.push_back(app.add_option(f.name, given[f.key], f.help));
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");
  app.add_flag("--version", version, "print build information and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (version) {
    std::cout << sketchsdp::build_info() << "\n";
    return 0;
  }

  try {
    sketchsdp::KeyValues kv;
    if (!config_path.empty()) kv = sketchsdp::parse_key_values(sketchsdp::read_file(config_path));
    for (std::size_t i = 0; i < kFlags.size(); ++i) {
      if (opts[i]->count() > 0) kv[kFlags[i].key] = given[kFlags[i].key];
    }
    if (!tasks.empty()) {
      std::string joined;
      for (const auto& t : tasks) joined += (joined.empty() ? "" : ",") + t;
      kv["task"] = joined;
    }
    const auto cfg = sketchsdp::apply_key_values(sketchsdp::ExperimentConfig{}, kv);
    if (print_config) {
      std::cout << sketchsdp::to_key_values(sketchsdp::to_key_values(cfg));
      return 0;
    }
    const auto files = sketchsdp::run_experiment(cfg);
    sketchsdp::write_outputs(cfg.out_dir, files);
    for (const auto& [name, content] : files) std::cout << (std::filesystem::path(cfg.out_dir) / name).string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "sketchsdp: error: " << e.what() << "\n";
    return 1;
  }
}
