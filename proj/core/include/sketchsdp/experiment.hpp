#pragma once

// Experiment orchestration behind the command-line tool: dataset selection,
// task dispatch and report files.

#include "sketchsdp/core.hpp"
#include "sketchsdp/io.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sketchsdp {

struct ExperimentConfig {
  // Input: a CSV path or a synthetic generator (sbm, gmm, norm10, norm25).
  std::string input;
  char delimiter = ',';
  bool header = false;
  std::string synth;
  Index n = 0;  // 0 selects the generator default
  Index d = 0;
  double delta = 4.0;
  std::string dataset_name;  // empty: derived from the input

  std::vector<std::string> tasks;
  std::optional<int> k;
  Index sketch_size = 300;
  int trials = 30;
  double epsilon = 0.01;
  std::optional<double> bernoulli_p;
  std::uint64_t seed = 0;
  std::optional<double> cap;
  std::optional<int> restarts;  // k-means++ restarts for min v_i; default trials
  std::string u = "minvi";      // minvi, b, or a number
  std::string replacement = "default";
  double tol_low = 1e-4;
  double tol_high = 1e-6;
  int max_iter = 20000;
  int threads = 1;

  std::vector<double> delta_list;   // phase diagram
  std::vector<Index> sketch_list;   // phase diagram
  std::vector<Index> n_list;        // runtime curve

  bool timings = true;  // off writes NA in every wall-clock column
  std::string export_path;
  std::string out_dir = ".";
};

inline const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{"sketch_solve", "hoeffding", "markov",
                                              "baselines",    "phase_diagram", "runtime_curve"};
  return tasks;
}

/// Applies `key = value` settings on top of `base`. Unknown keys are
/// rejected, except `build.*` entries written into manifests.
ExperimentConfig apply_key_values(ExperimentConfig base, const KeyValues& kv);
/// Every setting as key = value, suitable for apply_key_values.
KeyValues to_key_values(const ExperimentConfig& cfg);

/// Throws Error when a task is unknown or a task-specific field is missing or
/// out of range.
void validate(const ExperimentConfig& cfg);

/// Produces every report in memory; nothing touches the disk. Keys are file
/// names relative to the output directory.
std::map<std::string, std::string> run_experiment(const ExperimentConfig& cfg);

/// Writes the files produced by run_experiment under `dir`.
void write_outputs(const std::filesystem::path& dir, const std::map<std::string, std::string>& files);

/// Loads or generates the dataset named by the config.
Dataset load_dataset(const ExperimentConfig& cfg);

std::string build_info();

}  // namespace sketchsdp
