#include "sketchsdp/error.hpp"
#include "sketchsdp/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sketchsdp;

namespace {

std::vector<std::vector<std::string>> tsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, '\t')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string column(const std::vector<std::vector<std::string>>& t, const std::string& name, std::size_t row = 1) {
  for (std::size_t j = 0; j < t[0].size(); ++j) {
    if (t[0][j] == name) return t[row][j];
  }
  ADD_FAILURE() << "missing column " << name;
  return {};
}

ExperimentConfig small_sbm(std::vector<std::string> tasks) {
  ExperimentConfig cfg;
  cfg.synth = "sbm";
  cfg.n = 40;
  cfg.delta = 4.0;
  cfg.k = 2;
  cfg.tasks = std::move(tasks);
  cfg.sketch_size = 8;
  cfg.trials = 4;
  cfg.epsilon = 0.1;
  cfg.seed = 3;
  cfg.timings = false;
  return cfg;
}

}  // namespace

TEST(Config, KeyValueRoundTrip) {
  auto cfg = small_sbm({"hoeffding", "markov"});
  cfg.cap = 1e8;
  cfg.bernoulli_p = 0.25;
  cfg.delta_list = {2.0, 2.5};
  cfg.sketch_list = {4, 8};
  cfg.n_list = {256, 4096};
  cfg.restarts = 7;
  cfg.u = "b";
  cfg.replacement = "without";
  cfg.delimiter = '\t';
  const auto kv = to_key_values(cfg);
  const auto back = apply_key_values(ExperimentConfig{}, kv);
  EXPECT_EQ(to_key_values(back), kv);
  EXPECT_EQ(back.tasks, cfg.tasks);
  EXPECT_EQ(back.cap, cfg.cap);
  EXPECT_EQ(back.delimiter, '\t');
  EXPECT_EQ(back.n_list, cfg.n_list);
}

TEST(Config, RejectsUnknownAndInvalid) {
  EXPECT_THROW(apply_key_values({}, {{"colour", "red"}}), Error);
  EXPECT_THROW(apply_key_values({}, {{"k", "two"}}), Error);
  EXPECT_NO_THROW(apply_key_values({}, {{"build.info", "anything"}}));

  auto cfg = small_sbm({"markov"});
  EXPECT_NO_THROW(validate(cfg));
  cfg.epsilon = 1.0;
  EXPECT_THROW(validate(cfg), Error);
  cfg = small_sbm({"fly"});
  EXPECT_THROW(validate(cfg), Error);
  cfg = small_sbm({"markov"});
  cfg.k.reset();
  EXPECT_THROW(validate(cfg), Error);
  cfg = small_sbm({"sketch_solve"});
  EXPECT_THROW(validate(cfg), Error);  // needs a Bernoulli rate
  cfg = small_sbm({"markov"});
  cfg.input = "data.csv";
  EXPECT_THROW(validate(cfg), Error);  // both input and synth
}

TEST(Experiment, BaselinesOnSingletonData) {
  const auto path = std::filesystem::temp_directory_path() / "sketchsdp_nk.csv";
  {
    std::ofstream f(path);
    f << "0,0\n1,5\n9,2\n";
  }
  ExperimentConfig cfg;
  cfg.input = path.string();
  cfg.k = 3;
  cfg.tasks = {"baselines"};
  cfg.sketch_size = 3;
  cfg.trials = 5;
  cfg.timings = false;
  const auto files = run_experiment(cfg);
  const auto t = tsv(files.at("bounds.tsv"));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"dataset", "k", "min_vi", "avg_Li", "L_H", "L_M", "B_H", "B_M",
                                            "T_init", "T_kpp", "T_SDP"}));
  for (const char* c : {"min_vi", "avg_Li", "L_H", "L_M"}) EXPECT_EQ(column(t, c), "0.00e0") << c;
  std::filesystem::remove(path);
}

TEST(Experiment, MarkovColumnRecomputableFromSidecar) {
  const auto cfg = small_sbm({"hoeffding", "markov"});
  const auto files = run_experiment(cfg);
  const auto table = tsv(files.at("bounds.tsv"));
  const auto trials = tsv(files.at("trials.tsv"));
  double mn = std::numeric_limits<double>::infinity();
  int hoeff = 0;
  const double min_vi = std::stod(column(table, "min_vi"));
  for (std::size_t r = 1; r < trials.size(); ++r) {
    const double v = std::stod(trials[r][5]);
    if (trials[r][0] == "markov") mn = std::min(mn, v);
    if (trials[r][0] == "hoeffding") ++hoeff;
  }
  EXPECT_EQ(hoeff, 4);
  EXPECT_EQ(column(table, "B_M"), format_sci(std::pow(0.1, 0.25) * mn));
  EXPECT_GT(std::stod(column(table, "B_M")), 0.0);
  EXPECT_LE(std::stod(column(table, "B_M")), min_vi * 1.005);
  EXPECT_EQ(column(table, "T_SDP"), "NA");
}

TEST(Experiment, ManifestReproducesOutputs) {
  auto cfg = small_sbm({"markov", "baselines", "sketch_solve"});
  cfg.bernoulli_p = 0.5;
  const auto first = run_experiment(cfg);
  ASSERT_TRUE(first.count("manifest.txt"));
  const auto again_cfg = apply_key_values(ExperimentConfig{}, parse_key_values(first.at("manifest.txt")));
  const auto second = run_experiment(again_cfg);
  EXPECT_EQ(first, second);
}

TEST(Experiment, PhaseDiagramAndRuntimeShapes) {
  ExperimentConfig cfg;
  cfg.tasks = {"phase_diagram", "runtime_curve"};
  cfg.delta_list = {2.0, 4.0};
  cfg.sketch_list = {4, 20};
  cfg.n_list = {64, 128};
  cfg.delta = 3.0;
  cfg.trials = 4;
  cfg.timings = false;
  const auto files = run_experiment(cfg);
  const auto pd = tsv(files.at("phase_diagram.tsv"));
  EXPECT_EQ(pd[0], (std::vector<std::string>{"delta", "sketch_size", "recovery_rate"}));
  EXPECT_EQ(pd.size(), 5u);
  const auto rc = tsv(files.at("runtime_curve.tsv"));
  EXPECT_EQ(rc[0], (std::vector<std::string>{"n", "method", "seconds"}));
  EXPECT_EQ(rc.size(), 5u);
}

TEST(Experiment, WriteOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "sketchsdp_out_test";
  std::filesystem::remove_all(dir);
  write_outputs(dir, {{"a.tsv", "x\n"}, {"b.txt", "y\n"}});
  EXPECT_TRUE(std::filesystem::exists(dir / "a.tsv"));
  EXPECT_EQ(std::filesystem::file_size(dir / "b.txt"), 2u);
  std::filesystem::remove_all(dir);
}
