// Experiment CLI over the gasboost C API.

#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gasboost.h"

namespace {

int report_failure(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, gb_last_error());
  return 1;
}

struct DatasetGuard {
  gb_dataset* handle = nullptr;
  ~DatasetGuard() { gb_dataset_free(handle); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neural-gas / fuzzy / swarm-boosted classification experiments"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out;
  CLI::App* run = app.add_subcommand("run", "run the full experiment grid from a config file");
  run->add_option("--config", run_config, "experiment config file")->required();
  run->add_option("--out", run_out, "output directory for report artifacts")->required();

  // synth
  int64_t synth_n = 600, synth_d = 25;
  int32_t synth_k = 4;
  double synth_sep = 3.0;
  uint64_t synth_seed = 42;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
  synth->add_option("--n", synth_n, "sample count");
  synth->add_option("--d", synth_d, "feature count");
  synth->add_option("--k", synth_k, "class count");
  synth->add_option("--separation", synth_sep, "distance between class centers");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--out", synth_out, "output CSV path")->required();

  // select
  std::string select_method, select_data, select_out;
  int64_t select_k = 0;
  uint64_t select_seed = 0;
  CLI::App* select = app.add_subcommand("select", "fit a feature selector and save the selection");
  select->add_option("--method", select_method, "chi2 | pca | lasso | ngn")->required();
  select->add_option("--k", select_k, "number of features / components")->required();
  select->add_option("--data", select_data, "dataset CSV")->required();
  select->add_option("--out", select_out, "output CSV path")->required();
  select->add_option("--seed", select_seed, "random seed (ngn)");

  // tune
  std::string tune_data, tune_out;
  uint64_t tune_seed = 1;
  int32_t tune_swarm = 0, tune_iters = 0;
  CLI::App* tune = app.add_subcommand("tune", "swarm-tune booster hyperparameters, save the best-cost trace");
  tune->add_option("--data", tune_data, "dataset CSV")->required();
  tune->add_option("--out", tune_out, "output directory")->required();
  tune->add_option("--seed", tune_seed, "random seed");
  tune->add_option("--swarm-size", tune_swarm, "override swarm size");
  tune->add_option("--max-iters", tune_iters, "override iteration count");

  // report
  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "re-render tables and plots from result CSVs");
  report->add_option("--results", report_dir, "results directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    if (gb_run_experiment(run_config.c_str(), run_out.c_str()) != GB_OK)
      return report_failure("run");
    std::printf("experiment complete; artifacts in %s\n", run_out.c_str());
    return 0;
  }

  if (*synth) {
    DatasetGuard data;
    if (gb_dataset_synth(synth_n, synth_d, synth_k, synth_sep, synth_seed,
                         &data.handle) != GB_OK)
      return report_failure("synth");
    if (gb_dataset_save_csv(data.handle, synth_out.c_str()) != GB_OK)
      return report_failure("synth");
    std::printf("wrote %" PRId64 " rows x %" PRId64 " features (%d classes) to %s\n",
                gb_dataset_rows(data.handle), gb_dataset_cols(data.handle),
                gb_dataset_classes(data.handle), synth_out.c_str());
    return 0;
  }

  if (*select) {
    DatasetGuard data;
    if (gb_dataset_load_csv(select_data.c_str(), &data.handle) != GB_OK)
      return report_failure("select");
    if (gb_select_save(data.handle, select_method.c_str(), select_k, select_seed,
                       select_out.c_str()) != GB_OK)
      return report_failure("select");
    std::printf("wrote %s selection (k=%" PRId64 ") to %s\n", select_method.c_str(),
                select_k, select_out.c_str());
    return 0;
  }

  if (*tune) {
    DatasetGuard data;
    if (gb_dataset_load_csv(tune_data.c_str(), &data.handle) != GB_OK)
      return report_failure("tune");
    gb_tune_params params;
    gb_tune_params_defaults(&params);
    params.seed = tune_seed;
    if (tune_swarm > 0) params.swarm_size = tune_swarm;
    if (tune_iters > 0) params.max_iters = tune_iters;
    const std::string trace_path = tune_out + "/pso_trace.csv";
    int32_t max_depth = 0;
    double learning_rate = 0.0, best_cost = 0.0;
    if (gb_tune_booster(data.handle, &params, &max_depth, &learning_rate,
                        &best_cost, trace_path.c_str()) != GB_OK)
      return report_failure("tune");
    std::printf("tuned max_depth=%d learning_rate=%.6f (best cost %.6f)\n",
                max_depth, learning_rate, best_cost);
    std::printf("trace written to %s\n", trace_path.c_str());
    return 0;
  }

  if (*report) {
    if (gb_render_report(report_dir.c_str()) != GB_OK)
      return report_failure("report");
    std::printf("report rendered in %s\n", report_dir.c_str());
    return 0;
  }

  return 1;
}
