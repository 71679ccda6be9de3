#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gasboost.h"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and error state") {
  CHECK(std::strcmp(gb_version(), "0.1.0") == 0);
  CHECK(gb_last_error() != nullptr);
}

TEST_CASE("null arguments are rejected with invalid-argument status") {
  CHECK(gb_dataset_load_csv(nullptr, nullptr) == GB_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(gb_last_error()) > 0);
  CHECK(gb_run_experiment(nullptr, nullptr) == GB_ERROR_INVALID_ARGUMENT);
  CHECK(gb_dataset_rows(nullptr) == -1);
}

TEST_CASE("missing files surface an IO status and message") {
  gb_dataset* data = nullptr;
  CHECK(gb_dataset_load_csv("/nonexistent/nope.csv", &data) == GB_ERROR_IO);
  CHECK(std::string(gb_last_error()).find("nope.csv") != std::string::npos);
}

TEST_CASE("synth / save / load round trip through the C surface") {
  gb_dataset* data = nullptr;
  REQUIRE(gb_dataset_synth(120, 6, 4, 3.0, 9, &data) == GB_OK);
  CHECK(gb_dataset_rows(data) == 120);
  CHECK(gb_dataset_cols(data) == 6);
  CHECK(gb_dataset_classes(data) == 4);

  const std::string csv = temp_path("gb_capi_data.csv");
  REQUIRE(gb_dataset_save_csv(data, csv.c_str()) == GB_OK);

  gb_dataset* loaded = nullptr;
  REQUIRE(gb_dataset_load_csv(csv.c_str(), &loaded) == GB_OK);
  CHECK(gb_dataset_rows(loaded) == 120);
  CHECK(gb_dataset_cols(loaded) == 6);
  CHECK(gb_dataset_classes(loaded) == 4);
  gb_dataset_free(loaded);
  gb_dataset_free(data);
}

TEST_CASE("parse errors carry the PARSE status") {
  const std::string path = temp_path("gb_capi_bad.csv");
  {
    std::ofstream out(path);
    out << "a,b\n1,2\n";
  }
  gb_dataset* data = nullptr;
  CHECK(gb_dataset_load_csv(path.c_str(), &data) == GB_ERROR_PARSE);
  CHECK(std::string(gb_last_error()).find("label") != std::string::npos);
}

TEST_CASE("booster fit, predict, proba, and text dump") {
  gb_dataset* data = nullptr;
  REQUIRE(gb_dataset_synth(200, 5, 4, 5.0, 17, &data) == GB_OK);

  gb_boost_params params;
  gb_boost_params_defaults(&params);
  CHECK(params.max_depth == 6);
  CHECK(params.n_rounds == 100);
  params.n_rounds = 25;

  gb_booster* model = nullptr;
  REQUIRE(gb_booster_fit(data, &params, &model) == GB_OK);
  CHECK(gb_booster_classes(model) == 4);

  // Probe with an obvious member of each cluster: rows of the training CSV
  // itself would do, but a fresh synth set keeps the check honest.
  gb_dataset* probe = nullptr;
  REQUIRE(gb_dataset_synth(80, 5, 4, 5.0, 18, &probe) == GB_OK);
  const std::string probe_csv = temp_path("gb_capi_probe.csv");
  REQUIRE(gb_dataset_save_csv(probe, probe_csv.c_str()) == GB_OK);

  // Reload the probe matrix through the text format to stay C-only here.
  std::ifstream in(probe_csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> features;
  std::vector<int> truth;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t start = 0;
    std::vector<double> cells;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(std::stod(line.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    truth.push_back(static_cast<int>(cells.back()));
    cells.pop_back();
    features.insert(features.end(), cells.begin(), cells.end());
  }
  const int64_t rows = static_cast<int64_t>(truth.size());

  std::vector<int32_t> labels(static_cast<std::size_t>(rows));
  REQUIRE(gb_booster_predict(model, features.data(), rows, 5, labels.data()) ==
          GB_OK);
  int hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (labels[i] == truth[i]) ++hits;
  CHECK(static_cast<double>(hits) / static_cast<double>(rows) > 0.9);

  std::vector<double> proba(static_cast<std::size_t>(rows * 4));
  REQUIRE(gb_booster_predict_proba(model, features.data(), rows, 5,
                                   proba.data()) == GB_OK);
  for (int64_t i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += proba[static_cast<std::size_t>(i * 4 + k)];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK(gb_booster_predict(model, features.data(), rows, 3, labels.data()) ==
        GB_ERROR_INVALID_ARGUMENT);

  const std::string dump = temp_path("gb_capi_model.txt");
  REQUIRE(gb_booster_save_text(model, dump.c_str()) == GB_OK);
  CHECK(slurp(dump).find("gasboost ensemble v1") == 0);

  gb_dataset_free(probe);
  gb_booster_free(model);
  gb_dataset_free(data);
}

TEST_CASE("selector surface: indices and files for every method") {
  gb_dataset* data = nullptr;
  REQUIRE(gb_dataset_synth(150, 10, 4, 3.0, 23, &data) == GB_OK);

  std::vector<int64_t> indices(4);
  for (const char* method : {"chi2", "lasso", "ngn"}) {
    REQUIRE(gb_select_features(data, method, 4, 7, indices.data()) == GB_OK);
    for (int64_t idx : indices) {
      CHECK(idx >= 0);
      CHECK(idx < 10);
    }
  }
  CHECK(gb_select_features(data, "pca", 4, 7, indices.data()) ==
        GB_ERROR_INVALID_ARGUMENT);
  CHECK(gb_select_features(data, "bogus", 4, 7, indices.data()) != GB_OK);

  for (const char* method : {"chi2", "pca", "lasso", "ngn"}) {
    const std::string out = temp_path(std::string("gb_capi_sel_") + method + ".csv");
    REQUIRE(gb_select_save(data, method, 4, 7, out.c_str()) == GB_OK);
    CHECK(!slurp(out).empty());
  }
  gb_dataset_free(data);
}

TEST_CASE("tuning writes a trace and returns box-respecting values") {
  gb_dataset* data = nullptr;
  REQUIRE(gb_dataset_synth(150, 6, 4, 4.0, 29, &data) == GB_OK);
  gb_tune_params params;
  gb_tune_params_defaults(&params);
  CHECK(params.swarm_size == 50);
  CHECK(params.max_iters == 100);
  params.swarm_size = 5;
  params.max_iters = 4;
  params.tune_rounds = 8;
  params.seed = 3;

  const std::string trace = temp_path("gb_capi_trace.csv");
  int32_t max_depth = 0;
  double learning_rate = 0.0, best_cost = 0.0;
  REQUIRE(gb_tune_booster(data, &params, &max_depth, &learning_rate, &best_cost,
                          trace.c_str()) == GB_OK);
  CHECK(max_depth >= 3);
  CHECK(max_depth <= 10);
  CHECK(learning_rate >= 0.01);
  CHECK(learning_rate <= 0.3);
  const std::string content = slurp(trace);
  CHECK(content.find("iteration,best_cost") == 0);
  CHECK(std::count(content.begin(), content.end(), '\n') == 5);  // header + 4
  gb_dataset_free(data);
}

TEST_CASE("experiment runs from a config file and renders a report") {
  const std::string config_path = temp_path("gb_capi_config.conf");
  {
    std::ofstream out(config_path);
    out << "[data]\nsource = synth\nsynth_n = 140\nsynth_d = 6\nsynth_k = 4\n"
           "synth_separation = 3.5\nsynth_seed = 4\n"
           "[grid]\nseeds = 1\nfractions = 0.5\n"
           "classifiers = nb,xgb,pso_fuzzy_xgb\nselectors = ngn,raw\nworkers = 1\n"
           "[boost]\nn_rounds = 10\n"
           "[pso]\nswarm_size = 4\nmax_iters = 3\ntune_rounds = 6\n"
           "[ngn]\nt_max = 1500\n";
  }
  const std::string out_dir = temp_path("gb_capi_out");
  std::filesystem::remove_all(out_dir);
  REQUIRE(gb_run_experiment(config_path.c_str(), out_dir.c_str()) == GB_OK);

  int results_found = 0, svg_found = 0;
  for (const auto& entry : std::filesystem::directory_iterator(out_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("results_") && name.ends_with(".csv")) ++results_found;
    if (name.ends_with(".svg")) ++svg_found;
  }
  CHECK(results_found == 1);
  CHECK(svg_found >= 2);

  REQUIRE(gb_render_report(out_dir.c_str()) == GB_OK);
  CHECK(gb_render_report("/nonexistent/dir") != GB_OK);
}

}  // TEST_SUITE
