#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gasboost/common.hpp"
#include "gasboost/experiment.hpp"
#include "gasboost/report.hpp"

using namespace gasboost;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Small fast grid shared by the harness tests.
ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.data.synth_n = 160;
  cfg.data.synth_d = 8;
  cfg.data.synth_k = 4;
  cfg.data.synth_separation = 3.5;
  cfg.data.synth_seed = 5;
  cfg.grid.seeds = {1, 2};
  cfg.grid.fractions = {0.5};
  cfg.grid.classifiers = {ClassifierKind::nb, ClassifierKind::xgb,
                          ClassifierKind::pso_fuzzy_xgb};
  cfg.grid.selectors = {SelectorKind::ngn, SelectorKind::raw};
  cfg.grid.workers = 1;
  cfg.boost.n_rounds = 15;
  cfg.pso.swarm_size = 4;
  cfg.pso.max_iters = 3;
  cfg.tune.tune_rounds = 8;
  cfg.ngn.t_max = 2000;
  cfg.lr.iterations = 200;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("accuracy and confusion on hand-counted examples") {
  std::vector<int> truth{0, 0, 1, 2, 3, 3};
  std::vector<int> predicted{0, 1, 1, 2, 3, 0};
  CHECK(accuracy(predicted, truth) == doctest::Approx(4.0 / 6.0));
  ConfusionMatrix cm = confusion(predicted, truth, 4);
  CHECK(cm.counts.row(0).sum() == 2);
  CHECK(cm.counts.row(1).sum() == 1);
  CHECK(cm.counts.row(2).sum() == 1);
  CHECK(cm.counts.row(3).sum() == 2);
  CHECK(cm.counts(0, 1) == 1);
  CHECK(cm.counts(3, 0) == 1);
  CHECK(cm.diagonal() == 4);

  std::vector<int> same{1, 1, 1};
  CHECK(accuracy(same, same) == 1.0);
  ConfusionMatrix diag = confusion(same, same, 2);
  CHECK(diag.total() == 3);
  CHECK(diag.diagonal() == 3);

  std::vector<int> shifted{1, 2, 0};
  std::vector<int> base{0, 1, 2};
  CHECK(accuracy(shifted, base) == 0.0);
  CHECK(confusion(shifted, base, 3).diagonal() == 0);

  CHECK_THROWS_AS(accuracy({0, 1}, {0}), Error);
}

TEST_CASE("accuracy equals the confusion diagonal ratio") {
  std::vector<int> truth{0, 1, 2, 2, 1, 0, 2};
  std::vector<int> predicted{0, 2, 2, 1, 1, 1, 2};
  ConfusionMatrix cm = confusion(predicted, truth, 3);
  CHECK(accuracy(predicted, truth) ==
        doctest::Approx(static_cast<double>(cm.diagonal()) / cm.total()));
}

TEST_CASE("run seeds derive distinctly per grid coordinate") {
  const std::uint64_t a =
      derive_run_seed(1, 0, SelectorKind::ngn, ClassifierKind::xgb);
  CHECK(a == derive_run_seed(1, 0, SelectorKind::ngn, ClassifierKind::xgb));
  CHECK(a != derive_run_seed(2, 0, SelectorKind::ngn, ClassifierKind::xgb));
  CHECK(a != derive_run_seed(1, 1, SelectorKind::ngn, ClassifierKind::xgb));
  CHECK(a != derive_run_seed(1, 0, SelectorKind::raw, ClassifierKind::xgb));
  CHECK(a != derive_run_seed(1, 0, SelectorKind::ngn, ClassifierKind::dt));
}

TEST_CASE("selected feature counts follow max(1, round(fraction * d))") {
  ExperimentConfig cfg = tiny_config();
  cfg.data.synth_d = 25;
  cfg.grid.seeds = {1};
  cfg.grid.fractions = {0.25, 0.50, 0.75};
  cfg.grid.classifiers = {ClassifierKind::nb};
  cfg.grid.selectors = {SelectorKind::chi2};
  const Dataset data = load_experiment_data(cfg);
  Split parts = split(data, {0.7, 7, true});
  for (std::size_t fi = 0; fi < cfg.grid.fractions.size(); ++fi) {
    RunSpec spec;
    spec.fraction_index = fi;
    spec.selector = SelectorKind::chi2;
    spec.classifier = ClassifierKind::nb;
    spec.run_seed = 9;
    spec.k = std::max<Index>(
        1, static_cast<Index>(std::llround(cfg.grid.fractions[fi] * 25.0)));
    RunResult result = execute_run(parts.train, parts.test, cfg, spec, false);
    REQUIRE(result.ok);
    CHECK(result.selected.size() ==
          static_cast<std::size_t>(fi == 0 ? 6 : (fi == 1 ? 13 : 19)));
  }
}

TEST_CASE("a one-cell grid still runs and aggregates") {
  ExperimentConfig cfg = tiny_config();
  cfg.grid.seeds = {1};
  cfg.grid.classifiers = {ClassifierKind::nb};
  cfg.grid.selectors = {SelectorKind::raw};
  ExperimentOutput out = run_experiment(cfg);
  REQUIRE(out.table.cells.size() == 1);
  CHECK(out.table.cell(0, 0).runs == 1);
  CHECK(out.table.cell(0, 0).failures == 0);
  CHECK(out.table.cell(0, 0).mean > 0.2);
  CHECK(out.confusions.size() == 1);
}

TEST_CASE("cells pool every seed and fraction") {
  ExperimentConfig cfg = tiny_config();
  cfg.grid.seeds = {1, 2, 3};
  cfg.grid.fractions = {0.5, 0.75};
  cfg.grid.classifiers = {ClassifierKind::dt};
  cfg.grid.selectors = {SelectorKind::chi2};
  ExperimentOutput out = run_experiment(cfg);
  CHECK(out.table.cell(0, 0).runs == 6);
  CHECK(out.per_fraction.size() == 2);
  int runs = 0;
  for (const FractionRow& row : out.per_fraction) runs += row.runs;
  CHECK(runs == 6);
}

TEST_CASE("identical configs reproduce identical result bytes") {
  ExperimentConfig cfg = tiny_config();
  ExperimentOutput a = run_experiment(cfg);
  ExperimentOutput b = run_experiment(cfg);
  CHECK(a.table.to_csv() == b.table.to_csv());

  const auto dir_a = std::filesystem::temp_directory_path() / "gb_rep_a";
  const auto dir_b = std::filesystem::temp_directory_path() / "gb_rep_b";
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
  write_artifacts(a, cfg, dir_a.string());
  write_artifacts(b, cfg, dir_b.string());
  ArtifactPaths pa = artifact_paths(dir_a.string(), cfg.hash_tag());
  ArtifactPaths pb = artifact_paths(dir_b.string(), cfg.hash_tag());
  CHECK(slurp(pa.results_csv()) == slurp(pb.results_csv()));
  CHECK(slurp(pa.pso_trace_csv()) == slurp(pb.pso_trace_csv()));
  CHECK(slurp(pa.ngn_scores_csv()) == slurp(pb.ngn_scores_csv()));
}

TEST_CASE("worker count does not change the results") {
  ExperimentConfig cfg = tiny_config();
  cfg.grid.workers = 1;
  ExperimentOutput serial = run_experiment(cfg);
  cfg.grid.workers = 4;
  ExperimentOutput pooled = run_experiment(cfg);
  CHECK(serial.table.to_csv() == pooled.table.to_csv());
}

TEST_CASE("poisoned test labels cannot reach any fitted model") {
  ExperimentConfig cfg = tiny_config();
  const Dataset data = load_experiment_data(cfg);
  Split parts = split(data, {0.7, 11, true});

  Dataset poisoned = parts.test;
  for (int& label : poisoned.labels) label = (label + 1) % poisoned.n_classes;

  for (ClassifierKind classifier :
       {ClassifierKind::nb, ClassifierKind::lr, ClassifierKind::dt,
        ClassifierKind::xgb, ClassifierKind::fuzzy_xgb,
        ClassifierKind::pso_fuzzy_xgb}) {
    for (SelectorKind selector :
         {SelectorKind::chi2, SelectorKind::pca, SelectorKind::lasso,
          SelectorKind::ngn, SelectorKind::raw}) {
      RunSpec spec;
      spec.selector = selector;
      spec.classifier = classifier;
      spec.run_seed = derive_run_seed(1, 0, selector, classifier);
      spec.k = 4;
      RunResult honest = execute_run(parts.train, parts.test, cfg, spec, false);
      RunResult twisted = execute_run(parts.train, poisoned, cfg, spec, false);
      REQUIRE(honest.ok);
      REQUIRE(twisted.ok);
      // Same selector, same standardizer, same model outputs on train rows.
      CHECK(honest.selected == twisted.selected);
      CHECK(honest.standardizer_means == twisted.standardizer_means);
      CHECK(honest.train_predictions == twisted.train_predictions);
      CHECK(honest.tuned_max_depth == twisted.tuned_max_depth);
      CHECK(honest.tuned_learning_rate == twisted.tuned_learning_rate);
    }
  }
}

TEST_CASE("cell std is zero when every run agrees") {
  ExperimentConfig cfg = tiny_config();
  cfg.data.synth_separation = 12.0;  // trivially separable: every run at 1.0
  cfg.grid.seeds = {1, 2, 3};
  cfg.grid.classifiers = {ClassifierKind::dt};
  cfg.grid.selectors = {SelectorKind::raw};
  ExperimentOutput out = run_experiment(cfg);
  CHECK(out.table.cell(0, 0).mean == doctest::Approx(1.0));
  CHECK(out.table.cell(0, 0).stddev == doctest::Approx(0.0));
}

TEST_CASE("failed runs are counted, not averaged") {
  ExperimentConfig cfg = tiny_config();
  cfg.grid.classifiers = {ClassifierKind::lr};
  cfg.grid.selectors = {SelectorKind::raw};
  cfg.grid.seeds = {1};
  cfg.lr.step_size = 1e200;  // forces the non-finite loss error
  ExperimentOutput out = run_experiment(cfg);
  CHECK(out.table.cell(0, 0).runs == 0);
  CHECK(out.table.cell(0, 0).failures == 1);
  REQUIRE(out.failures.size() == 1);
  CHECK(out.failures[0].error.find("iteration") != std::string::npos);
}

TEST_CASE("results csv carries the declared header") {
  ExperimentConfig cfg = tiny_config();
  cfg.grid.seeds = {1};
  cfg.grid.classifiers = {ClassifierKind::nb};
  cfg.grid.selectors = {SelectorKind::raw};
  ExperimentOutput out = run_experiment(cfg);
  const std::string csv = out.table.to_csv();
  CHECK(csv.substr(0, csv.find('\n')) == "classifier,selector,mean,std,runs");
}

TEST_CASE("config files parse, reject unknown keys, and hash canonically") {
  const std::string good =
      "# sample\n[data]\nsource = synth\nsynth_n = 100\n\n[grid]\n"
      "seeds = 1,2\nfractions = 0.5\nclassifiers = nb\nselectors = raw\n";
  ExperimentConfig cfg = ExperimentConfig::from_text(good);
  CHECK(cfg.data.synth_n == 100);
  CHECK(cfg.grid.seeds == std::vector<std::uint64_t>{1, 2});

  // Comments and ordering leave the canonical text unchanged.
  const std::string shuffled =
      "[grid]\nselectors = raw\nclassifiers = nb\nfractions = 0.5\n"
      "seeds = 1,2\n[data]\nsynth_n = 100  # rows\nsource = synth\n";
  CHECK(ExperimentConfig::from_text(shuffled).canonical_text() ==
        cfg.canonical_text());
  CHECK(ExperimentConfig::from_text(shuffled).hash_tag() == cfg.hash_tag());

  CHECK_THROWS_WITH_AS(ExperimentConfig::from_text("[data]\nbogus_key = 1\n"),
                       doctest::Contains("unknown key"), Error);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_text("[nosuch]\nx = 1\n"),
                       doctest::Contains("unknown section"), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_text("[grid]\nseeds =\n"), Error);
}

TEST_CASE("report rendering is idempotent on identical results") {
  ExperimentConfig cfg = tiny_config();
  cfg.grid.seeds = {1};
  ExperimentOutput out = run_experiment(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "gb_rerender";
  std::filesystem::remove_all(dir);
  write_artifacts(out, cfg, dir.string());
  ArtifactPaths paths = artifact_paths(dir.string(), cfg.hash_tag());
  const std::string before_txt = slurp(paths.results_txt());
  const std::string before_svg = slurp(paths.pso_trace_svg());
  render_report_dir(dir.string());
  CHECK(slurp(paths.results_txt()) == before_txt);
  CHECK(slurp(paths.pso_trace_svg()) == before_svg);
}

}  // TEST_SUITE
