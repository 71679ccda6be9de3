#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasboost/config.hpp"
#include "gasboost/fuzzy.hpp"
#include "gasboost/metrics.hpp"

namespace gasboost {

// One grid point: (seed, fraction, selector, classifier). The run seed is
// derived from those coordinates so every cell is independent and can be
// reproduced in isolation.
struct RunSpec {
  std::size_t seed_index = 0;
  std::size_t fraction_index = 0;
  SelectorKind selector = SelectorKind::raw;
  ClassifierKind classifier = ClassifierKind::nb;
  std::uint64_t run_seed = 0;
  Index k = 0;  // selected feature count, max(1, round(fraction * d))
};

std::uint64_t derive_run_seed(std::uint64_t base_seed,
                              std::size_t fraction_index, SelectorKind selector,
                              ClassifierKind classifier);

struct RunArtifacts {
  std::vector<double> pso_trace;
  Vector ngn_scores;
  bool has_thresholds = false;
  double threshold_low = 0.0;
  double threshold_high = 0.0;
  std::string threshold_feature;
};

struct RunResult {
  bool ok = false;
  std::string error;
  double test_accuracy = 0.0;
  ConfusionMatrix test_confusion;
  std::vector<Index> selected;  // original-column indices; empty for pca/raw
  int tuned_max_depth = 0;      // pso_fuzzy_xgb only
  double tuned_learning_rate = 0.0;
  // Fingerprints for the leakage audit: fitted-model outputs that must not
  // depend on anything test-side.
  std::vector<int> train_predictions;
  Vector standardizer_means;
  RunArtifacts artifacts;
};

// Fits the whole pipeline on `train` and evaluates on `test`. The only
// test-side reads are the final predict call and, when the configured
// standardize scope is `full`, the feature statistics.
RunResult execute_run(const Dataset& train, const Dataset& test,
                      const ExperimentConfig& config, const RunSpec& spec,
                      bool capture_artifacts);

struct CellStats {
  double mean = 0.0;
  double stddev = 0.0;  // population std over contributing runs
  int runs = 0;
  int failures = 0;
};

struct ResultsTable {
  std::vector<ClassifierKind> classifiers;
  std::vector<SelectorKind> selectors;
  std::vector<CellStats> cells;  // classifier-major

  const CellStats& cell(std::size_t classifier_idx, std::size_t selector_idx) const {
    return cells[classifier_idx * selectors.size() + selector_idx];
  }
  CellStats& cell(std::size_t classifier_idx, std::size_t selector_idx) {
    return cells[classifier_idx * selectors.size() + selector_idx];
  }
  std::optional<CellStats> find(ClassifierKind classifier,
                                SelectorKind selector) const;

  std::string to_csv() const;   // header: classifier,selector,mean,std,runs
  std::string to_text() const;  // aligned grid
};

struct FractionRow {
  ClassifierKind classifier;
  SelectorKind selector;
  double fraction;
  double mean;
  double stddev;
  int runs;
};

struct FailureRow {
  ClassifierKind classifier;
  SelectorKind selector;
  std::uint64_t seed;
  double fraction;
  std::string error;
};

struct ExperimentOutput {
  ResultsTable table;
  std::vector<FractionRow> per_fraction;
  std::vector<FailureRow> failures;

  // Representative-run artifacts (first grid point in enumeration order that
  // produces each one; selector `ngn` preferred where applicable).
  std::vector<std::pair<std::string, ConfusionMatrix>> confusions;
  std::vector<double> pso_trace;
  Vector ngn_scores;
  std::vector<Index> ngn_selected;
  std::vector<std::string> feature_names;
  bool has_membership = false;
  double membership_low = 0.0;
  double membership_high = 0.0;
  std::string membership_feature;
};

// Runs the full (seed x fraction x selector x classifier) grid. Independent
// runs may execute on a worker pool; aggregation is keyed by grid position,
// so the output is identical for any worker count.
ExperimentOutput run_experiment(const ExperimentConfig& config);

Dataset load_experiment_data(const ExperimentConfig& config);

}  // namespace gasboost
