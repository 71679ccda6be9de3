#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gasboost/baselines.hpp"
#include "gasboost/booster.hpp"
#include "gasboost/dataset.hpp"
#include "gasboost/neural_gas.hpp"
#include "gasboost/pso.hpp"
#include "gasboost/selectors.hpp"

namespace gasboost {

enum class ClassifierKind { nb, lr, dt, xgb, fuzzy_xgb, pso_fuzzy_xgb };

std::string classifier_name(ClassifierKind kind);
ClassifierKind classifier_from_name(const std::string& name);

enum class StandardizeScope { train_only, full };
enum class FuzzyMode { replace, augment };

struct DataConfig {
  enum class Source { synth, csv };
  Source source = Source::synth;
  std::string csv_path;
  Index synth_n = 600;
  Index synth_d = 25;
  int synth_k = 4;
  double synth_separation = 3.0;
  std::uint64_t synth_seed = 42;
};

struct GridConfig {
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<double> fractions = {0.25, 0.50, 0.75};
  std::vector<ClassifierKind> classifiers = {
      ClassifierKind::nb,        ClassifierKind::lr,
      ClassifierKind::dt,        ClassifierKind::xgb,
      ClassifierKind::fuzzy_xgb, ClassifierKind::pso_fuzzy_xgb};
  std::vector<SelectorKind> selectors = {
      SelectorKind::chi2, SelectorKind::pca, SelectorKind::lasso,
      SelectorKind::ngn, SelectorKind::raw};
  int workers = 0;  // 0 = hardware concurrency
};

struct ExperimentConfig {
  DataConfig data;
  SplitSpec split;  // train_ratio 0.7, stratified, per-run seed derived
  StandardizeScope standardize_scope = StandardizeScope::train_only;
  FuzzyMode fuzzy_mode = FuzzyMode::replace;
  NgnParams ngn;
  BoostParams boost;
  SwarmParams pso;
  TuneOptions tune;
  LassoConfig lasso;
  LrConfig lr;
  CartConfig cart;
  GridConfig grid;

  void validate() const;

  // Every effective value in a fixed order; two configs with the same
  // canonical text behave identically.
  std::string canonical_text() const;
  std::uint64_t hash() const;
  // Hex tag used in artifact file names.
  std::string hash_tag() const;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_text(const std::string& text);
};

}  // namespace gasboost
