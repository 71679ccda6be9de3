#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace gasboost {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tabular samples: one row per observation, integer class labels in
/// 0..n_classes-1. Everything downstream consumes this type.
struct Dataset {
  Matrix features;  // n_samples x n_features
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  int n_classes = 0;

  Index rows() const { return features.rows(); }
  Index cols() const { return features.cols(); }

  // Throws Error when a structural invariant is broken (shape mismatch,
  // labels out of range, missing class, non-finite cell). Intended for
  // freshly ingested data; row subsets of a valid dataset may legitimately
  // miss a class and are not re-validated.
  void validate() const;

  Dataset subset(const std::vector<Index>& row_idx) const;

  // Same rows/labels over a different feature matrix (selected columns,
  // projections, fuzzified states).
  Dataset with_features(Matrix new_features,
                        std::vector<std::string> names) const;
};

// CSV ingestion: header row, any number of numeric feature columns plus
// exactly one integer `label` column. Errors carry 1-based file line and
// the offending column name.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& data, const std::string& path);

struct StandardizerModel {
  Vector means;
  Vector stds;  // population std, floored
  static constexpr double kStdFloor = 1e-9;
};

StandardizerModel fit_standardizer(const Matrix& train);
Matrix apply_standardizer(const StandardizerModel& model, const Matrix& data);

inline StandardizerModel fit_standardizer(const Dataset& train) {
  return fit_standardizer(train.features);
}
Dataset apply_standardizer(const StandardizerModel& model, const Dataset& data);

struct SplitSpec {
  double train_ratio = 0.7;
  std::uint64_t seed = 0;
  bool stratified = true;
};

struct Split {
  Dataset train;
  Dataset test;
};

// Deterministic per seed. |train| = round(train_ratio * n); stratified mode
// keeps per-class counts within one sample of proportional while leaving at
// least one sample of every class on each side.
Split split(const Dataset& data, const SplitSpec& spec);

// Gaussian class clusters with unit noise: each center offset by
// `separation` along its own axis (a circle of that radius when d < K, a
// line when d == 1). Labels cycle 0..K-1 so every class is present for
// n >= K. Deterministic per seed.
Dataset synth(Index n, Index d, int n_classes, double separation,
              std::uint64_t seed);

}  // namespace gasboost
