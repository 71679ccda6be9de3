#pragma once

#include <string>
#include <vector>

#include "gasboost/dataset.hpp"
#include "gasboost/neural_gas.hpp"

namespace gasboost {

enum class SelectorKind { chi2, pca, lasso, ngn, raw };

std::string selector_name(SelectorKind kind);
SelectorKind selector_from_name(const std::string& name);

/// Fitted feature selector. chi2 / lasso / ngn keep indices into the
/// original columns; pca keeps a centered projection onto new components;
/// raw passes everything through.
struct SelectorResult {
  SelectorKind kind = SelectorKind::raw;
  std::vector<Index> indices;
  Vector scores;       // per original feature (chi2 / lasso / ngn)
  Matrix projection;   // d x k (pca)
  Vector train_mean;   // centering for pca
  std::string warning;
};

// Indices of the k largest scores, descending, ties toward the lower index.
std::vector<Index> top_k_by_score(const Vector& scores, Index k);

// Classical chi-square statistic of an R x C contingency table, expected
// counts from the marginals.
double chi2_statistic(const Matrix& counts);

// Scaled-sum chi2 scoring: features min-max scaled to [0,1] on train, then
// per feature sum((observed - expected)^2 / expected) over classes, where
// observed is the per-class sum of the scaled feature and expected follows
// the class proportions.
SelectorResult chi2_select(const Matrix& X, const std::vector<int>& y,
                           int n_classes, Index k);

// Covariance eigendecomposition on train; top-k eigenvector projection with
// a deterministic sign convention (first nonzero component positive).
SelectorResult pca_select(const Matrix& X_train, Index k);
Matrix pca_apply(const SelectorResult& result, const Matrix& X);

struct LassoConfig {
  double lambda_l1 = 0.01;
  int max_sweeps = 500;
  double tol = 1e-8;
};

// Cyclic coordinate descent with soft thresholding on
// (1/2n)||y - X beta||^2 + lambda * |beta|_1, one pass per class of the
// one-hot target. Returns d x K coefficients; optionally records the
// objective after every sweep of the last class.
Matrix lasso_coefficients(const Matrix& X, const Matrix& targets,
                          const LassoConfig& config,
                          std::vector<double>* objective_trace = nullptr);

// One-vs-rest lasso scores: per-feature max |coefficient| across classes.
// All-zero coefficients fall back to index order with a warning.
SelectorResult lasso_select(const Matrix& X, const std::vector<int>& y,
                            int n_classes, Index k, const LassoConfig& config);

SelectorResult ngn_selector(const Matrix& X, Index k, const NgnParams& params);

SelectorResult raw_selector(Index n_features);

// Applies a fitted selector to any matrix with the training column count.
Matrix apply_selector(const SelectorResult& result, const Matrix& X);

std::vector<std::string> selected_feature_names(
    const SelectorResult& result, const std::vector<std::string>& names);

void save_selector_csv(const SelectorResult& result,
                       const std::vector<std::string>& feature_names,
                       const std::string& path);

}  // namespace gasboost
