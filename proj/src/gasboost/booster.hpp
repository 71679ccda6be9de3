#pragma once

#include <string>
#include <vector>

#include "gasboost/dataset.hpp"

namespace gasboost {

struct BoostParams {
  int max_depth = 6;           // tuning range 3..10
  double learning_rate = 0.1;  // tuning range 0.01..0.3
  int n_rounds = 100;
  double reg_lambda = 1.0;
  double min_child_weight = 1.0;
  double gamma_min_gain = 0.0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double weight = 0.0;  // leaf output
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // root at index 0

  double predict_row(const Matrix& X, Index row) const {
    int node = 0;
    while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
      const TreeNode& nd = nodes[static_cast<std::size_t>(node)];
      node = X(row, nd.feature) < nd.threshold ? nd.left : nd.right;
    }
    return nodes[static_cast<std::size_t>(node)].weight;
  }

  int internal_node_count() const;
  int depth() const;
};

// Row indices of every column in ascending feature-value order. Computed
// once per fit and shared by all rounds and classes.
struct SortedColumns {
  std::vector<std::vector<int>> order;
};
SortedColumns presort_columns(const Matrix& X);

// Exact greedy second-order tree: split gain
//   1/2 [GL^2/(HL+lambda) + GR^2/(HR+lambda) - G^2/(H+lambda)] - gamma,
// thresholds at midpoints of adjacent distinct values, gain ties broken
// toward the lower feature index then the lower threshold, children must
// carry hessian mass >= min_child_weight, leaf weight -G/(H+lambda).
RegressionTree build_tree(const Matrix& X, const SortedColumns& columns,
                          const Vector& g, const Vector& h,
                          const BoostParams& params);
RegressionTree build_tree(const Matrix& X, const Vector& g, const Vector& h,
                          const BoostParams& params);

// Softmax cross-entropy derivatives w.r.t. the class scores:
// g_k = p_k - 1{k==y}, h_k = p_k (1 - p_k).
void softmax_grad_hess(const double* p, int n_classes, int y, double* g,
                       double* h);

// Numerically safe row softmax.
void softmax_row(const double* scores, int n_classes, double* probs);

struct BoostEnsemble {
  std::vector<RegressionTree> trees;  // round-major: trees[round * K + k]
  BoostParams params;
  int n_classes = 0;
  std::vector<double> train_ce_trace;  // training cross-entropy per round

  Matrix decision_scores(const Matrix& X) const;
  Matrix predict_proba(const Matrix& X) const;
  std::vector<int> predict(const Matrix& X) const;
  void save_text(const std::string& path) const;
  std::string to_text() const;
};

// Round-robin multiclass boosting: per round, softmax probabilities from the
// accumulated scores feed one regression tree per class; tree outputs are
// added with the learning rate. Deterministic.
BoostEnsemble boost_fit(const Matrix& X, const std::vector<int>& y,
                        int n_classes, const BoostParams& params);

}  // namespace gasboost
