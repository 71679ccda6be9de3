#pragma once

#include <vector>

#include "gasboost/dataset.hpp"

namespace gasboost {

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

struct NbModel {
  Vector priors;     // K, sums to 1
  Matrix means;      // K x d
  Matrix variances;  // K x d, population variance floored at kVarFloor
  static constexpr double kVarFloor = 1e-9;
};

NbModel nb_fit(const Matrix& X, const std::vector<int>& y, int n_classes);
std::vector<int> nb_predict(const NbModel& model, const Matrix& X);

// ---------------------------------------------------------------------------
// Multinomial logistic regression, full-batch gradient descent from zero
// weights; deterministic.

struct LrConfig {
  double step_size = 0.1;
  int iterations = 1000;
  double l2 = 1e-4;  // applied to weights, not intercepts
};

struct LrModel {
  Matrix weights;      // K x d
  Vector intercepts;   // K
};

LrModel lr_fit(const Matrix& X, const std::vector<int>& y, int n_classes,
               const LrConfig& config);
Matrix lr_predict_proba(const LrModel& model, const Matrix& X);
std::vector<int> lr_predict(const LrModel& model, const Matrix& X);

// Regularized cross-entropy and the Frobenius norm of its full gradient at
// the model's parameters; convergence diagnostic.
double lr_loss(const LrModel& model, const Matrix& X, const std::vector<int>& y,
               double l2);
double lr_gradient_norm(const LrModel& model, const Matrix& X,
                        const std::vector<int>& y, double l2);

// ---------------------------------------------------------------------------
// CART: exact greedy gini splits, majority leaves, midpoint thresholds, gain
// ties broken toward the lower feature index then lower threshold. An impure
// node with any usable split always splits (zero-gain splits allowed), which
// lets the tree resolve XOR-style layouts.

struct CartConfig {
  int max_depth = 0;  // 0 = unlimited
  int min_samples_split = 2;
};

struct CartNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;  // leaf class
};

struct CartModel {
  std::vector<CartNode> nodes;
  int depth() const;
};

double gini_impurity(const std::vector<int>& class_counts);

CartModel cart_fit(const Matrix& X, const std::vector<int>& y, int n_classes,
                   const CartConfig& config);
std::vector<int> cart_predict(const CartModel& model, const Matrix& X);

}  // namespace gasboost
