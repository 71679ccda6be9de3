#include "gasboost/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gasboost/common.hpp"

namespace gasboost {

NbModel nb_fit(const Matrix& X, const std::vector<int>& y, int n_classes) {
  const Index n = X.rows();
  if (n == 0) throw Error("nb_fit: empty data");
  if (static_cast<Index>(y.size()) != n)
    throw Error("nb_fit: label count does not match rows");

  NbModel model;
  model.priors = Vector::Zero(n_classes);
  model.means = Matrix::Zero(n_classes, X.cols());
  model.variances = Matrix::Constant(n_classes, X.cols(), NbModel::kVarFloor);

  std::vector<Index> counts(static_cast<std::size_t>(n_classes), 0);
  for (Index i = 0; i < n; ++i) {
    const int k = y[static_cast<std::size_t>(i)];
    ++counts[static_cast<std::size_t>(k)];
    model.means.row(k) += X.row(i);
  }
  for (int k = 0; k < n_classes; ++k) {
    const auto ck = counts[static_cast<std::size_t>(k)];
    model.priors(k) = static_cast<double>(ck) / static_cast<double>(n);
    if (ck > 0) model.means.row(k) /= static_cast<double>(ck);
  }
  for (Index i = 0; i < n; ++i) {
    const int k = y[static_cast<std::size_t>(i)];
    model.variances.row(k) +=
        (X.row(i) - model.means.row(k)).array().square().matrix();
  }
  for (int k = 0; k < n_classes; ++k) {
    const auto ck = counts[static_cast<std::size_t>(k)];
    if (ck > 0) {
      model.variances.row(k) =
          ((model.variances.row(k).array() - NbModel::kVarFloor) /
           static_cast<double>(ck))
              .max(NbModel::kVarFloor);
    }
  }
  return model;
}

std::vector<int> nb_predict(const NbModel& model, const Matrix& X) {
  if (X.cols() != model.means.cols())
    throw Error("nb_predict: dimension mismatch");
  const int K = static_cast<int>(model.priors.size());
  std::vector<int> labels(static_cast<std::size_t>(X.rows()));
  Vector score(K);
  for (Index i = 0; i < X.rows(); ++i) {
    for (int k = 0; k < K; ++k) {
      double ll = std::log(model.priors(k));  // -inf for an absent class
      for (Index j = 0; j < X.cols(); ++j) {
        const double var = model.variances(k, j);
        const double diff = X(i, j) - model.means(k, j);
        ll -= 0.5 * (std::log(2.0 * M_PI * var) + diff * diff / var);
      }
      score(k) = ll;
    }
    int best = 0;
    for (int k = 1; k < K; ++k)
      if (score(k) > score(best)) best = k;
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

namespace {

Matrix one_hot(const std::vector<int>& y, int n_classes) {
  Matrix Y = Matrix::Zero(static_cast<Index>(y.size()), n_classes);
  for (std::size_t i = 0; i < y.size(); ++i)
    Y(static_cast<Index>(i), y[i]) = 1.0;
  return Y;
}

Matrix softmax_rows(const Matrix& scores) {
  Matrix out(scores.rows(), scores.cols());
  for (Index i = 0; i < scores.rows(); ++i) {
    const double max_score = scores.row(i).maxCoeff();
    Eigen::RowVectorXd e = (scores.row(i).array() - max_score).exp();
    out.row(i) = e / e.sum();
  }
  return out;
}

}  // namespace

LrModel lr_fit(const Matrix& X, const std::vector<int>& y, int n_classes,
               const LrConfig& config) {
  const Index n = X.rows();
  if (n == 0) throw Error("lr_fit: empty data");
  if (n_classes < 2) throw Error("lr_fit: needs at least 2 classes");

  LrModel model;
  model.weights = Matrix::Zero(n_classes, X.cols());
  model.intercepts = Vector::Zero(n_classes);
  const Matrix Y = one_hot(y, n_classes);
  const double inv_n = 1.0 / static_cast<double>(n);

  for (int it = 0; it < config.iterations; ++it) {
    Matrix scores = X * model.weights.transpose();
    scores.rowwise() += model.intercepts.transpose();
    const Matrix P = softmax_rows(scores);
    const Matrix R = P - Y;  // n x K
    const Matrix grad_w = inv_n * (R.transpose() * X) + config.l2 * model.weights;
    const Vector grad_b = inv_n * R.colwise().sum().transpose();
    model.weights -= config.step_size * grad_w;
    model.intercepts -= config.step_size * grad_b;
    if (!model.weights.allFinite() || !model.intercepts.allFinite())
      throw Error("lr_fit: non-finite loss at iteration " + std::to_string(it));
  }
  return model;
}

Matrix lr_predict_proba(const LrModel& model, const Matrix& X) {
  if (X.cols() != model.weights.cols())
    throw Error("lr_predict: dimension mismatch");
  Matrix scores = X * model.weights.transpose();
  scores.rowwise() += model.intercepts.transpose();
  return softmax_rows(scores);
}

std::vector<int> lr_predict(const LrModel& model, const Matrix& X) {
  const Matrix P = lr_predict_proba(model, X);
  std::vector<int> labels(static_cast<std::size_t>(X.rows()));
  for (Index i = 0; i < P.rows(); ++i) {
    int best = 0;
    for (Index k = 1; k < P.cols(); ++k)
      if (P(i, k) > P(i, best)) best = static_cast<int>(k);
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

double lr_loss(const LrModel& model, const Matrix& X, const std::vector<int>& y,
               double l2) {
  const Matrix P = lr_predict_proba(model, X);
  double ce = 0.0;
  for (Index i = 0; i < P.rows(); ++i)
    ce -= std::log(std::max(P(i, y[static_cast<std::size_t>(i)]), 1e-300));
  ce /= static_cast<double>(P.rows());
  return ce + 0.5 * l2 * model.weights.squaredNorm();
}

double lr_gradient_norm(const LrModel& model, const Matrix& X,
                        const std::vector<int>& y, double l2) {
  const int K = static_cast<int>(model.weights.rows());
  const Matrix P = lr_predict_proba(model, X);
  const Matrix R = P - one_hot(y, K);
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  const Matrix grad_w = inv_n * (R.transpose() * X) + l2 * model.weights;
  const Vector grad_b = inv_n * R.colwise().sum().transpose();
  return std::sqrt(grad_w.squaredNorm() + grad_b.squaredNorm());
}

double gini_impurity(const std::vector<int>& class_counts) {
  long total = std::accumulate(class_counts.begin(), class_counts.end(), 0L);
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  for (int c : class_counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

int CartModel::depth() const {
  int max_depth = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [idx, d] = stack.back();
    stack.pop_back();
    const CartNode& nd = nodes[static_cast<std::size_t>(idx)];
    if (nd.feature < 0) {
      max_depth = std::max(max_depth, d);
      continue;
    }
    stack.push_back({nd.left, d + 1});
    stack.push_back({nd.right, d + 1});
  }
  return max_depth;
}

namespace {

struct CartBuilder {
  const Matrix& X;
  const std::vector<int>& y;
  const int K;
  const CartConfig& config;
  std::vector<CartNode> nodes;

  int majority(const std::vector<int>& counts) const {
    int best = 0;
    for (int k = 1; k < K; ++k)
      if (counts[static_cast<std::size_t>(k)] > counts[static_cast<std::size_t>(best)])
        best = k;
    return best;
  }

  int build(std::vector<Index>& rows, int depth) {
    std::vector<int> counts(static_cast<std::size_t>(K), 0);
    for (Index r : rows) ++counts[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])];
    const double node_gini = gini_impurity(counts);
    const int node_id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[static_cast<std::size_t>(node_id)].label = majority(counts);

    const bool depth_ok = config.max_depth == 0 || depth < config.max_depth;
    if (node_gini == 0.0 ||
        static_cast<int>(rows.size()) < config.min_samples_split || !depth_ok)
      return node_id;

    // Exact greedy: any split of an impure node is acceptable, the best
    // weighted-gini one wins; no usable split (all values tied) => leaf.
    double best_child_gini = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::pair<double, Index>> sorted(rows.size());
    std::vector<int> left_counts(static_cast<std::size_t>(K));
    const double n_node = static_cast<double>(rows.size());
    for (Index j = 0; j < X.cols(); ++j) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        sorted[i] = {X(rows[i], j), rows[i]};
      std::sort(sorted.begin(), sorted.end());
      std::fill(left_counts.begin(), left_counts.end(), 0);
      std::vector<int> right_counts = counts;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const int label = y[static_cast<std::size_t>(sorted[i].second)];
        ++left_counts[static_cast<std::size_t>(label)];
        --right_counts[static_cast<std::size_t>(label)];
        if (sorted[i + 1].first <= sorted[i].first) continue;
        const double n_left = static_cast<double>(i + 1);
        const double n_right = n_node - n_left;
        const double child_gini = (n_left * gini_impurity(left_counts) +
                                   n_right * gini_impurity(right_counts)) /
                                  n_node;
        if (child_gini < best_child_gini) {
          best_child_gini = child_gini;
          best_feature = static_cast<int>(j);
          best_threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return node_id;

    std::vector<Index> left_rows, right_rows;
    for (Index r : rows)
      (X(r, best_feature) < best_threshold ? left_rows : right_rows).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    const int left_id = build(left_rows, depth + 1);
    const int right_id = build(right_rows, depth + 1);
    CartNode& nd = nodes[static_cast<std::size_t>(node_id)];
    nd.feature = best_feature;
    nd.threshold = best_threshold;
    nd.left = left_id;
    nd.right = right_id;
    return node_id;
  }
};

}  // namespace

CartModel cart_fit(const Matrix& X, const std::vector<int>& y, int n_classes,
                   const CartConfig& config) {
  if (X.rows() == 0) throw Error("cart_fit: empty data");
  if (static_cast<Index>(y.size()) != X.rows())
    throw Error("cart_fit: label count does not match rows");
  CartBuilder builder{X, y, n_classes, config, {}};
  std::vector<Index> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), Index{0});
  builder.build(rows, 0);
  CartModel model;
  model.nodes = std::move(builder.nodes);
  return model;
}

std::vector<int> cart_predict(const CartModel& model, const Matrix& X) {
  std::vector<int> labels(static_cast<std::size_t>(X.rows()));
  for (Index i = 0; i < X.rows(); ++i) {
    int node = 0;
    while (model.nodes[static_cast<std::size_t>(node)].feature >= 0) {
      const CartNode& nd = model.nodes[static_cast<std::size_t>(node)];
      node = X(i, nd.feature) < nd.threshold ? nd.left : nd.right;
    }
    labels[static_cast<std::size_t>(i)] = model.nodes[static_cast<std::size_t>(node)].label;
  }
  return labels;
}

}  // namespace gasboost
