#include "gasboost/selectors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "gasboost/common.hpp"

namespace gasboost {

std::string selector_name(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::chi2: return "chi2";
    case SelectorKind::pca: return "pca";
    case SelectorKind::lasso: return "lasso";
    case SelectorKind::ngn: return "ngn";
    case SelectorKind::raw: return "raw";
  }
  throw Error("unknown selector kind");
}

SelectorKind selector_from_name(const std::string& name) {
  if (name == "chi2") return SelectorKind::chi2;
  if (name == "pca") return SelectorKind::pca;
  if (name == "lasso") return SelectorKind::lasso;
  if (name == "ngn") return SelectorKind::ngn;
  if (name == "raw") return SelectorKind::raw;
  throw Error("unknown selector '" + name + "'");
}

std::vector<Index> top_k_by_score(const Vector& scores, Index k) {
  if (k < 1 || k > scores.size())
    throw Error("top_k_by_score: k = " + std::to_string(k) + " outside 1.." +
                std::to_string(scores.size()));
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (scores(a) != scores(b)) return scores(a) > scores(b);
    return a < b;
  });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

double chi2_statistic(const Matrix& counts) {
  const double total = counts.sum();
  if (total <= 0.0) throw Error("chi2_statistic: empty table");
  const Vector row_sums = counts.rowwise().sum();
  const Vector col_sums = counts.colwise().sum();
  double stat = 0.0;
  for (Index r = 0; r < counts.rows(); ++r)
    for (Index c = 0; c < counts.cols(); ++c) {
      const double expected = row_sums(r) * col_sums(c) / total;
      if (expected > 0.0) {
        const double diff = counts(r, c) - expected;
        stat += diff * diff / expected;
      }
    }
  return stat;
}

SelectorResult chi2_select(const Matrix& X, const std::vector<int>& y,
                           int n_classes, Index k) {
  const Index n = X.rows();
  const Index d = X.cols();
  if (n == 0) throw Error("chi2_select: empty data");

  // Min-max scale to [0,1]; the score needs nonnegative inputs and the
  // training data is typically standardized (negative) at this point.
  Vector mins = X.colwise().minCoeff();
  Vector ranges = (X.colwise().maxCoeff().transpose() - mins).cwiseMax(0.0);

  Vector class_count = Vector::Zero(n_classes);
  for (int label : y) class_count(label) += 1.0;
  const Vector class_prop = class_count / static_cast<double>(n);

  Vector scores = Vector::Zero(d);
  for (Index j = 0; j < d; ++j) {
    if (ranges(j) < 1e-12) continue;  // constant column carries no signal
    Vector observed = Vector::Zero(n_classes);
    double feature_total = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double scaled = (X(i, j) - mins(j)) / ranges(j);
      observed(y[static_cast<std::size_t>(i)]) += scaled;
      feature_total += scaled;
    }
    if (feature_total <= 1e-12) continue;
    double stat = 0.0;
    for (int c = 0; c < n_classes; ++c) {
      const double expected = class_prop(c) * feature_total;
      if (expected > 0.0) {
        const double diff = observed(c) - expected;
        stat += diff * diff / expected;
      }
    }
    scores(j) = stat;
  }

  SelectorResult result;
  result.kind = SelectorKind::chi2;
  result.scores = scores;
  result.indices = top_k_by_score(scores, k);
  return result;
}

SelectorResult pca_select(const Matrix& X_train, Index k) {
  const Index n = X_train.rows();
  const Index d = X_train.cols();
  if (k < 1 || k > d)
    throw Error("pca_select: k = " + std::to_string(k) + " outside 1.." +
                std::to_string(d));
  if (n == 0) throw Error("pca_select: empty data");

  SelectorResult result;
  result.kind = SelectorKind::pca;
  result.train_mean = X_train.colwise().mean();
  Matrix centered = X_train.rowwise() - result.train_mean.transpose();
  Matrix cov = (centered.transpose() * centered) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success)
    throw Error("pca_select: eigendecomposition failed");

  // Eigenvalues come back ascending; take the top k, largest first.
  result.projection.resize(d, k);
  for (Index c = 0; c < k; ++c) {
    Vector v = solver.eigenvectors().col(d - 1 - c);
    for (Index r = 0; r < d; ++r) {
      if (std::abs(v(r)) > 1e-12) {
        if (v(r) < 0.0) v = -v;
        break;
      }
    }
    result.projection.col(c) = v;
  }
  return result;
}

Matrix pca_apply(const SelectorResult& result, const Matrix& X) {
  if (result.kind != SelectorKind::pca)
    throw Error("pca_apply: selector is not pca");
  if (X.cols() != result.projection.rows())
    throw Error("pca_apply: dimension mismatch");
  return (X.rowwise() - result.train_mean.transpose()) * result.projection;
}

Matrix lasso_coefficients(const Matrix& X, const Matrix& targets,
                          const LassoConfig& config,
                          std::vector<double>* objective_trace) {
  const Index n = X.rows();
  const Index d = X.cols();
  if (n == 0) throw Error("lasso_coefficients: empty data");
  const double inv_n = 1.0 / static_cast<double>(n);

  Vector col_sq(d);
  for (Index j = 0; j < d; ++j) col_sq(j) = X.col(j).squaredNorm() * inv_n;

  Matrix beta = Matrix::Zero(d, targets.cols());
  for (Index c = 0; c < targets.cols(); ++c) {
    Vector residual = targets.col(c);
    const bool trace_this = objective_trace && c + 1 == targets.cols();
    if (trace_this) objective_trace->clear();
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      double max_change = 0.0;
      for (Index j = 0; j < d; ++j) {
        if (col_sq(j) <= 0.0) continue;
        const double old = beta(j, c);
        const double rho = X.col(j).dot(residual) * inv_n + col_sq(j) * old;
        double next = 0.0;
        if (rho > config.lambda_l1)
          next = (rho - config.lambda_l1) / col_sq(j);
        else if (rho < -config.lambda_l1)
          next = (rho + config.lambda_l1) / col_sq(j);
        if (next != old) {
          residual -= (next - old) * X.col(j);
          beta(j, c) = next;
          max_change = std::max(max_change, std::abs(next - old));
        }
      }
      if (trace_this)
        objective_trace->push_back(0.5 * inv_n * residual.squaredNorm() +
                                   config.lambda_l1 *
                                       beta.col(c).cwiseAbs().sum());
      if (max_change < config.tol) break;
    }
  }
  return beta;
}

SelectorResult lasso_select(const Matrix& X, const std::vector<int>& y,
                            int n_classes, Index k, const LassoConfig& config) {
  Matrix targets = Matrix::Zero(X.rows(), n_classes);
  for (Index i = 0; i < X.rows(); ++i)
    targets(i, y[static_cast<std::size_t>(i)]) = 1.0;

  const Matrix beta = lasso_coefficients(X, targets, config);
  SelectorResult result;
  result.kind = SelectorKind::lasso;
  result.scores = beta.cwiseAbs().rowwise().maxCoeff();
  if (result.scores.maxCoeff() <= 0.0) {
    result.warning =
        "lasso: every coefficient is zero at lambda_l1 = " +
        format_double(config.lambda_l1) + "; selection falls back to index order";
    std::cerr << "warning: " << result.warning << '\n';
  }
  result.indices = top_k_by_score(result.scores, k);
  return result;
}

SelectorResult ngn_selector(const Matrix& X, Index k, const NgnParams& params) {
  Codebook cb = ngn_train(X, params);
  SelectorResult result;
  result.kind = SelectorKind::ngn;
  result.scores = ngn_feature_scores(cb);
  result.indices = top_k_by_score(result.scores, k);
  return result;
}

SelectorResult raw_selector(Index n_features) {
  SelectorResult result;
  result.kind = SelectorKind::raw;
  result.indices.resize(static_cast<std::size_t>(n_features));
  std::iota(result.indices.begin(), result.indices.end(), Index{0});
  return result;
}

Matrix apply_selector(const SelectorResult& result, const Matrix& X) {
  if (result.kind == SelectorKind::pca) return pca_apply(result, X);
  if (result.kind == SelectorKind::raw) return X;
  Matrix out(X.rows(), static_cast<Index>(result.indices.size()));
  for (std::size_t c = 0; c < result.indices.size(); ++c) {
    if (result.indices[c] < 0 || result.indices[c] >= X.cols())
      throw Error("apply_selector: index out of range");
    out.col(static_cast<Index>(c)) = X.col(result.indices[c]);
  }
  return out;
}

std::vector<std::string> selected_feature_names(
    const SelectorResult& result, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  if (result.kind == SelectorKind::pca) {
    for (Index c = 0; c < result.projection.cols(); ++c)
      out.push_back("pc" + std::to_string(c + 1));
  } else if (result.kind == SelectorKind::raw) {
    out = names;
  } else {
    for (Index idx : result.indices)
      out.push_back(names[static_cast<std::size_t>(idx)]);
  }
  return out;
}

void save_selector_csv(const SelectorResult& result,
                       const std::vector<std::string>& feature_names,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  if (result.kind == SelectorKind::pca) {
    out << "component";
    for (const auto& name : feature_names) out << ',' << name;
    out << '\n';
    for (Index c = 0; c < result.projection.cols(); ++c) {
      out << "pc" << (c + 1);
      for (Index r = 0; r < result.projection.rows(); ++r)
        out << ',' << format_double(result.projection(r, c));
      out << '\n';
    }
    return;
  }
  out << "rank,feature_index,feature_name,score\n";
  for (std::size_t r = 0; r < result.indices.size(); ++r) {
    const Index idx = result.indices[r];
    const double score =
        result.scores.size() > idx ? result.scores(idx) : 0.0;
    out << r << ',' << idx << ','
        << feature_names[static_cast<std::size_t>(idx)] << ','
        << format_double(score) << '\n';
  }
}

}  // namespace gasboost
