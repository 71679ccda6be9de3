#include "gasboost/booster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "gasboost/common.hpp"

namespace gasboost {

int RegressionTree::internal_node_count() const {
  int n = 0;
  for (const TreeNode& nd : nodes)
    if (nd.feature >= 0) ++n;
  return n;
}

int RegressionTree::depth() const {
  // Iterative preorder with explicit depths; the tree is small.
  int max_depth = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [idx, d] = stack.back();
    stack.pop_back();
    const TreeNode& nd = nodes[static_cast<std::size_t>(idx)];
    if (nd.feature < 0) {
      max_depth = std::max(max_depth, d);
      continue;
    }
    stack.push_back({nd.left, d + 1});
    stack.push_back({nd.right, d + 1});
  }
  return max_depth;
}

SortedColumns presort_columns(const Matrix& X) {
  SortedColumns cols;
  cols.order.resize(static_cast<std::size_t>(X.cols()));
  const int n = static_cast<int>(X.rows());
  for (Index j = 0; j < X.cols(); ++j) {
    auto& ord = cols.order[static_cast<std::size_t>(j)];
    ord.resize(static_cast<std::size_t>(n));
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(),
                     [&](int a, int b) { return X(a, j) < X(b, j); });
  }
  return cols;
}

namespace {

struct NodeStats {
  double sum_g = 0.0;
  double sum_h = 0.0;
  int first_tree_index = -1;  // position in RegressionTree::nodes
};

struct BestSplit {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

struct ScanState {
  double g_left = 0.0;
  double h_left = 0.0;
  double last_value = 0.0;
  bool has_last = false;
};

inline double leaf_objective(double g, double h, double reg_lambda) {
  return g * g / (h + reg_lambda);
}

}  // namespace

RegressionTree build_tree(const Matrix& X, const SortedColumns& columns,
                          const Vector& g, const Vector& h,
                          const BoostParams& params) {
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  if (g.size() != n || h.size() != n)
    throw Error("build_tree: gradient length does not match row count");
  if (n == 0) throw Error("build_tree: empty data");

  RegressionTree tree;
  // node_of_row maps every row to its current node id in `stats`; negative
  // once the row's node has become a leaf.
  std::vector<int> node_of_row(static_cast<std::size_t>(n), 0);
  std::vector<NodeStats> stats(1);
  stats[0].sum_g = g.sum();
  stats[0].sum_h = h.sum();
  stats[0].first_tree_index = 0;
  tree.nodes.emplace_back();

  std::vector<int> active{0};
  for (int depth = 0; depth < params.max_depth && !active.empty(); ++depth) {
    const int n_active = static_cast<int>(active.size());
    std::vector<BestSplit> best(static_cast<std::size_t>(n_active));
    std::vector<int> slot_of_node(stats.size(), -1);
    for (int s = 0; s < n_active; ++s)
      slot_of_node[static_cast<std::size_t>(active[static_cast<std::size_t>(s)])] = s;

    std::vector<ScanState> scan(static_cast<std::size_t>(n_active));
    for (int j = 0; j < d; ++j) {
      std::fill(scan.begin(), scan.end(), ScanState{});
      for (int row : columns.order[static_cast<std::size_t>(j)]) {
        const int node = node_of_row[static_cast<std::size_t>(row)];
        if (node < 0) continue;
        const int slot = slot_of_node[static_cast<std::size_t>(node)];
        if (slot < 0) continue;
        ScanState& st = scan[static_cast<std::size_t>(slot)];
        const double value = X(row, j);
        if (st.has_last && value > st.last_value) {
          const NodeStats& ns = stats[static_cast<std::size_t>(active[static_cast<std::size_t>(slot)])];
          const double h_right = ns.sum_h - st.h_left;
          if (st.h_left >= params.min_child_weight &&
              h_right >= params.min_child_weight) {
            const double g_right = ns.sum_g - st.g_left;
            const double gain =
                0.5 * (leaf_objective(st.g_left, st.h_left, params.reg_lambda) +
                       leaf_objective(g_right, h_right, params.reg_lambda) -
                       leaf_objective(ns.sum_g, ns.sum_h, params.reg_lambda)) -
                params.gamma_min_gain;
            BestSplit& bs = best[static_cast<std::size_t>(slot)];
            if (gain > bs.gain && gain > 0.0) {
              bs.gain = gain;
              bs.feature = j;
              bs.threshold = 0.5 * (st.last_value + value);
            }
          }
        }
        st.g_left += g(row);
        st.h_left += h(row);
        st.last_value = value;
        st.has_last = true;
      }
    }

    // Materialize chosen splits; nodes without a positive-gain split close
    // as leaves.
    std::vector<int> next_active;
    std::vector<int> left_child(stats.size(), -1), right_child(stats.size(), -1);
    std::vector<BestSplit> chosen(stats.size());
    for (int s = 0; s < n_active; ++s) {
      const int node = active[static_cast<std::size_t>(s)];
      const BestSplit& bs = best[static_cast<std::size_t>(s)];
      NodeStats& ns = stats[static_cast<std::size_t>(node)];
      TreeNode& tn = tree.nodes[static_cast<std::size_t>(ns.first_tree_index)];
      if (bs.feature < 0) {
        tn.weight = -ns.sum_g / (ns.sum_h + params.reg_lambda);
        continue;
      }
      tn.feature = bs.feature;
      tn.threshold = bs.threshold;
      const int lid = static_cast<int>(stats.size());
      const int rid = lid + 1;
      tn.left = static_cast<int>(tree.nodes.size());
      tn.right = tn.left + 1;
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      NodeStats ls, rs;
      ls.first_tree_index = tn.left;
      rs.first_tree_index = tn.right;
      stats.push_back(ls);
      stats.push_back(rs);
      left_child.resize(stats.size(), -1);
      right_child.resize(stats.size(), -1);
      chosen.resize(stats.size());
      left_child[static_cast<std::size_t>(node)] = lid;
      right_child[static_cast<std::size_t>(node)] = rid;
      chosen[static_cast<std::size_t>(node)] = bs;
      next_active.push_back(lid);
      next_active.push_back(rid);
    }

    for (int row = 0; row < n; ++row) {
      int& node = node_of_row[static_cast<std::size_t>(row)];
      if (node < 0) continue;
      const int lid = left_child[static_cast<std::size_t>(node)];
      if (lid < 0) {
        node = -1;  // node became a leaf
        continue;
      }
      const BestSplit& bs = chosen[static_cast<std::size_t>(node)];
      const int child = X(row, bs.feature) < bs.threshold
                            ? lid
                            : right_child[static_cast<std::size_t>(node)];
      stats[static_cast<std::size_t>(child)].sum_g += g(row);
      stats[static_cast<std::size_t>(child)].sum_h += h(row);
      node = child;
    }
    active = std::move(next_active);
  }

  // Depth budget exhausted: close any still-open nodes.
  for (int node : active) {
    NodeStats& ns = stats[static_cast<std::size_t>(node)];
    tree.nodes[static_cast<std::size_t>(ns.first_tree_index)].weight =
        -ns.sum_g / (ns.sum_h + params.reg_lambda);
  }
  return tree;
}

RegressionTree build_tree(const Matrix& X, const Vector& g, const Vector& h,
                          const BoostParams& params) {
  return build_tree(X, presort_columns(X), g, h, params);
}

void softmax_row(const double* scores, int n_classes, double* probs) {
  double max_score = scores[0];
  for (int k = 1; k < n_classes; ++k) max_score = std::max(max_score, scores[k]);
  double total = 0.0;
  for (int k = 0; k < n_classes; ++k) {
    probs[k] = std::exp(scores[k] - max_score);
    total += probs[k];
  }
  for (int k = 0; k < n_classes; ++k) probs[k] /= total;
}

void softmax_grad_hess(const double* p, int n_classes, int y, double* g,
                       double* h) {
  for (int k = 0; k < n_classes; ++k) {
    g[k] = p[k] - (k == y ? 1.0 : 0.0);
    h[k] = p[k] * (1.0 - p[k]);
  }
}

Matrix BoostEnsemble::decision_scores(const Matrix& X) const {
  if (n_classes < 2) throw Error("ensemble has no classes");
  Matrix scores = Matrix::Zero(X.rows(), n_classes);
  const int rounds = static_cast<int>(trees.size()) / n_classes;
  for (int r = 0; r < rounds; ++r)
    for (int k = 0; k < n_classes; ++k) {
      const RegressionTree& tree =
          trees[static_cast<std::size_t>(r * n_classes + k)];
      for (Index i = 0; i < X.rows(); ++i)
        scores(i, k) += params.learning_rate * tree.predict_row(X, i);
    }
  return scores;
}

Matrix BoostEnsemble::predict_proba(const Matrix& X) const {
  Matrix scores = decision_scores(X);
  Matrix probs(scores.rows(), scores.cols());
  std::vector<double> row(static_cast<std::size_t>(n_classes));
  std::vector<double> out(static_cast<std::size_t>(n_classes));
  for (Index i = 0; i < scores.rows(); ++i) {
    for (int k = 0; k < n_classes; ++k) row[static_cast<std::size_t>(k)] = scores(i, k);
    softmax_row(row.data(), n_classes, out.data());
    for (int k = 0; k < n_classes; ++k) probs(i, k) = out[static_cast<std::size_t>(k)];
  }
  return probs;
}

std::vector<int> BoostEnsemble::predict(const Matrix& X) const {
  Matrix scores = decision_scores(X);
  std::vector<int> labels(static_cast<std::size_t>(X.rows()));
  for (Index i = 0; i < scores.rows(); ++i) {
    int best = 0;
    for (int k = 1; k < n_classes; ++k)
      if (scores(i, k) > scores(i, best)) best = k;
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

namespace {

void write_tree_preorder(std::ostream& out, const RegressionTree& tree,
                         int node) {
  const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
  if (nd.feature < 0) {
    out << "leaf w=" << format_double(nd.weight) << '\n';
    return;
  }
  out << "split f=" << nd.feature << " t=" << format_double(nd.threshold)
      << '\n';
  write_tree_preorder(out, tree, nd.left);
  write_tree_preorder(out, tree, nd.right);
}

}  // namespace

std::string BoostEnsemble::to_text() const {
  std::ostringstream out;
  const int rounds = n_classes > 0 ? static_cast<int>(trees.size()) / n_classes : 0;
  out << "gasboost ensemble v1\n";
  out << "classes " << n_classes << '\n';
  out << "rounds " << rounds << '\n';
  out << "learning_rate " << format_double(params.learning_rate) << '\n';
  for (int r = 0; r < rounds; ++r)
    for (int k = 0; k < n_classes; ++k) {
      const RegressionTree& tree =
          trees[static_cast<std::size_t>(r * n_classes + k)];
      out << "tree round=" << r << " class=" << k << " nodes="
          << tree.nodes.size() << '\n';
      write_tree_preorder(out, tree, 0);
    }
  return out.str();
}

void BoostEnsemble::save_text(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << to_text();
}

BoostEnsemble boost_fit(const Matrix& X, const std::vector<int>& y,
                        int n_classes, const BoostParams& params) {
  const int n = static_cast<int>(X.rows());
  if (n == 0) throw Error("boost_fit: empty data");
  if (static_cast<int>(y.size()) != n)
    throw Error("boost_fit: label count does not match rows");
  if (n_classes < 2) throw Error("boost_fit: needs at least 2 classes");
  if (params.n_rounds < 1) throw Error("boost_fit: n_rounds must be >= 1");
  {
    const int first = y.front();
    bool single = true;
    for (int label : y) {
      if (label < 0 || label >= n_classes)
        throw Error("boost_fit: label " + std::to_string(label) +
                    " outside 0.." + std::to_string(n_classes - 1));
      if (label != first) single = false;
    }
    if (single) throw Error("boost_fit: training labels contain one class");
  }

  const SortedColumns columns = presort_columns(X);
  BoostEnsemble model;
  model.params = params;
  model.n_classes = n_classes;
  model.trees.reserve(static_cast<std::size_t>(params.n_rounds * n_classes));

  Matrix scores = Matrix::Zero(n, n_classes);
  Matrix probs(n, n_classes);
  Vector g(n), h(n);
  std::vector<double> score_row(static_cast<std::size_t>(n_classes));
  std::vector<double> prob_row(static_cast<std::size_t>(n_classes));

  for (int round = 0; round < params.n_rounds; ++round) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n_classes; ++k)
        score_row[static_cast<std::size_t>(k)] = scores(i, k);
      softmax_row(score_row.data(), n_classes, prob_row.data());
      for (int k = 0; k < n_classes; ++k)
        probs(i, k) = prob_row[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < n_classes; ++k) {
      for (int i = 0; i < n; ++i) {
        const double p = probs(i, k);
        g(i) = p - (y[static_cast<std::size_t>(i)] == k ? 1.0 : 0.0);
        h(i) = p * (1.0 - p);
      }
      RegressionTree tree = build_tree(X, columns, g, h, params);
      for (int i = 0; i < n; ++i)
        scores(i, k) += params.learning_rate * tree.predict_row(X, i);
      model.trees.push_back(std::move(tree));
    }
    double ce = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n_classes; ++k)
        score_row[static_cast<std::size_t>(k)] = scores(i, k);
      softmax_row(score_row.data(), n_classes, prob_row.data());
      const double p_true =
          prob_row[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])];
      ce -= std::log(std::max(p_true, std::numeric_limits<double>::min()));
    }
    model.train_ce_trace.push_back(ce / n);
  }
  return model;
}

}  // namespace gasboost
