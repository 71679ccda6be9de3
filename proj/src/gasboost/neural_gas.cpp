#include "gasboost/neural_gas.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "gasboost/common.hpp"
#include "gasboost/rng.hpp"

namespace gasboost {

void NgnParams::validate() const {
  if (n_neurons < 1) throw Error("n_neurons must be >= 1");
  if (eps_initial <= 0.0 || eps_initial > 1.0 || eps_final <= 0.0 ||
      eps_final > 1.0)
    throw Error("eps schedule must lie in (0,1]");
  if (eps_final > eps_initial) throw Error("eps_final must be <= eps_initial");
  if (lambda_initial <= 0.0 || lambda_final <= 0.0)
    throw Error("lambda schedule must be positive");
  if (lambda_final > lambda_initial)
    throw Error("lambda_final must be <= lambda_initial");
  if (t_max < 0) throw Error("t_max must be >= 0 (0 = auto)");
}

double ngn_schedule(double v0, double vf, double t, double t_max) {
  return v0 * std::pow(vf / v0, t / t_max);
}

namespace {

double quantization_error(const Matrix& X, const Matrix& positions) {
  double total = 0.0;
  for (Index i = 0; i < X.rows(); ++i) {
    double best = (positions.row(0) - X.row(i)).squaredNorm();
    for (Index m = 1; m < positions.rows(); ++m)
      best = std::min(best, (positions.row(m) - X.row(i)).squaredNorm());
    total += std::sqrt(best);
  }
  return total / static_cast<double>(X.rows());
}

}  // namespace

Codebook ngn_train(const Matrix& X, const NgnParams& params) {
  params.validate();
  const Index n = X.rows();
  if (n == 0) throw Error("ngn_train: empty data");
  const int m = params.n_neurons;
  if (static_cast<Index>(m) > n)
    throw Error("n_neurons (" + std::to_string(m) + ") exceeds sample count (" +
                std::to_string(n) + ")");
  const long t_max = params.t_max > 0 ? params.t_max : 100 * static_cast<long>(n);

  Rng rng(params.seed);
  std::vector<Index> init(static_cast<std::size_t>(n));
  std::iota(init.begin(), init.end(), Index{0});
  rng.shuffle(init.begin(), init.end());

  Codebook cb;
  cb.positions.resize(m, X.cols());
  for (int i = 0; i < m; ++i)
    cb.positions.row(i) = X.row(init[static_cast<std::size_t>(i)]);

  cb.qe_trace.push_back(quantization_error(X, cb.positions));

  std::vector<std::pair<double, int>> ranked(static_cast<std::size_t>(m));
  for (long t = 0; t < t_max; ++t) {
    const double eps = ngn_schedule(params.eps_initial, params.eps_final,
                                    static_cast<double>(t),
                                    static_cast<double>(t_max));
    const double lambda = ngn_schedule(params.lambda_initial, params.lambda_final,
                                       static_cast<double>(t),
                                       static_cast<double>(t_max));
    const Index row = static_cast<Index>(rng.index(static_cast<std::size_t>(n)));

    for (int i = 0; i < m; ++i)
      ranked[static_cast<std::size_t>(i)] = {
          (cb.positions.row(i) - X.row(row)).squaredNorm(), i};
    std::sort(ranked.begin(), ranked.end());

    for (int rank = 0; rank < m; ++rank) {
      const int i = ranked[static_cast<std::size_t>(rank)].second;
      const double step = eps * std::exp(-static_cast<double>(rank) / lambda);
      cb.positions.row(i) += step * (X.row(row) - cb.positions.row(i));
    }

    if ((t + 1) % n == 0)
      cb.qe_trace.push_back(quantization_error(X, cb.positions));
  }
  if (t_max % n != 0)
    cb.qe_trace.push_back(quantization_error(X, cb.positions));
  return cb;
}

Vector ngn_feature_scores(const Codebook& codebook) {
  const Matrix& P = codebook.positions;
  if (P.rows() == 0) throw Error("feature scores need a trained codebook");
  const double m = static_cast<double>(P.rows());
  Vector scores(P.cols());
  for (Index j = 0; j < P.cols(); ++j) {
    double mean = P.col(j).sum() / m;
    scores(j) = (P.col(j).array() - mean).square().sum() / m;
  }
  return scores;
}

std::vector<Index> ngn_rank_order(const Vector& scores) {
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (scores(a) != scores(b)) return scores(a) > scores(b);
    return a < b;
  });
  return order;
}

std::vector<Index> ngn_select(const Matrix& X, Index k, const NgnParams& params) {
  if (k < 1 || k > X.cols())
    throw Error("ngn_select: k = " + std::to_string(k) + " outside 1.." +
                std::to_string(X.cols()));
  Codebook cb = ngn_train(X, params);
  std::vector<Index> order = ngn_rank_order(ngn_feature_scores(cb));
  order.resize(static_cast<std::size_t>(k));
  return order;
}

void save_codebook_csv(const Codebook& codebook,
                       const std::vector<std::string>& feature_names,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "row";
  for (const auto& name : feature_names) out << ',' << name;
  out << '\n';
  for (Index i = 0; i < codebook.positions.rows(); ++i) {
    out << "neuron_" << i;
    for (Index j = 0; j < codebook.positions.cols(); ++j)
      out << ',' << format_double(codebook.positions(i, j));
    out << '\n';
  }
  Vector scores = ngn_feature_scores(codebook);
  out << "scores";
  for (Index j = 0; j < scores.size(); ++j)
    out << ',' << format_double(scores(j));
  out << '\n';
}

}  // namespace gasboost
