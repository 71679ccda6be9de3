#pragma once

#include <cstdint>
#include <vector>

#include "gasboost/dataset.hpp"

namespace gasboost {

/// Neural gas training parameters. The learning rate eps(t) and the rank
/// neighborhood width lambda(t) both decay geometrically from their initial
/// to their final value over t_max presentations; each neuron's pull toward
/// the sample falls off as exp(-rank / lambda(t)).
struct NgnParams {
  int n_neurons = 10;
  double eps_initial = 0.5;
  double eps_final = 0.005;
  double lambda_initial = 10.0;
  double lambda_final = 0.5;
  long t_max = 0;  // 0 resolves to 100 * n_samples at training time
  std::uint64_t seed = 0;

  void validate() const;
};

struct Codebook {
  Matrix positions;              // n_neurons x n_features
  std::vector<double> qe_trace;  // quantization error, sampled once per epoch
};

// Geometric interpolation v0 * (vf/v0)^(t/t_max); shared by eps and lambda.
double ngn_schedule(double v0, double vf, double t, double t_max);

// Online neural gas: present seeded-random rows one at a time, rank all
// neurons by distance to the sample and move every neuron toward it with a
// rank-damped step. Neurons start on distinct data rows.
Codebook ngn_train(const Matrix& X, const NgnParams& params);

// Per-feature variance of the neuron positions. Columns the codebook spreads
// along carry the structure the quantizer learned.
Vector ngn_feature_scores(const Codebook& codebook);

// Feature indices ordered by descending score, ties toward the lower index.
std::vector<Index> ngn_rank_order(const Vector& scores);

// Top-k original feature indices under the codebook-variance ranking.
std::vector<Index> ngn_select(const Matrix& X, Index k, const NgnParams& params);

void save_codebook_csv(const Codebook& codebook,
                       const std::vector<std::string>& feature_names,
                       const std::string& path);

}  // namespace gasboost
