#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gasboost/booster.hpp"
#include "gasboost/dataset.hpp"

namespace gasboost {

struct SwarmParams {
  int swarm_size = 50;
  int max_iters = 100;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class DimKind { continuous, integer };

struct SearchBox {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<DimKind> kind;

  std::size_t dims() const { return lower.size(); }
  void validate() const;
};

struct PsoResult {
  std::vector<double> best_position;  // integer dims already rounded
  double best_cost = 0.0;
  std::vector<double> trace;  // global best after each iteration, size max_iters
};

// Called after the initial evaluation (iteration 0) and after every
// iteration; used by diagnostics and tests.
using PsoObserver = std::function<void(
    int iteration, const std::vector<std::vector<double>>& positions,
    const std::vector<std::vector<double>>& velocities, double best_cost)>;

// Global-best PSO over a bounded box. Positions clip to the box, velocities
// clamp to 20% of each dimension's range, integer dimensions round to the
// nearest value at evaluation time while the internal state stays
// continuous. Each (iteration, particle) pair draws from its own stream
// derived from the seed, and best updates reduce in particle-index order,
// so results do not depend on evaluation scheduling.
PsoResult pso_optimize(
    const std::function<double(const std::vector<double>&)>& objective,
    const SearchBox& box, const SwarmParams& params,
    const PsoObserver& observer = nullptr);

enum class TuneObjectiveScope { inner_val, train };

struct TuneOptions {
  int tune_rounds = 50;       // reduced n_rounds inside the objective
  double inner_ratio = 0.8;   // train share of the inner validation split
  TuneObjectiveScope scope = TuneObjectiveScope::inner_val;
};

struct TuneResult {
  int max_depth = 0;
  double learning_rate = 0.0;
  double best_cost = 0.0;
  std::vector<double> trace;
};

// Tunes (max_depth in 3..10, learning_rate in 0.01..0.3) by minimizing
// 1 - accuracy of a reduced-round booster on an inner stratified validation
// split of `train` (or on the training rows themselves when scope = train).
TuneResult tune_booster(const Dataset& train, const BoostParams& base,
                        const SwarmParams& params,
                        const TuneOptions& options = {});

}  // namespace gasboost
