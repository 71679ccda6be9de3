#include "gasboost/pso.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gasboost/common.hpp"
#include "gasboost/metrics.hpp"
#include "gasboost/rng.hpp"

namespace gasboost {

void SwarmParams::validate() const {
  if (swarm_size < 2) throw Error("swarm_size must be >= 2");
  if (max_iters < 1) throw Error("max_iters must be >= 1");
  if (inertia < 0.0 || cognitive < 0.0 || social < 0.0)
    throw Error("PSO coefficients must be nonnegative");
}

void SearchBox::validate() const {
  if (lower.size() != upper.size() || lower.size() != kind.size())
    throw Error("search box dimension mismatch");
  if (lower.empty()) throw Error("search box has no dimensions");
  for (std::size_t d = 0; d < lower.size(); ++d)
    if (!(lower[d] < upper[d]))
      throw Error("search box bound " + std::to_string(d) + " is not ordered");
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, int iteration, int particle) {
  return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(iteration)),
                  static_cast<std::uint64_t>(particle));
}

std::vector<double> evaluation_position(const std::vector<double>& x,
                                        const SearchBox& box) {
  std::vector<double> pos = x;
  for (std::size_t d = 0; d < pos.size(); ++d)
    if (box.kind[d] == DimKind::integer)
      pos[d] = std::clamp(std::round(pos[d]), box.lower[d], box.upper[d]);
  return pos;
}

std::string describe_position(const std::vector<double>& pos) {
  std::ostringstream out;
  out << '(';
  for (std::size_t d = 0; d < pos.size(); ++d) {
    if (d) out << ", ";
    out << format_double(pos[d]);
  }
  out << ')';
  return out.str();
}

}  // namespace

PsoResult pso_optimize(
    const std::function<double(const std::vector<double>&)>& objective,
    const SearchBox& box, const SwarmParams& params,
    const PsoObserver& observer) {
  params.validate();
  box.validate();
  const std::size_t dims = box.dims();
  const int swarm = params.swarm_size;

  std::vector<double> vmax(dims);
  for (std::size_t d = 0; d < dims; ++d)
    vmax[d] = 0.2 * (box.upper[d] - box.lower[d]);

  std::vector<std::vector<double>> x(static_cast<std::size_t>(swarm)),
      v(static_cast<std::size_t>(swarm)), pbest(static_cast<std::size_t>(swarm));
  std::vector<double> pbest_cost(static_cast<std::size_t>(swarm));

  auto evaluate = [&](const std::vector<double>& position) {
    const std::vector<double> pos = evaluation_position(position, box);
    const double cost = objective(pos);
    if (!std::isfinite(cost))
      throw Error("objective returned a non-finite value at " +
                  describe_position(pos));
    return cost;
  };

  for (int p = 0; p < swarm; ++p) {
    Rng rng(stream_seed(params.seed, 0, p));
    auto& xi = x[static_cast<std::size_t>(p)];
    auto& vi = v[static_cast<std::size_t>(p)];
    xi.resize(dims);
    vi.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      xi[d] = rng.uniform(box.lower[d], box.upper[d]);
      vi[d] = rng.uniform(-vmax[d], vmax[d]);
    }
    pbest[static_cast<std::size_t>(p)] = xi;
    pbest_cost[static_cast<std::size_t>(p)] = evaluate(xi);
  }

  int gbest = 0;
  for (int p = 1; p < swarm; ++p)
    if (pbest_cost[static_cast<std::size_t>(p)] < pbest_cost[static_cast<std::size_t>(gbest)])
      gbest = p;
  std::vector<double> gbest_pos = pbest[static_cast<std::size_t>(gbest)];
  double gbest_cost = pbest_cost[static_cast<std::size_t>(gbest)];

  if (observer) observer(0, x, v, gbest_cost);

  PsoResult result;
  result.trace.reserve(static_cast<std::size_t>(params.max_iters));
  for (int it = 1; it <= params.max_iters; ++it) {
    for (int p = 0; p < swarm; ++p) {
      Rng rng(stream_seed(params.seed, it, p));
      auto& xi = x[static_cast<std::size_t>(p)];
      auto& vi = v[static_cast<std::size_t>(p)];
      const auto& pb = pbest[static_cast<std::size_t>(p)];
      for (std::size_t d = 0; d < dims; ++d) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        vi[d] = params.inertia * vi[d] +
                params.cognitive * r1 * (pb[d] - xi[d]) +
                params.social * r2 * (gbest_pos[d] - xi[d]);
        vi[d] = std::clamp(vi[d], -vmax[d], vmax[d]);
        xi[d] = std::clamp(xi[d] + vi[d], box.lower[d], box.upper[d]);
      }
    }
    // Evaluations are independent; the best-update reduction below runs in
    // particle-index order regardless of how they were scheduled.
    for (int p = 0; p < swarm; ++p) {
      const double cost = evaluate(x[static_cast<std::size_t>(p)]);
      if (cost < pbest_cost[static_cast<std::size_t>(p)]) {
        pbest_cost[static_cast<std::size_t>(p)] = cost;
        pbest[static_cast<std::size_t>(p)] = x[static_cast<std::size_t>(p)];
      }
    }
    for (int p = 0; p < swarm; ++p) {
      if (pbest_cost[static_cast<std::size_t>(p)] < gbest_cost) {
        gbest_cost = pbest_cost[static_cast<std::size_t>(p)];
        gbest_pos = pbest[static_cast<std::size_t>(p)];
      }
    }
    result.trace.push_back(gbest_cost);
    if (observer) observer(it, x, v, gbest_cost);
  }

  result.best_position = evaluation_position(gbest_pos, box);
  result.best_cost = gbest_cost;
  return result;
}

TuneResult tune_booster(const Dataset& train, const BoostParams& base,
                        const SwarmParams& params, const TuneOptions& options) {
  if (options.inner_ratio <= 0.0 || options.inner_ratio >= 1.0)
    throw Error("inner_ratio must lie in (0,1)");
  if (options.tune_rounds < 1) throw Error("tune_rounds must be >= 1");

  Dataset fit_data = train;
  Dataset val_data = train;
  if (options.scope == TuneObjectiveScope::inner_val) {
    SplitSpec inner;
    inner.train_ratio = options.inner_ratio;
    inner.seed = mix_seed(params.seed, 0x1aabc9u);
    inner.stratified = true;
    Split inner_split = split(train, inner);  // throws if a class has < 2 rows
    fit_data = std::move(inner_split.train);
    val_data = std::move(inner_split.test);
  }

  BoostParams objective_params = base;
  objective_params.n_rounds = options.tune_rounds;

  SearchBox box;
  box.lower = {3.0, 0.01};
  box.upper = {10.0, 0.3};
  box.kind = {DimKind::integer, DimKind::continuous};

  auto objective = [&](const std::vector<double>& pos) {
    BoostParams bp = objective_params;
    bp.max_depth = static_cast<int>(pos[0]);
    bp.learning_rate = pos[1];
    BoostEnsemble model =
        boost_fit(fit_data.features, fit_data.labels, fit_data.n_classes, bp);
    return 1.0 - accuracy(model.predict(val_data.features), val_data.labels);
  };

  PsoResult pso = pso_optimize(objective, box, params);
  TuneResult result;
  result.max_depth = static_cast<int>(pso.best_position[0]);
  result.learning_rate = pso.best_position[1];
  result.best_cost = pso.best_cost;
  result.trace = std::move(pso.trace);
  return result;
}

}  // namespace gasboost
