#include <doctest.h>

#include <cmath>

#include "gasboost/common.hpp"
#include "gasboost/dataset.hpp"
#include "gasboost/pso.hpp"

using namespace gasboost;

namespace {

SearchBox square_box(double lo, double hi, std::size_t dims) {
  SearchBox box;
  box.lower.assign(dims, lo);
  box.upper.assign(dims, hi);
  box.kind.assign(dims, DimKind::continuous);
  return box;
}

double sphere(const std::vector<double>& x) {
  double total = 0.0;
  for (double v : x) total += v * v;
  return total;
}

}  // namespace

TEST_SUITE("pso") {

TEST_CASE("sphere benchmark reaches the analytic minimum region") {
  SwarmParams params;
  params.seed = 1;
  PsoResult result = pso_optimize(sphere, square_box(-5.0, 5.0, 2), params);
  CHECK(result.best_cost < 1e-3);
  CHECK(result.trace.size() == static_cast<std::size_t>(params.max_iters));
}

TEST_CASE("a constant objective pins the trace to the constant") {
  SwarmParams params;
  params.swarm_size = 8;
  params.max_iters = 10;
  params.seed = 4;
  PsoResult result = pso_optimize(
      [](const std::vector<double>&) { return 3.25; }, square_box(0, 1, 2),
      params);
  CHECK(result.best_cost == 3.25);
  for (double c : result.trace) CHECK(c == 3.25);
}

TEST_CASE("the best-cost trace never increases") {
  SwarmParams params;
  params.swarm_size = 12;
  params.max_iters = 40;
  params.seed = 9;
  PsoResult result = pso_optimize(
      [](const std::vector<double>& x) {
        return std::sin(3.0 * x[0]) + 0.1 * x[0] * x[0];
      },
      square_box(-4.0, 4.0, 1), params);
  for (std::size_t i = 1; i < result.trace.size(); ++i)
    CHECK(result.trace[i] <= result.trace[i - 1]);
}

TEST_CASE("identical seeds give identical results and traces") {
  SwarmParams params;
  params.swarm_size = 10;
  params.max_iters = 25;
  params.seed = 77;
  PsoResult a = pso_optimize(sphere, square_box(-2, 2, 3), params);
  PsoResult b = pso_optimize(sphere, square_box(-2, 2, 3), params);
  CHECK(a.best_cost == b.best_cost);
  CHECK(a.best_position == b.best_position);
  CHECK(a.trace == b.trace);
}

TEST_CASE("every evaluated position stays inside the box, integers rounded") {
  SearchBox box;
  box.lower = {3.0, 0.01};
  box.upper = {10.0, 0.3};
  box.kind = {DimKind::integer, DimKind::continuous};
  SwarmParams params;
  params.swarm_size = 12;
  params.max_iters = 30;
  params.seed = 5;
  bool all_inside = true;
  bool all_integral = true;
  pso_optimize(
      [&](const std::vector<double>& x) {
        all_inside = all_inside && x[0] >= 3.0 && x[0] <= 10.0 &&
                     x[1] >= 0.01 && x[1] <= 0.3;
        all_integral = all_integral && x[0] == std::round(x[0]);
        return (x[0] - 6.0) * (x[0] - 6.0) + x[1];
      },
      box, params);
  CHECK(all_inside);
  CHECK(all_integral);
}

TEST_CASE("with no attraction and inertia below one, speeds never grow") {
  SwarmParams params;
  params.swarm_size = 6;
  params.max_iters = 15;
  params.cognitive = 0.0;
  params.social = 0.0;
  params.inertia = 0.8;
  params.seed = 21;
  std::vector<std::vector<double>> previous_speeds;
  bool monotone = true;
  pso_optimize(
      sphere, square_box(-3, 3, 2), params,
      [&](int, const std::vector<std::vector<double>>&,
          const std::vector<std::vector<double>>& velocities, double) {
        std::vector<std::vector<double>> speeds;
        for (const auto& v : velocities) {
          std::vector<double> mags;
          for (double c : v) mags.push_back(std::abs(c));
          speeds.push_back(mags);
        }
        if (!previous_speeds.empty()) {
          for (std::size_t p = 0; p < speeds.size(); ++p)
            for (std::size_t d = 0; d < speeds[p].size(); ++d)
              monotone = monotone &&
                         speeds[p][d] <= previous_speeds[p][d] + 1e-15;
        }
        previous_speeds = speeds;
      });
  CHECK(monotone);
}

TEST_CASE("the result is no worse than the best seeded start") {
  SwarmParams params;
  params.swarm_size = 9;
  params.max_iters = 12;
  params.seed = 3;
  double best_initial = 0.0;
  bool captured = false;
  PsoResult result = pso_optimize(
      sphere, square_box(-6, 6, 2), params,
      [&](int iteration, const std::vector<std::vector<double>>&,
          const std::vector<std::vector<double>>&, double best) {
        if (iteration == 0 && !captured) {
          best_initial = best;
          captured = true;
        }
      });
  REQUIRE(captured);
  CHECK(result.best_cost <= best_initial);
}

TEST_CASE("a non-finite objective is reported with the offending position") {
  SwarmParams params;
  params.swarm_size = 4;
  params.max_iters = 3;
  params.seed = 2;
  CHECK_THROWS_WITH_AS(
      pso_optimize([](const std::vector<double>&) {
        return std::numeric_limits<double>::quiet_NaN();
      },
                   square_box(0, 1, 1), params),
      doctest::Contains("non-finite"), Error);
}

TEST_CASE("tune_booster respects the box and improves on its start") {
  Dataset data = synth(160, 8, 4, 4.0, 10);
  Dataset train = apply_standardizer(fit_standardizer(data.features), data);
  SwarmParams params;
  params.swarm_size = 6;
  params.max_iters = 6;
  params.seed = 12;
  TuneOptions options;
  options.tune_rounds = 15;
  TuneResult tuned = tune_booster(train, BoostParams{}, params, options);
  CHECK(tuned.max_depth >= 3);
  CHECK(tuned.max_depth <= 10);
  CHECK(tuned.learning_rate >= 0.01);
  CHECK(tuned.learning_rate <= 0.3);
  CHECK(tuned.trace.size() == 6);
  CHECK(tuned.best_cost <= tuned.trace.front());
}

TEST_CASE("tuning a separable surrogate reaches a low validation loss") {
  Dataset data = synth(400, 25, 4, 4.0, 70);
  Dataset train = apply_standardizer(fit_standardizer(data.features), data);
  SwarmParams params;
  params.swarm_size = 8;
  params.max_iters = 8;
  params.seed = 31;
  TuneOptions options;
  options.tune_rounds = 20;
  TuneResult tuned = tune_booster(train, BoostParams{}, params, options);
  CHECK(tuned.best_cost <= 0.1);
}

TEST_CASE("tune_booster refuses an infeasible inner split") {
  Dataset data = synth(12, 3, 2, 3.0, 5);
  data.labels.assign(12, 0);
  data.labels[3] = 1;
  SwarmParams params;
  params.swarm_size = 4;
  params.max_iters = 2;
  CHECK_THROWS_AS(tune_booster(data, BoostParams{}, params), Error);
}

}  // TEST_SUITE
