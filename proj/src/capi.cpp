#include "gasboost.h"

#include <cstring>
#include <fstream>
#include <string>

#include "gasboost/booster.hpp"
#include "gasboost/common.hpp"
#include "gasboost/config.hpp"
#include "gasboost/dataset.hpp"
#include "gasboost/experiment.hpp"
#include "gasboost/pso.hpp"
#include "gasboost/report.hpp"
#include "gasboost/selectors.hpp"

struct gb_dataset {
  gasboost::Dataset data;
};

struct gb_booster {
  gasboost::BoostEnsemble model;
  gasboost::Index n_features = 0;
};

namespace {

thread_local std::string g_last_error;

gb_status fail(gb_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

gb_status invalid(const std::string& message) {
  return fail(GB_ERROR_INVALID_ARGUMENT, message);
}

// Maps an exception to a status; IO-ish messages are detected by the open /
// write prefixes used across the library.
gb_status from_exception(const std::exception& e) {
  const std::string what = e.what();
  if (what.find("cannot open") != std::string::npos ||
      what.find("cannot write") != std::string::npos ||
      what.find("write failed") != std::string::npos ||
      what.find("is empty") != std::string::npos)
    return fail(GB_ERROR_IO, what);
  if (what.find("config") != std::string::npos ||
      what.find("column") != std::string::npos ||
      what.find("label") != std::string::npos ||
      what.find("line") != std::string::npos)
    return fail(GB_ERROR_PARSE, what);
  return fail(GB_ERROR_RUNTIME, what);
}

gasboost::BoostParams to_core(const gb_boost_params& p) {
  gasboost::BoostParams out;
  out.max_depth = p.max_depth;
  out.learning_rate = p.learning_rate;
  out.n_rounds = p.n_rounds;
  out.reg_lambda = p.reg_lambda;
  out.min_child_weight = p.min_child_weight;
  out.gamma_min_gain = p.gamma_min_gain;
  return out;
}

}  // namespace

extern "C" {

const char* gb_version(void) { return "0.1.0"; }

const char* gb_last_error(void) { return g_last_error.c_str(); }

gb_status gb_dataset_load_csv(const char* path, gb_dataset** out) {
  if (!path || !out) return invalid("gb_dataset_load_csv: null argument");
  try {
    auto handle = new gb_dataset{gasboost::load_csv(path)};
    *out = handle;
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_dataset_synth(int64_t n_samples, int64_t n_features,
                           int32_t n_classes, double separation, uint64_t seed,
                           gb_dataset** out) {
  if (!out) return invalid("gb_dataset_synth: null output");
  try {
    auto handle = new gb_dataset{gasboost::synth(
        static_cast<gasboost::Index>(n_samples),
        static_cast<gasboost::Index>(n_features), n_classes, separation, seed)};
    *out = handle;
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_dataset_save_csv(const gb_dataset* data, const char* path) {
  if (!data || !path) return invalid("gb_dataset_save_csv: null argument");
  try {
    gasboost::save_csv(data->data, path);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

int64_t gb_dataset_rows(const gb_dataset* data) {
  return data ? static_cast<int64_t>(data->data.rows()) : -1;
}

int64_t gb_dataset_cols(const gb_dataset* data) {
  return data ? static_cast<int64_t>(data->data.cols()) : -1;
}

int32_t gb_dataset_classes(const gb_dataset* data) {
  return data ? data->data.n_classes : -1;
}

void gb_dataset_free(gb_dataset* data) { delete data; }

void gb_boost_params_defaults(gb_boost_params* params) {
  if (!params) return;
  gasboost::BoostParams defaults;
  params->max_depth = defaults.max_depth;
  params->learning_rate = defaults.learning_rate;
  params->n_rounds = defaults.n_rounds;
  params->reg_lambda = defaults.reg_lambda;
  params->min_child_weight = defaults.min_child_weight;
  params->gamma_min_gain = defaults.gamma_min_gain;
}

gb_status gb_booster_fit(const gb_dataset* train, const gb_boost_params* params,
                         gb_booster** out) {
  if (!train || !params || !out) return invalid("gb_booster_fit: null argument");
  try {
    auto handle = new gb_booster;
    handle->n_features = train->data.cols();
    handle->model = gasboost::boost_fit(train->data.features, train->data.labels,
                                        train->data.n_classes, to_core(*params));
    *out = handle;
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_booster_predict(const gb_booster* model, const double* features,
                             int64_t rows, int64_t cols, int32_t* labels_out) {
  if (!model || !features || !labels_out)
    return invalid("gb_booster_predict: null argument");
  if (cols != model->n_features)
    return invalid("gb_booster_predict: expected " +
                   std::to_string(model->n_features) + " columns, got " +
                   std::to_string(cols));
  try {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mapped(features, rows, cols);
    gasboost::Matrix X = mapped;
    std::vector<int> labels = model->model.predict(X);
    for (std::size_t i = 0; i < labels.size(); ++i)
      labels_out[i] = labels[i];
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_booster_predict_proba(const gb_booster* model,
                                   const double* features, int64_t rows,
                                   int64_t cols, double* proba_out) {
  if (!model || !features || !proba_out)
    return invalid("gb_booster_predict_proba: null argument");
  if (cols != model->n_features)
    return invalid("gb_booster_predict_proba: expected " +
                   std::to_string(model->n_features) + " columns, got " +
                   std::to_string(cols));
  try {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mapped(features, rows, cols);
    gasboost::Matrix X = mapped;
    gasboost::Matrix P = model->model.predict_proba(X);
    for (gasboost::Index i = 0; i < P.rows(); ++i)
      for (gasboost::Index k = 0; k < P.cols(); ++k)
        proba_out[i * P.cols() + k] = P(i, k);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

int32_t gb_booster_classes(const gb_booster* model) {
  return model ? model->model.n_classes : -1;
}

gb_status gb_booster_save_text(const gb_booster* model, const char* path) {
  if (!model || !path) return invalid("gb_booster_save_text: null argument");
  try {
    model->model.save_text(path);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

void gb_booster_free(gb_booster* model) { delete model; }

namespace {

gasboost::SelectorResult fit_selector_for_api(const gasboost::Dataset& data,
                                              const std::string& method,
                                              gasboost::Index k,
                                              uint64_t seed) {
  gasboost::StandardizerModel standardizer =
      gasboost::fit_standardizer(data.features);
  gasboost::Matrix X = gasboost::apply_standardizer(standardizer, data.features);
  gasboost::SelectorKind kind = gasboost::selector_from_name(method);
  switch (kind) {
    case gasboost::SelectorKind::chi2:
      return gasboost::chi2_select(X, data.labels, data.n_classes, k);
    case gasboost::SelectorKind::pca:
      return gasboost::pca_select(X, k);
    case gasboost::SelectorKind::lasso:
      return gasboost::lasso_select(X, data.labels, data.n_classes, k,
                                    gasboost::LassoConfig{});
    case gasboost::SelectorKind::ngn: {
      gasboost::NgnParams params;
      params.seed = seed;
      return gasboost::ngn_selector(X, k, params);
    }
    case gasboost::SelectorKind::raw:
      return gasboost::raw_selector(X.cols());
  }
  throw gasboost::Error("unknown selector '" + method + "'");
}

}  // namespace

gb_status gb_select_save(const gb_dataset* data, const char* method, int64_t k,
                         uint64_t seed, const char* out_path) {
  if (!data || !method || !out_path) return invalid("gb_select_save: null argument");
  try {
    gasboost::SelectorResult result = fit_selector_for_api(
        data->data, method, static_cast<gasboost::Index>(k), seed);
    gasboost::save_selector_csv(result, data->data.feature_names, out_path);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_select_features(const gb_dataset* data, const char* method,
                             int64_t k, uint64_t seed, int64_t* indices_out) {
  if (!data || !method || !indices_out)
    return invalid("gb_select_features: null argument");
  if (std::strcmp(method, "pca") == 0)
    return invalid("gb_select_features: pca produces components, use gb_select_save");
  try {
    gasboost::SelectorResult result = fit_selector_for_api(
        data->data, method, static_cast<gasboost::Index>(k), seed);
    for (std::size_t i = 0; i < result.indices.size(); ++i)
      indices_out[i] = static_cast<int64_t>(result.indices[i]);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

void gb_tune_params_defaults(gb_tune_params* params) {
  if (!params) return;
  gasboost::SwarmParams swarm;
  gasboost::TuneOptions tune;
  params->swarm_size = swarm.swarm_size;
  params->max_iters = swarm.max_iters;
  params->inertia = swarm.inertia;
  params->cognitive = swarm.cognitive;
  params->social = swarm.social;
  params->tune_rounds = tune.tune_rounds;
  params->seed = 0;
}

gb_status gb_tune_booster(const gb_dataset* data, const gb_tune_params* params,
                          int32_t* max_depth_out, double* learning_rate_out,
                          double* best_cost_out, const char* trace_csv_path) {
  if (!data || !params || !max_depth_out || !learning_rate_out)
    return invalid("gb_tune_booster: null argument");
  try {
    gasboost::SplitSpec spec;
    spec.train_ratio = 0.7;
    spec.seed = params->seed;
    spec.stratified = true;
    gasboost::Split parts = gasboost::split(data->data, spec);
    gasboost::StandardizerModel standardizer =
        gasboost::fit_standardizer(parts.train.features);
    gasboost::Dataset train =
        gasboost::apply_standardizer(standardizer, parts.train);

    gasboost::SwarmParams swarm;
    swarm.swarm_size = params->swarm_size;
    swarm.max_iters = params->max_iters;
    swarm.inertia = params->inertia;
    swarm.cognitive = params->cognitive;
    swarm.social = params->social;
    swarm.seed = params->seed;
    gasboost::TuneOptions options;
    options.tune_rounds = params->tune_rounds;

    gasboost::TuneResult tuned =
        gasboost::tune_booster(train, gasboost::BoostParams{}, swarm, options);
    *max_depth_out = tuned.max_depth;
    *learning_rate_out = tuned.learning_rate;
    if (best_cost_out) *best_cost_out = tuned.best_cost;
    if (trace_csv_path) {
      std::ofstream out(trace_csv_path);
      if (!out)
        throw gasboost::Error("cannot write '" + std::string(trace_csv_path) + "'");
      out << "iteration,best_cost\n";
      for (std::size_t i = 0; i < tuned.trace.size(); ++i)
        out << (i + 1) << ',' << gasboost::format_double(tuned.trace[i]) << '\n';
    }
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_run_experiment(const char* config_path, const char* out_dir) {
  if (!config_path || !out_dir) return invalid("gb_run_experiment: null argument");
  try {
    gasboost::ExperimentConfig config =
        gasboost::ExperimentConfig::from_file(config_path);
    gasboost::ExperimentOutput output = gasboost::run_experiment(config);
    gasboost::write_artifacts(output, config, out_dir);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

gb_status gb_render_report(const char* results_dir) {
  if (!results_dir) return invalid("gb_render_report: null argument");
  try {
    gasboost::render_report_dir(results_dir);
    return GB_OK;
  } catch (const std::exception& e) {
    return from_exception(e);
  }
}

}  // extern "C"
