#include "gasboost/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>
#include <thread>

#include "gasboost/common.hpp"

namespace gasboost {

std::uint64_t derive_run_seed(std::uint64_t base_seed,
                              std::size_t fraction_index, SelectorKind selector,
                              ClassifierKind classifier) {
  std::uint64_t h = mix_seed(base_seed, static_cast<std::uint64_t>(fraction_index));
  h = mix_seed(h, hash_string(selector_name(selector)));
  h = mix_seed(h, hash_string(classifier_name(classifier)));
  return h;
}

namespace {

constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kNgnStream = 2;
constexpr std::uint64_t kPsoStream = 3;

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

RunResult execute_run(const Dataset& train, const Dataset& test,
                      const ExperimentConfig& config, const RunSpec& spec,
                      bool capture_artifacts) {
  RunResult result;
  try {
    // Standardize. Train statistics by default; `full` scope deliberately
    // pools the feature statistics of both sides.
    StandardizerModel standardizer;
    if (config.standardize_scope == StandardizeScope::full) {
      Matrix all(train.rows() + test.rows(), train.cols());
      all << train.features, test.features;
      standardizer = fit_standardizer(all);
    } else {
      standardizer = fit_standardizer(train.features);
    }
    const Matrix x_train = apply_standardizer(standardizer, train.features);
    const Matrix x_test = apply_standardizer(standardizer, test.features);
    result.standardizer_means = standardizer.means;

    // Fit the selector on training rows only.
    SelectorResult selector;
    switch (spec.selector) {
      case SelectorKind::chi2:
        selector = chi2_select(x_train, train.labels, train.n_classes, spec.k);
        break;
      case SelectorKind::pca:
        selector = pca_select(x_train, spec.k);
        break;
      case SelectorKind::lasso:
        selector = lasso_select(x_train, train.labels, train.n_classes, spec.k,
                                config.lasso);
        break;
      case SelectorKind::ngn: {
        NgnParams ngn = config.ngn;
        ngn.seed = mix_seed(spec.run_seed, kNgnStream);
        selector = ngn_selector(x_train, spec.k, ngn);
        break;
      }
      case SelectorKind::raw:
        selector = raw_selector(x_train.cols());
        break;
    }
    if (spec.selector != SelectorKind::pca) result.selected = selector.indices;

    Matrix f_train = apply_selector(selector, x_train);
    Matrix f_test = apply_selector(selector, x_test);
    std::vector<std::string> f_names =
        selected_feature_names(selector, train.feature_names);

    const bool fuzzy_classifier = spec.classifier == ClassifierKind::fuzzy_xgb ||
                                  spec.classifier == ClassifierKind::pso_fuzzy_xgb;
    if (fuzzy_classifier) {
      const FuzzyThresholds thresholds = fuzzy_fit(f_train);
      const Matrix s_train = fuzzy_transform(f_train, thresholds);
      const Matrix s_test = fuzzy_transform(f_test, thresholds);
      if (capture_artifacts && thresholds.t_low.size() > 0) {
        result.artifacts.has_thresholds = true;
        result.artifacts.threshold_low = thresholds.t_low(0);
        result.artifacts.threshold_high = thresholds.t_high(0);
        result.artifacts.threshold_feature = f_names.empty() ? "f" : f_names[0];
      }
      if (config.fuzzy_mode == FuzzyMode::replace) {
        f_train = s_train;
        f_test = s_test;
      } else {
        f_train = hstack(f_train, s_train);
        f_test = hstack(f_test, s_test);
      }
    }

    if (capture_artifacts && spec.selector == SelectorKind::ngn)
      result.artifacts.ngn_scores = selector.scores;

    std::vector<int> test_pred;
    switch (spec.classifier) {
      case ClassifierKind::nb: {
        NbModel model = nb_fit(f_train, train.labels, train.n_classes);
        result.train_predictions = nb_predict(model, f_train);
        test_pred = nb_predict(model, f_test);
        break;
      }
      case ClassifierKind::lr: {
        LrModel model = lr_fit(f_train, train.labels, train.n_classes, config.lr);
        result.train_predictions = lr_predict(model, f_train);
        test_pred = lr_predict(model, f_test);
        break;
      }
      case ClassifierKind::dt: {
        CartModel model = cart_fit(f_train, train.labels, train.n_classes, config.cart);
        result.train_predictions = cart_predict(model, f_train);
        test_pred = cart_predict(model, f_test);
        break;
      }
      case ClassifierKind::xgb:
      case ClassifierKind::fuzzy_xgb: {
        BoostEnsemble model =
            boost_fit(f_train, train.labels, train.n_classes, config.boost);
        result.train_predictions = model.predict(f_train);
        test_pred = model.predict(f_test);
        break;
      }
      case ClassifierKind::pso_fuzzy_xgb: {
        Dataset tune_data = train.with_features(f_train, f_names);
        SwarmParams pso = config.pso;
        pso.seed = mix_seed(spec.run_seed, kPsoStream);
        TuneResult tuned = tune_booster(tune_data, config.boost, pso, config.tune);
        result.tuned_max_depth = tuned.max_depth;
        result.tuned_learning_rate = tuned.learning_rate;
        if (capture_artifacts) result.artifacts.pso_trace = tuned.trace;
        BoostParams params = config.boost;
        params.max_depth = tuned.max_depth;
        params.learning_rate = tuned.learning_rate;
        BoostEnsemble model =
            boost_fit(f_train, train.labels, train.n_classes, params);
        result.train_predictions = model.predict(f_train);
        test_pred = model.predict(f_test);
        break;
      }
    }

    result.test_accuracy = accuracy(test_pred, test.labels);
    result.test_confusion = confusion(test_pred, test.labels, train.n_classes);
    result.ok = true;
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
  }
  return result;
}

Dataset load_experiment_data(const ExperimentConfig& config) {
  Dataset data;
  if (config.data.source == DataConfig::Source::csv) {
    data = load_csv(config.data.csv_path);
  } else {
    data = synth(config.data.synth_n, config.data.synth_d, config.data.synth_k,
                 config.data.synth_separation, config.data.synth_seed);
  }
  data.validate();
  return data;
}

std::optional<CellStats> ResultsTable::find(ClassifierKind classifier,
                                            SelectorKind selector) const {
  for (std::size_t c = 0; c < classifiers.size(); ++c)
    for (std::size_t s = 0; s < selectors.size(); ++s)
      if (classifiers[c] == classifier && selectors[s] == selector)
        return cell(c, s);
  return std::nullopt;
}

std::string ResultsTable::to_csv() const {
  std::ostringstream out;
  out << "classifier,selector,mean,std,runs\n";
  for (std::size_t c = 0; c < classifiers.size(); ++c)
    for (std::size_t s = 0; s < selectors.size(); ++s) {
      const CellStats& cs = cell(c, s);
      out << classifier_name(classifiers[c]) << ',' << selector_name(selectors[s])
          << ',' << format_fixed(cs.mean, 6) << ',' << format_fixed(cs.stddev, 6)
          << ',' << cs.runs << '\n';
    }
  return out.str();
}

std::string ResultsTable::to_text() const {
  std::ostringstream out;
  const int name_width = 15;
  const int cell_width = 14;
  out << std::string(name_width, ' ');
  for (SelectorKind s : selectors) {
    std::string heading = selector_name(s);
    out << std::string(cell_width - heading.size(), ' ') << heading;
  }
  out << '\n';
  for (std::size_t c = 0; c < classifiers.size(); ++c) {
    std::string row_name = classifier_name(classifiers[c]);
    out << row_name << std::string(name_width - row_name.size(), ' ');
    for (std::size_t s = 0; s < selectors.size(); ++s) {
      const CellStats& cs = cell(c, s);
      std::string text = format_fixed(cs.mean, 3) + "±" + format_fixed(cs.stddev, 3);
      if (cs.failures > 0) text += "(!" + std::to_string(cs.failures) + ")";
      // The ± sign is two bytes; pad on rendered width.
      const std::size_t rendered = text.size() - 1;
      if (rendered < static_cast<std::size_t>(cell_width))
        out << std::string(cell_width - rendered, ' ');
      out << text;
    }
    out << '\n';
  }
  return out.str();
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Dataset data = load_experiment_data(config);
  const Index d = data.cols();

  struct PlannedRun {
    RunSpec spec;
    std::uint64_t base_seed;
    bool capture = false;
  };
  std::vector<PlannedRun> plan;
  for (std::size_t si = 0; si < config.grid.seeds.size(); ++si)
    for (std::size_t fi = 0; fi < config.grid.fractions.size(); ++fi)
      for (SelectorKind selector : config.grid.selectors)
        for (ClassifierKind classifier : config.grid.classifiers) {
          RunSpec spec;
          spec.seed_index = si;
          spec.fraction_index = fi;
          spec.selector = selector;
          spec.classifier = classifier;
          spec.run_seed = derive_run_seed(config.grid.seeds[si], fi, selector,
                                          classifier);
          spec.k = std::max<Index>(
              1, static_cast<Index>(std::llround(config.grid.fractions[fi] *
                                                 static_cast<double>(d))));
          plan.push_back({spec, config.grid.seeds[si], false});
        }

  // Representative runs whose artifacts feed the report: prefer the ngn
  // selector, fall back to the first matching grid point.
  auto mark_first = [&](auto&& predicate) -> long {
    long fallback = -1;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (!predicate(plan[i].spec)) continue;
      if (plan[i].spec.selector == SelectorKind::ngn) {
        plan[i].capture = true;
        return static_cast<long>(i);
      }
      if (fallback < 0) fallback = static_cast<long>(i);
    }
    if (fallback >= 0) plan[static_cast<std::size_t>(fallback)].capture = true;
    return fallback;
  };
  const long pso_rep = mark_first([](const RunSpec& s) {
    return s.classifier == ClassifierKind::pso_fuzzy_xgb;
  });
  const long ngn_rep = mark_first([](const RunSpec& s) {
    return s.selector == SelectorKind::ngn;
  });
  const long fuzzy_rep = mark_first([](const RunSpec& s) {
    return s.classifier == ClassifierKind::fuzzy_xgb ||
           s.classifier == ClassifierKind::pso_fuzzy_xgb;
  });
  std::vector<long> confusion_rep;
  for (ClassifierKind classifier : config.grid.classifiers)
    confusion_rep.push_back(mark_first(
        [classifier](const RunSpec& s) { return s.classifier == classifier; }));

  std::vector<RunResult> results(plan.size());
  auto run_one = [&](std::size_t i) {
    SplitSpec split_spec = config.split;
    split_spec.seed = mix_seed(plan[i].spec.run_seed, kSplitStream);
    try {
      Split parts = split(data, split_spec);
      results[i] = execute_run(parts.train, parts.test, config, plan[i].spec,
                               plan[i].capture);
    } catch (const std::exception& e) {
      results[i].ok = false;
      results[i].error = e.what();
    }
  };

  unsigned workers = config.grid.workers > 0
                         ? static_cast<unsigned>(config.grid.workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(plan.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < plan.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < plan.size();
             i = next.fetch_add(1))
          run_one(i);
      });
    for (auto& t : pool) t.join();
  }

  // Aggregate. Cells pool every (seed, fraction) run; per-fraction rows keep
  // the unpooled view for audit.
  ExperimentOutput out;
  out.feature_names = data.feature_names;
  out.table.classifiers = config.grid.classifiers;
  out.table.selectors = config.grid.selectors;
  out.table.cells.assign(
      config.grid.classifiers.size() * config.grid.selectors.size(), CellStats{});

  const std::size_t n_classifiers = config.grid.classifiers.size();
  const std::size_t n_selectors = config.grid.selectors.size();
  const std::size_t n_fractions = config.grid.fractions.size();
  std::vector<std::vector<double>> cell_values(n_classifiers * n_selectors);
  std::vector<std::vector<double>> fraction_values(n_classifiers * n_selectors *
                                                   n_fractions);

  for (std::size_t i = 0; i < plan.size(); ++i) {
    const RunSpec& spec = plan[i].spec;
    const std::size_t ci = static_cast<std::size_t>(
        std::find(config.grid.classifiers.begin(), config.grid.classifiers.end(),
                  spec.classifier) -
        config.grid.classifiers.begin());
    const std::size_t si = static_cast<std::size_t>(
        std::find(config.grid.selectors.begin(), config.grid.selectors.end(),
                  spec.selector) -
        config.grid.selectors.begin());
    CellStats& cell = out.table.cell(ci, si);
    if (results[i].ok) {
      cell_values[ci * n_selectors + si].push_back(results[i].test_accuracy);
      fraction_values[(ci * n_selectors + si) * n_fractions + spec.fraction_index]
          .push_back(results[i].test_accuracy);
    } else {
      ++cell.failures;
      out.failures.push_back({spec.classifier, spec.selector,
                              plan[i].base_seed,
                              config.grid.fractions[spec.fraction_index],
                              results[i].error});
      std::cerr << "warning: run failed (" << classifier_name(spec.classifier)
                << ", " << selector_name(spec.selector) << ", seed "
                << plan[i].base_seed << "): " << results[i].error << '\n';
    }
  }

  auto mean_std = [](const std::vector<double>& values) {
    CellStats cs;
    cs.runs = static_cast<int>(values.size());
    if (values.empty()) return cs;
    double sum = 0.0;
    for (double v : values) sum += v;
    cs.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - cs.mean) * (v - cs.mean);
    cs.stddev = std::sqrt(ss / static_cast<double>(values.size()));
    return cs;
  };

  for (std::size_t c = 0; c < n_classifiers; ++c)
    for (std::size_t s = 0; s < n_selectors; ++s) {
      CellStats stats = mean_std(cell_values[c * n_selectors + s]);
      stats.failures = out.table.cell(c, s).failures;
      out.table.cell(c, s) = stats;
      for (std::size_t f = 0; f < n_fractions; ++f) {
        CellStats fs =
            mean_std(fraction_values[(c * n_selectors + s) * n_fractions + f]);
        out.per_fraction.push_back({config.grid.classifiers[c],
                                    config.grid.selectors[s],
                                    config.grid.fractions[f], fs.mean, fs.stddev,
                                    fs.runs});
      }
    }

  if (pso_rep >= 0 && results[static_cast<std::size_t>(pso_rep)].ok)
    out.pso_trace = results[static_cast<std::size_t>(pso_rep)].artifacts.pso_trace;
  if (ngn_rep >= 0 && results[static_cast<std::size_t>(ngn_rep)].ok) {
    out.ngn_scores = results[static_cast<std::size_t>(ngn_rep)].artifacts.ngn_scores;
    out.ngn_selected = results[static_cast<std::size_t>(ngn_rep)].selected;
  }
  if (fuzzy_rep >= 0 && results[static_cast<std::size_t>(fuzzy_rep)].ok &&
      results[static_cast<std::size_t>(fuzzy_rep)].artifacts.has_thresholds) {
    const RunArtifacts& art = results[static_cast<std::size_t>(fuzzy_rep)].artifacts;
    out.has_membership = true;
    out.membership_low = art.threshold_low;
    out.membership_high = art.threshold_high;
    out.membership_feature = art.threshold_feature;
  }
  for (std::size_t c = 0; c < confusion_rep.size(); ++c) {
    const long idx = confusion_rep[c];
    if (idx >= 0 && results[static_cast<std::size_t>(idx)].ok)
      out.confusions.push_back(
          {classifier_name(config.grid.classifiers[c]),
           results[static_cast<std::size_t>(idx)].test_confusion});
  }
  return out;
}

}  // namespace gasboost
