#include "gasboost/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gasboost/common.hpp"

namespace gasboost {

double quantile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw Error("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

FuzzyThresholds fuzzy_fit(const Matrix& X_train) {
  if (X_train.rows() == 0) throw Error("fuzzy_fit: empty data");
  FuzzyThresholds thr;
  thr.t_low.resize(X_train.cols());
  thr.t_high.resize(X_train.cols());
  std::vector<double> column(static_cast<std::size_t>(X_train.rows()));
  for (Index j = 0; j < X_train.cols(); ++j) {
    for (Index i = 0; i < X_train.rows(); ++i)
      column[static_cast<std::size_t>(i)] = X_train(i, j);
    thr.t_low(j) = quantile_linear(column, 0.33);
    thr.t_high(j) = quantile_linear(column, 0.67);
  }
  return thr;
}

Matrix fuzzy_transform(const Matrix& X, const FuzzyThresholds& thresholds) {
  if (X.cols() != thresholds.t_low.size())
    throw Error("fuzzy_transform: feature count " + std::to_string(X.cols()) +
                " does not match thresholds (" +
                std::to_string(thresholds.t_low.size()) + ")");
  Matrix states(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    const double lo = thresholds.t_low(j);
    const double hi = thresholds.t_high(j);
    for (Index i = 0; i < X.rows(); ++i) {
      const double x = X(i, j);
      double s;
      if (lo == hi)
        s = x < lo ? 0.0 : (x > hi ? 2.0 : 1.0);
      else
        s = x <= lo ? 0.0 : (x >= hi ? 2.0 : 1.0);
      states(i, j) = s;
    }
  }
  return states;
}

Membership membership(double x, double t_low, double t_high) {
  if (t_low > t_high) throw Error("membership: t_low exceeds t_high");
  if (t_low == t_high) return {0.0, 1.0, 0.0};
  const double a = t_low;
  const double b = t_high;
  const double m = 0.5 * (a + b);
  Membership mu;
  if (x <= a) {
    mu.low = 1.0;
  } else if (x < m) {
    mu.low = (m - x) / (m - a);
    mu.med = (x - a) / (m - a);
  } else if (x == m) {
    mu.med = 1.0;
  } else if (x < b) {
    mu.med = (b - x) / (b - m);
    mu.high = (x - m) / (b - m);
  } else {
    mu.high = 1.0;
  }
  return mu;
}

void save_thresholds_csv(const FuzzyThresholds& thresholds,
                         const std::vector<std::string>& feature_names,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "feature,t_low,t_high\n";
  for (Index j = 0; j < thresholds.t_low.size(); ++j) {
    out << feature_names[static_cast<std::size_t>(j)] << ','
        << format_double(thresholds.t_low(j)) << ','
        << format_double(thresholds.t_high(j)) << '\n';
  }
}

}  // namespace gasboost
