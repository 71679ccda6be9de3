#pragma once

#include "gasboost/dataset.hpp"

namespace gasboost {

/// Per-feature tertile cut points. States: 0 at or below t_low, 2 at or
/// above t_high, 1 between; a degenerate feature (t_low == t_high) maps the
/// shared value to state 1.
struct FuzzyThresholds {
  Vector t_low;   // 0.33 quantile
  Vector t_high;  // 0.67 quantile
};

// Interpolated order statistic at position p*(n-1) of the sorted values.
double quantile_linear(std::vector<double> values, double p);

FuzzyThresholds fuzzy_fit(const Matrix& X_train);

// Crisp state matrix over {0,1,2}.
Matrix fuzzy_transform(const Matrix& X, const FuzzyThresholds& thresholds);

struct Membership {
  double low = 0.0;
  double med = 0.0;
  double high = 0.0;
};

// Triangular partition of unity with knots at t_low, the midpoint, and
// t_high. Degenerate thresholds give (0,1,0).
Membership membership(double x, double t_low, double t_high);

void save_thresholds_csv(const FuzzyThresholds& thresholds,
                         const std::vector<std::string>& feature_names,
                         const std::string& path);

}  // namespace gasboost
