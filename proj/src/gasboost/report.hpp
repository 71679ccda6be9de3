#pragma once

#include <string>
#include <vector>

#include "gasboost/experiment.hpp"

namespace gasboost {

/// Artifact file names are fixed once the config hash tag is known, so a
/// rerun of the same config reproduces the same files byte for byte.
struct ArtifactPaths {
  std::string out_dir;
  std::string tag;

  std::string results_csv() const;
  std::string results_txt() const;
  std::string per_fraction_csv() const;
  std::string failures_csv() const;
  std::string manifest() const;
  std::string confusion_csv(const std::string& classifier) const;
  std::string pso_trace_csv() const;
  std::string pso_trace_svg() const;
  std::string ngn_scores_csv() const;
  std::string ngn_scores_svg() const;
  std::string membership_csv() const;
  std::string membership_svg() const;
};

ArtifactPaths artifact_paths(const std::string& out_dir, const std::string& tag);

// Writes every report artifact for a finished experiment: results table
// (CSV + aligned text), per-classifier confusion matrices, PSO best-cost
// trace (CSV + SVG), feature-score chart (CSV + SVG), membership-function
// samples (CSV + SVG), per-fraction breakdown, failure log, manifest.
void write_artifacts(const ExperimentOutput& output,
                     const ExperimentConfig& config,
                     const std::string& out_dir);

// Re-renders derived artifacts (text table and SVG plots) from the CSVs in
// a results directory.
void render_report_dir(const std::string& results_dir);

// Minimal deterministic SVG charts.
void svg_line_chart(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<double>& xs,
                    const std::vector<double>& ys);
void svg_bar_chart(const std::string& path, const std::string& title,
                   const std::vector<std::string>& labels,
                   const std::vector<double>& values,
                   const std::vector<bool>& highlighted);
void svg_membership_chart(const std::string& path, const std::string& title,
                          const std::vector<double>& xs,
                          const std::vector<double>& mu_low,
                          const std::vector<double>& mu_med,
                          const std::vector<double>& mu_high);

}  // namespace gasboost
