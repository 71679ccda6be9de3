#include "gasboost/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gasboost/common.hpp"
#include "gasboost/fuzzy.hpp"

namespace fs = std::filesystem;

namespace gasboost {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path + "'");
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

// --- chart scaffolding -----------------------------------------------------

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

struct Scale {
  double lo, hi;
  int pixel_lo, pixel_hi;
  double at(double v) const {
    if (hi == lo) return 0.5 * (pixel_lo + pixel_hi);
    return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }
};

std::string svg_header(const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  return out.str();
}

void append_axes(std::ostringstream& out, const Scale& x, const Scale& y,
                 const std::string& x_label, const std::string& y_label) {
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
      << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\""
      << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
      << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom
      << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double fx = x.lo + (x.hi - x.lo) * tick / 4.0;
    const double fy = y.lo + (y.hi - y.lo) * tick / 4.0;
    const double px = x.at(fx);
    const double py = y.at(fy);
    out << "<line x1=\"" << format_fixed(px, 1) << "\" y1=\""
        << kHeight - kMarginBottom << "\" x2=\"" << format_fixed(px, 1)
        << "\" y2=\"" << kHeight - kMarginBottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_fixed(px, 1) << "\" y=\""
        << kHeight - kMarginBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << format_fixed(fx, 3) << "</text>\n";
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << format_fixed(py, 1)
        << "\" x2=\"" << kMarginLeft << "\" y2=\"" << format_fixed(py, 1)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << format_fixed(py + 4, 1)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_fixed(fy, 3) << "</text>\n";
  }
  out << "<text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2 << "\" y=\""
      << kHeight - 8 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (kMarginTop + kHeight - kMarginBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 "
      << (kMarginTop + kHeight - kMarginBottom) / 2 << ")\">" << y_label
      << "</text>\n";
}

std::string polyline(const Scale& x, const Scale& y,
                     const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& color) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ' ';
    out << format_fixed(x.at(xs[i]), 1) << ',' << format_fixed(y.at(ys[i]), 1);
  }
  out << "\"/>\n";
  return out.str();
}

Scale x_scale(double lo, double hi) {
  return {lo, hi, kMarginLeft, kWidth - kMarginRight};
}
Scale y_scale(double lo, double hi) {
  if (hi == lo) hi = lo + 1.0;
  return {lo, hi, kHeight - kMarginBottom, kMarginTop};
}

}  // namespace

void svg_line_chart(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size())
    throw Error("svg_line_chart: bad series");
  const auto [x_min, x_max] = std::minmax_element(xs.begin(), xs.end());
  const auto [y_min, y_max] = std::minmax_element(ys.begin(), ys.end());
  const Scale x = x_scale(*x_min, *x_max);
  const Scale y = y_scale(*y_min, *y_max);
  std::ostringstream out;
  out << svg_header(title);
  append_axes(out, x, y, x_label, y_label);
  out << polyline(x, y, xs, ys, "#1f6fb2");
  out << "</svg>\n";
  write_file(path, out.str());
}

void svg_bar_chart(const std::string& path, const std::string& title,
                   const std::vector<std::string>& labels,
                   const std::vector<double>& values,
                   const std::vector<bool>& highlighted) {
  if (values.empty() || labels.size() != values.size())
    throw Error("svg_bar_chart: bad series");
  const double v_max = *std::max_element(values.begin(), values.end());
  const Scale y = y_scale(0.0, v_max > 0 ? v_max : 1.0);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double step = plot_w / static_cast<double>(values.size());
  const double bar_w = step * 0.8;
  std::ostringstream out;
  out << svg_header(title);
  const Scale x = x_scale(0.0, static_cast<double>(values.size()));
  append_axes(out, x, y, "feature", "score");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double left = kMarginLeft + step * static_cast<double>(i) + step * 0.1;
    const double top = y.at(values[i]);
    const double height = (kHeight - kMarginBottom) - top;
    const bool hl = i < highlighted.size() && highlighted[i];
    out << "<rect x=\"" << format_fixed(left, 1) << "\" y=\""
        << format_fixed(top, 1) << "\" width=\"" << format_fixed(bar_w, 1)
        << "\" height=\"" << format_fixed(height, 1) << "\" fill=\""
        << (hl ? "#d9781e" : "#1f6fb2") << "\"/>\n";
    if (values.size() <= 40) {
      out << "<text x=\"" << format_fixed(left + bar_w / 2, 1) << "\" y=\""
          << kHeight - kMarginBottom + 30
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"9\" transform=\"rotate(45 "
          << format_fixed(left + bar_w / 2, 1) << ' '
          << kHeight - kMarginBottom + 30 << ")\">" << labels[i] << "</text>\n";
    }
  }
  out << "</svg>\n";
  write_file(path, out.str());
}

void svg_membership_chart(const std::string& path, const std::string& title,
                          const std::vector<double>& xs,
                          const std::vector<double>& mu_low,
                          const std::vector<double>& mu_med,
                          const std::vector<double>& mu_high) {
  if (xs.empty()) throw Error("svg_membership_chart: empty series");
  const auto [x_min, x_max] = std::minmax_element(xs.begin(), xs.end());
  const Scale x = x_scale(*x_min, *x_max);
  const Scale y = y_scale(0.0, 1.0);
  std::ostringstream out;
  out << svg_header(title);
  append_axes(out, x, y, "feature value", "membership");
  out << polyline(x, y, xs, mu_low, "#1f6fb2");
  out << polyline(x, y, xs, mu_med, "#2e9e4f");
  out << polyline(x, y, xs, mu_high, "#d9781e");
  const char* names[3] = {"low", "medium", "high"};
  const char* colors[3] = {"#1f6fb2", "#2e9e4f", "#d9781e"};
  for (int i = 0; i < 3; ++i) {
    const int lx = kWidth - kMarginRight - 170 + i * 60;
    out << "<rect x=\"" << lx << "\" y=\"30\" width=\"10\" height=\"10\" fill=\""
        << colors[i] << "\"/>\n";
    out << "<text x=\"" << lx + 14 << "\" y=\"39\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << names[i] << "</text>\n";
  }
  out << "</svg>\n";
  write_file(path, out.str());
}

// --- artifact paths ----------------------------------------------------------

std::string ArtifactPaths::results_csv() const { return join(out_dir, "results_" + tag + ".csv"); }
std::string ArtifactPaths::results_txt() const { return join(out_dir, "results_" + tag + ".txt"); }
std::string ArtifactPaths::per_fraction_csv() const { return join(out_dir, "per_fraction_" + tag + ".csv"); }
std::string ArtifactPaths::failures_csv() const { return join(out_dir, "failures_" + tag + ".csv"); }
std::string ArtifactPaths::manifest() const { return join(out_dir, "manifest_" + tag + ".txt"); }
std::string ArtifactPaths::confusion_csv(const std::string& classifier) const {
  return join(out_dir, "confusion_" + classifier + "_" + tag + ".csv");
}
std::string ArtifactPaths::pso_trace_csv() const { return join(out_dir, "pso_trace_" + tag + ".csv"); }
std::string ArtifactPaths::pso_trace_svg() const { return join(out_dir, "pso_trace_" + tag + ".svg"); }
std::string ArtifactPaths::ngn_scores_csv() const { return join(out_dir, "ngn_scores_" + tag + ".csv"); }
std::string ArtifactPaths::ngn_scores_svg() const { return join(out_dir, "ngn_scores_" + tag + ".svg"); }
std::string ArtifactPaths::membership_csv() const { return join(out_dir, "membership_" + tag + ".csv"); }
std::string ArtifactPaths::membership_svg() const { return join(out_dir, "membership_" + tag + ".svg"); }

ArtifactPaths artifact_paths(const std::string& out_dir, const std::string& tag) {
  return ArtifactPaths{out_dir, tag};
}

namespace {

void render_pso_svg(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_cells(line);
    if (cells.size() < 2) continue;
    xs.push_back(std::stod(cells[0]));
    ys.push_back(std::stod(cells[1]));
  }
  if (!xs.empty())
    svg_line_chart(svg_path, "Best cost over swarm iterations", "iteration",
                   "best cost", xs, ys);
}

void render_scores_svg(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  std::string line;
  std::getline(in, line);
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<bool> selected;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_cells(line);
    if (cells.size() < 4) continue;
    labels.push_back(cells[1]);
    values.push_back(std::stod(cells[2]));
    selected.push_back(cells[3] == "1");
  }
  if (!values.empty())
    svg_bar_chart(svg_path, "Codebook feature scores", labels, values, selected);
}

void render_membership_svg(const std::string& csv_path,
                           const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  std::string line;
  std::getline(in, line);
  std::vector<double> xs, lo, med, hi;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_cells(line);
    if (cells.size() < 4) continue;
    xs.push_back(std::stod(cells[0]));
    lo.push_back(std::stod(cells[1]));
    med.push_back(std::stod(cells[2]));
    hi.push_back(std::stod(cells[3]));
  }
  if (!xs.empty())
    svg_membership_chart(svg_path, "Membership functions", xs, lo, med, hi);
}

}  // namespace

void write_artifacts(const ExperimentOutput& output,
                     const ExperimentConfig& config,
                     const std::string& out_dir) {
  fs::create_directories(out_dir);
  ArtifactPaths paths = artifact_paths(out_dir, config.hash_tag());
  std::vector<std::string> written;

  write_file(paths.results_csv(), output.table.to_csv());
  written.push_back(paths.results_csv());
  write_file(paths.results_txt(), output.table.to_text());
  written.push_back(paths.results_txt());

  {
    std::ostringstream out;
    out << "classifier,selector,fraction,mean,std,runs\n";
    for (const FractionRow& row : output.per_fraction)
      out << classifier_name(row.classifier) << ',' << selector_name(row.selector)
          << ',' << format_double(row.fraction) << ',' << format_fixed(row.mean, 6)
          << ',' << format_fixed(row.stddev, 6) << ',' << row.runs << '\n';
    write_file(paths.per_fraction_csv(), out.str());
    written.push_back(paths.per_fraction_csv());
  }

  if (!output.failures.empty()) {
    std::ostringstream out;
    out << "classifier,selector,seed,fraction,error\n";
    for (const FailureRow& row : output.failures)
      out << classifier_name(row.classifier) << ',' << selector_name(row.selector)
          << ',' << row.seed << ',' << format_double(row.fraction) << ",\""
          << row.error << "\"\n";
    write_file(paths.failures_csv(), out.str());
    written.push_back(paths.failures_csv());
  }

  for (const auto& [name, cm] : output.confusions) {
    std::ostringstream out;
    const int K = static_cast<int>(cm.counts.rows());
    out << "true_class";
    for (int c = 0; c < K; ++c) out << ",pred_" << c;
    out << '\n';
    for (int r = 0; r < K; ++r) {
      out << r;
      for (int c = 0; c < K; ++c) out << ',' << cm.counts(r, c);
      out << '\n';
    }
    write_file(paths.confusion_csv(name), out.str());
    written.push_back(paths.confusion_csv(name));
  }

  if (!output.pso_trace.empty()) {
    std::ostringstream out;
    out << "iteration,best_cost\n";
    for (std::size_t i = 0; i < output.pso_trace.size(); ++i)
      out << (i + 1) << ',' << format_double(output.pso_trace[i]) << '\n';
    write_file(paths.pso_trace_csv(), out.str());
    written.push_back(paths.pso_trace_csv());
    render_pso_svg(paths.pso_trace_csv(), paths.pso_trace_svg());
    written.push_back(paths.pso_trace_svg());
  }

  if (output.ngn_scores.size() > 0) {
    std::ostringstream out;
    out << "feature_index,feature_name,score,selected\n";
    std::vector<bool> selected(static_cast<std::size_t>(output.ngn_scores.size()),
                               false);
    for (Index idx : output.ngn_selected)
      selected[static_cast<std::size_t>(idx)] = true;
    for (Index j = 0; j < output.ngn_scores.size(); ++j)
      out << j << ',' << output.feature_names[static_cast<std::size_t>(j)] << ','
          << format_double(output.ngn_scores(j)) << ','
          << (selected[static_cast<std::size_t>(j)] ? 1 : 0) << '\n';
    write_file(paths.ngn_scores_csv(), out.str());
    written.push_back(paths.ngn_scores_csv());
    render_scores_svg(paths.ngn_scores_csv(), paths.ngn_scores_svg());
    written.push_back(paths.ngn_scores_svg());
  }

  if (output.has_membership) {
    const double a = output.membership_low;
    const double b = output.membership_high;
    const double span = b > a ? b - a : 1.0;
    const double start = a - 0.25 * span;
    const double stop = b + 0.25 * span;
    std::ostringstream out;
    out << "x,mu_low,mu_med,mu_high\n";
    const int samples = 201;
    for (int i = 0; i < samples; ++i) {
      const double x = start + (stop - start) * i / (samples - 1);
      const Membership mu = membership(x, a, b);
      out << format_double(x) << ',' << format_double(mu.low) << ','
          << format_double(mu.med) << ',' << format_double(mu.high) << '\n';
    }
    write_file(paths.membership_csv(), out.str());
    written.push_back(paths.membership_csv());
    render_membership_svg(paths.membership_csv(), paths.membership_svg());
    written.push_back(paths.membership_svg());
  }

  {
    std::ostringstream out;
    out << "config hash: " << paths.tag << "\n\nartifacts:\n";
    for (const std::string& file : written)
      out << "  " << fs::path(file).filename().string() << '\n';
    out << "\nconfig:\n" << config.canonical_text();
    write_file(paths.manifest(), out.str());
  }
}

void render_report_dir(const std::string& results_dir) {
  if (!fs::is_directory(results_dir))
    throw Error("'" + results_dir + "' is not a directory");
  bool found = false;
  std::vector<fs::path> entries;
  for (const auto& entry : fs::directory_iterator(results_dir))
    entries.push_back(entry.path());
  std::sort(entries.begin(), entries.end());
  for (const auto& path : entries) {
    const std::string name = path.filename().string();
    if (name.ends_with(".csv") && name.starts_with("pso_trace_")) {
      render_pso_svg(path.string(),
                     (path.parent_path() / (name.substr(0, name.size() - 4) + ".svg")).string());
      found = true;
    } else if (name.ends_with(".csv") && name.starts_with("ngn_scores_")) {
      render_scores_svg(path.string(),
                        (path.parent_path() / (name.substr(0, name.size() - 4) + ".svg")).string());
      found = true;
    } else if (name.ends_with(".csv") && name.starts_with("membership_")) {
      render_membership_svg(path.string(),
                            (path.parent_path() / (name.substr(0, name.size() - 4) + ".svg")).string());
      found = true;
    } else if (name.ends_with(".csv") && name.starts_with("results_")) {
      // Rebuild the aligned text table from the results CSV.
      std::ifstream in(path);
      std::string line;
      std::getline(in, line);
      ResultsTable table;
      std::vector<std::tuple<std::string, std::string, CellStats>> rows;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_cells(line);
        if (cells.size() < 5) continue;
        CellStats cs;
        cs.mean = std::stod(cells[2]);
        cs.stddev = std::stod(cells[3]);
        cs.runs = std::stoi(cells[4]);
        rows.push_back({cells[0], cells[1], cs});
      }
      for (const auto& [cls, sel, cs] : rows) {
        ClassifierKind ck = classifier_from_name(cls);
        SelectorKind sk = selector_from_name(sel);
        if (std::find(table.classifiers.begin(), table.classifiers.end(), ck) ==
            table.classifiers.end())
          table.classifiers.push_back(ck);
        if (std::find(table.selectors.begin(), table.selectors.end(), sk) ==
            table.selectors.end())
          table.selectors.push_back(sk);
      }
      table.cells.assign(table.classifiers.size() * table.selectors.size(),
                         CellStats{});
      for (const auto& [cls, sel, cs] : rows) {
        auto ci = static_cast<std::size_t>(
            std::find(table.classifiers.begin(), table.classifiers.end(),
                      classifier_from_name(cls)) -
            table.classifiers.begin());
        auto si = static_cast<std::size_t>(
            std::find(table.selectors.begin(), table.selectors.end(),
                      selector_from_name(sel)) -
            table.selectors.begin());
        table.cell(ci, si) = cs;
      }
      const std::string txt_path =
          (path.parent_path() / (name.substr(0, name.size() - 4) + ".txt")).string();
      write_file(txt_path, table.to_text());
      found = true;
    }
  }
  if (!found)
    throw Error("no report CSVs found in '" + results_dir + "'");
}

}  // namespace gasboost
