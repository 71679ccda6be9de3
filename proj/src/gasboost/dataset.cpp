#include "gasboost/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gasboost/common.hpp"
#include "gasboost/rng.hpp"

namespace gasboost {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc{} && res.ptr == end && !s.empty();
}

}  // namespace

void Dataset::validate() const {
  if (rows() == 0) throw Error("dataset is empty");
  if (static_cast<Index>(labels.size()) != rows())
    throw Error("label count " + std::to_string(labels.size()) +
                " does not match row count " + std::to_string(rows()));
  if (n_classes < 2) throw Error("dataset needs at least 2 classes");
  std::vector<Index> counts(static_cast<std::size_t>(n_classes), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int y = labels[i];
    if (y < 0 || y >= n_classes)
      throw Error("label " + std::to_string(y) + " at row " +
                  std::to_string(i) + " outside 0.." +
                  std::to_string(n_classes - 1));
    ++counts[static_cast<std::size_t>(y)];
  }
  for (int k = 0; k < n_classes; ++k)
    if (counts[static_cast<std::size_t>(k)] == 0)
      throw Error("class " + std::to_string(k) + " has no samples");
  if (!features.allFinite()) {
    for (Index i = 0; i < rows(); ++i)
      for (Index j = 0; j < cols(); ++j)
        if (!std::isfinite(features(i, j)))
          throw Error("non-finite value at row " + std::to_string(i) +
                      ", column '" + feature_names[static_cast<std::size_t>(j)] +
                      "'");
  }
  if (static_cast<Index>(feature_names.size()) != cols())
    throw Error("feature name count does not match column count");
}

Dataset Dataset::subset(const std::vector<Index>& row_idx) const {
  Dataset out;
  out.features.resize(static_cast<Index>(row_idx.size()), cols());
  out.labels.reserve(row_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    out.features.row(static_cast<Index>(i)) = features.row(row_idx[i]);
    out.labels.push_back(labels[static_cast<std::size_t>(row_idx[i])]);
  }
  out.feature_names = feature_names;
  out.n_classes = n_classes;
  return out;
}

Dataset Dataset::with_features(Matrix new_features,
                               std::vector<std::string> names) const {
  if (new_features.rows() != rows())
    throw Error("with_features: row count changed");
  Dataset out;
  out.features = std::move(new_features);
  out.labels = labels;
  out.feature_names = std::move(names);
  out.n_classes = n_classes;
  return out;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error("'" + path + "' is empty");
  std::vector<std::string> header = split_line(line);

  Index label_col = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "label") {
      if (label_col >= 0) throw Error("duplicate label column in '" + path + "'");
      label_col = static_cast<Index>(j);
    }
  }
  if (label_col < 0) throw Error("label column not found in '" + path + "'");

  Dataset data;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<Index>(j) != label_col) data.feature_names.push_back(header[j]);
  const Index d = static_cast<Index>(data.feature_names.size());

  std::vector<double> values;
  std::size_t file_line = 1;
  while (std::getline(in, line)) {
    ++file_line;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size())
      throw Error("row at line " + std::to_string(file_line) + " has " +
                  std::to_string(cells.size()) + " cells, expected " +
                  std::to_string(header.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v;
      if (!parse_double(cells[j], v))
        throw Error("non-numeric cell '" + cells[j] + "' at line " +
                    std::to_string(file_line) + ", column '" + header[j] + "'");
      if (static_cast<Index>(j) == label_col) {
        if (v != std::floor(v))
          throw Error("label '" + cells[j] + "' at line " +
                      std::to_string(file_line) + " is not an integer");
        data.labels.push_back(static_cast<int>(v));
      } else {
        if (!std::isfinite(v))
          throw Error("non-finite value at line " + std::to_string(file_line) +
                      ", column '" + header[j] + "'");
        values.push_back(v);
      }
    }
  }
  if (data.labels.empty()) throw Error("'" + path + "' has no data rows");

  const Index n = static_cast<Index>(data.labels.size());
  data.features.resize(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j)
      data.features(i, j) = values[static_cast<std::size_t>(i * d + j)];

  int max_label = *std::max_element(data.labels.begin(), data.labels.end());
  int min_label = *std::min_element(data.labels.begin(), data.labels.end());
  if (min_label < 0) throw Error("negative label in '" + path + "'");
  data.n_classes = max_label + 1;
  data.validate();
  return data;
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  for (std::size_t j = 0; j < data.feature_names.size(); ++j)
    out << data.feature_names[j] << ',';
  out << "label\n";
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.cols(); ++j)
      out << format_double(data.features(i, j)) << ',';
    out << data.labels[static_cast<std::size_t>(i)] << '\n';
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

StandardizerModel fit_standardizer(const Matrix& train) {
  if (train.rows() == 0) throw Error("cannot fit standardizer on empty data");
  StandardizerModel m;
  const double n = static_cast<double>(train.rows());
  m.means = train.colwise().sum() / n;
  m.stds.resize(train.cols());
  for (Index j = 0; j < train.cols(); ++j) {
    double var = (train.col(j).array() - m.means(j)).square().sum() / n;
    m.stds(j) = std::max(std::sqrt(var), StandardizerModel::kStdFloor);
  }
  return m;
}

Matrix apply_standardizer(const StandardizerModel& model, const Matrix& data) {
  if (data.cols() != model.means.size())
    throw Error("standardizer dimension mismatch");
  return (data.rowwise() - model.means.transpose()).array().rowwise() /
         model.stds.transpose().array();
}

Dataset apply_standardizer(const StandardizerModel& model, const Dataset& data) {
  Dataset out = data;
  out.features = apply_standardizer(model, data.features);
  return out;
}

Split split(const Dataset& data, const SplitSpec& spec) {
  if (spec.train_ratio <= 0.0 || spec.train_ratio >= 1.0)
    throw Error("train_ratio must lie in (0,1)");
  const Index n = data.rows();
  const Index n_train = static_cast<Index>(std::llround(spec.train_ratio * static_cast<double>(n)));
  if (n_train <= 0 || n_train >= n)
    throw Error("split of " + std::to_string(n) + " rows at ratio " +
                format_double(spec.train_ratio) + " leaves an empty side");

  std::vector<Index> train_idx, test_idx;
  if (!spec.stratified) {
    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    Rng rng(spec.seed);
    rng.shuffle(idx.begin(), idx.end());
    train_idx.assign(idx.begin(), idx.begin() + n_train);
    test_idx.assign(idx.begin() + n_train, idx.end());
  } else {
    const int K = data.n_classes;
    std::vector<std::vector<Index>> by_class(static_cast<std::size_t>(K));
    for (Index i = 0; i < n; ++i)
      by_class[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(i)])].push_back(i);
    for (int k = 0; k < K; ++k)
      if (by_class[static_cast<std::size_t>(k)].size() < 2)
        throw Error("stratified split needs >= 2 samples of class " +
                    std::to_string(k));

    // Largest-remainder allocation: per-class take = floor(ratio*n_k), then
    // hand out the shortfall to the largest fractional parts so the total is
    // exactly n_train and no class is off by more than one sample.
    std::vector<Index> take(static_cast<std::size_t>(K));
    std::vector<std::pair<double, int>> rem;
    Index assigned = 0;
    for (int k = 0; k < K; ++k) {
      double exact = spec.train_ratio *
                     static_cast<double>(by_class[static_cast<std::size_t>(k)].size());
      take[static_cast<std::size_t>(k)] = static_cast<Index>(std::floor(exact));
      rem.push_back({exact - std::floor(exact), k});
      assigned += take[static_cast<std::size_t>(k)];
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (Index extra = n_train - assigned; extra > 0; --extra) {
      int k = rem[static_cast<std::size_t>(n_train - assigned - extra)].second;
      ++take[static_cast<std::size_t>(k)];
    }
    // Keep at least one sample of every class on each side.
    for (int k = 0; k < K; ++k) {
      auto nk = static_cast<Index>(by_class[static_cast<std::size_t>(k)].size());
      take[static_cast<std::size_t>(k)] =
          std::clamp(take[static_cast<std::size_t>(k)], Index{1}, nk - 1);
    }
    Index total = std::accumulate(take.begin(), take.end(), Index{0});
    for (int k = 0; total != n_train && k < K; k = (k + 1) % K) {
      auto nk = static_cast<Index>(by_class[static_cast<std::size_t>(k)].size());
      Index& t = take[static_cast<std::size_t>(k)];
      if (total < n_train && t < nk - 1) { ++t; ++total; }
      else if (total > n_train && t > 1) { --t; --total; }
    }

    for (int k = 0; k < K; ++k) {
      auto& idx = by_class[static_cast<std::size_t>(k)];
      Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(k)));
      rng.shuffle(idx.begin(), idx.end());
      train_idx.insert(train_idx.end(), idx.begin(),
                       idx.begin() + take[static_cast<std::size_t>(k)]);
      test_idx.insert(test_idx.end(), idx.begin() + take[static_cast<std::size_t>(k)],
                      idx.end());
    }
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return Split{data.subset(train_idx), data.subset(test_idx)};
}

Dataset synth(Index n, Index d, int n_classes, double separation,
              std::uint64_t seed) {
  if (n_classes < 2) throw Error("synth needs at least 2 classes");
  if (n < n_classes) throw Error("synth needs n >= n_classes");
  if (d < 1) throw Error("synth needs d >= 1");

  const int K = n_classes;
  Matrix centers = Matrix::Zero(K, d);
  if (d >= static_cast<Index>(K)) {
    // Each class center sits `separation` along its own axis.
    for (int k = 0; k < K; ++k) centers(k, k) = separation;
  } else if (d == 1) {
    for (int k = 0; k < K; ++k) centers(k, 0) = separation * k;
  } else {
    // Centers on a circle of radius `separation`.
    for (int k = 0; k < K; ++k) {
      centers(k, 0) = separation * std::cos(2.0 * M_PI * k / K);
      centers(k, 1) = separation * std::sin(2.0 * M_PI * k / K);
    }
  }

  Dataset data;
  data.n_classes = K;
  data.features.resize(n, d);
  data.labels.resize(static_cast<std::size_t>(n));
  Rng rng(seed);
  for (Index i = 0; i < n; ++i) {
    int k = static_cast<int>(i % K);
    data.labels[static_cast<std::size_t>(i)] = k;
    for (Index j = 0; j < d; ++j)
      data.features(i, j) = centers(k, j) + rng.gaussian();
  }
  for (Index j = 0; j < d; ++j)
    data.feature_names.push_back("f" + std::to_string(j + 1));
  return data;
}

}  // namespace gasboost
