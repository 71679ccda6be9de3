#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "gasboost/baselines.hpp"
#include "gasboost/common.hpp"
#include "gasboost/dataset.hpp"

using namespace gasboost;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("load_csv reads features and labels in header order") {
  const std::string path = write_temp(
      "gb_basic.csv", "f1,f2,label\n1.0,2.0,0\n3.0,4.0,1\n5.0,6.0,1\n");
  Dataset data = load_csv(path);
  CHECK(data.rows() == 3);
  CHECK(data.cols() == 2);
  CHECK(data.n_classes == 2);
  CHECK(data.features(0, 0) == 1.0);
  CHECK(data.features(2, 1) == 6.0);
  CHECK(data.labels == std::vector<int>{0, 1, 1});
  CHECK(data.feature_names == std::vector<std::string>{"f1", "f2"});
}

TEST_CASE("load_csv accepts the label column anywhere") {
  const std::string path = write_temp(
      "gb_mid_label.csv", "f1,label,f2\n1.0,0,2.0\n3.0,1,4.0\n");
  Dataset data = load_csv(path);
  CHECK(data.cols() == 2);
  CHECK(data.features(0, 1) == 2.0);
  CHECK(data.labels == std::vector<int>{0, 1});
}

TEST_CASE("load_csv error cases carry locations") {
  CHECK_THROWS_WITH_AS(load_csv(write_temp("gb_nolabel.csv", "a,b\n1,2\n")),
                       doctest::Contains("label column not found"), Error);
  CHECK_THROWS_WITH_AS(
      load_csv(write_temp("gb_badcell.csv", "f1,label\nx,0\n")),
      doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(
      load_csv(write_temp("gb_badcell2.csv", "f1,label\n1,0\nbad,1\n")),
      doctest::Contains("column 'f1'"), Error);
  CHECK_THROWS_AS(load_csv(write_temp("gb_empty.csv", "")), Error);
  CHECK_THROWS_WITH_AS(
      load_csv(write_temp("gb_gap.csv", "f1,label\n1,0\n2,3\n")),
      doctest::Contains("class 1 has no samples"), Error);
  CHECK_THROWS_WITH_AS(
      load_csv(write_temp("gb_neg.csv", "f1,label\n1,-1\n2,0\n")),
      doctest::Contains("negative label"), Error);
}

TEST_CASE("save then load round-trips exactly") {
  Dataset data = synth(40, 3, 4, 2.5, 11);
  const std::string path =
      (std::filesystem::temp_directory_path() / "gb_roundtrip.csv").string();
  save_csv(data, path);
  Dataset back = load_csv(path);
  REQUIRE(back.rows() == data.rows());
  REQUIRE(back.cols() == data.cols());
  CHECK(back.labels == data.labels);
  CHECK(back.feature_names == data.feature_names);
  // Shortest round-trip formatting reproduces every double bit for bit.
  CHECK(back.features == data.features);
}

TEST_CASE("standardizer matches the hand z-score oracle") {
  Matrix X(3, 1);
  X << 1.0, 2.0, 3.0;
  StandardizerModel model = fit_standardizer(X);
  Matrix Z = apply_standardizer(model, X);
  CHECK(Z(0, 0) == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(Z(1, 0) == doctest::Approx(0.0));
  CHECK(Z(2, 0) == doctest::Approx(1.2247).epsilon(1e-4));
}

TEST_CASE("constant column maps to zeros through the std floor") {
  Matrix X(3, 1);
  X << 5.0, 5.0, 5.0;
  Matrix Z = apply_standardizer(fit_standardizer(X), X);
  CHECK(Z.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transformed train columns have mean 0 and unit std") {
  Dataset data = synth(120, 6, 3, 2.0, 3);
  StandardizerModel model = fit_standardizer(data.features);
  Matrix Z = apply_standardizer(model, data.features);
  for (Index j = 0; j < Z.cols(); ++j) {
    const double mean = Z.col(j).mean();
    const double var = (Z.col(j).array() - mean).square().sum() / Z.rows();
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("standardizing already-standardized data is the identity") {
  Dataset data = synth(80, 4, 2, 1.5, 5);
  Matrix Z = apply_standardizer(fit_standardizer(data.features), data.features);
  Matrix Z2 = apply_standardizer(fit_standardizer(Z), Z);
  CHECK((Z - Z2).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("test data is transformed with train statistics") {
  Matrix train(2, 1), test(1, 1);
  train << 0.0, 2.0;  // mean 1, std 1
  test << 5.0;
  StandardizerModel model = fit_standardizer(train);
  CHECK(apply_standardizer(model, test)(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("split yields 7 train / 3 test on ten rows") {
  Dataset data = synth(10, 2, 2, 3.0, 1);
  Split parts = split(data, {0.7, 9, true});
  CHECK(parts.train.rows() == 7);
  CHECK(parts.test.rows() == 3);
}

TEST_CASE("split is deterministic per seed and partitions the rows") {
  Dataset data = synth(57, 3, 3, 2.0, 21);
  SplitSpec spec{0.7, 1234, true};
  Split a = split(data, spec);
  Split b = split(data, spec);
  CHECK(a.train.features == b.train.features);
  CHECK(a.test.features == b.test.features);

  // Feature-0 values are continuous draws, effectively unique row ids.
  std::multiset<double> all, got;
  for (Index i = 0; i < data.rows(); ++i) all.insert(data.features(i, 0));
  for (Index i = 0; i < a.train.rows(); ++i) got.insert(a.train.features(i, 0));
  for (Index i = 0; i < a.test.rows(); ++i) got.insert(a.test.features(i, 0));
  CHECK(all == got);
}

TEST_CASE("stratified split keeps class proportions within one sample") {
  Dataset data = synth(100, 4, 4, 3.0, 8);  // 25 rows per class
  Split parts = split(data, {0.7, 3, true});
  REQUIRE(parts.train.rows() == 70);
  std::vector<int> counts(4, 0);
  for (int label : parts.train.labels) ++counts[static_cast<std::size_t>(label)];
  for (int c : counts) CHECK((c == 17 || c == 18));
}

TEST_CASE("stratified split rejects a class with fewer than two samples") {
  Dataset data = synth(9, 2, 2, 3.0, 1);
  data.labels.assign(9, 0);
  data.labels[0] = 1;
  CHECK_THROWS_AS(split(data, {0.7, 1, true}), Error);
}

TEST_CASE("synth produces the requested shape with every class present") {
  Dataset data = synth(200, 25, 4, 3.0, 7);
  CHECK(data.rows() == 200);
  CHECK(data.cols() == 25);
  std::set<int> seen(data.labels.begin(), data.labels.end());
  CHECK(seen == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("synth with identical arguments is byte-identical") {
  Dataset a = synth(64, 7, 3, 2.0, 99);
  Dataset b = synth(64, 7, 3, 2.0, 99);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);
}

TEST_CASE("well-separated synth data is learnable by an unlimited-depth tree") {
  Dataset data = synth(300, 10, 4, 5.0, 17);
  Split parts = split(data, {0.7, 4, true});
  CartModel tree = cart_fit(parts.train.features, parts.train.labels,
                            parts.train.n_classes, CartConfig{});
  const double acc = [&] {
    std::vector<int> pred = cart_predict(tree, parts.test.features);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
      if (pred[i] == parts.test.labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(pred.size());
  }();
  CHECK(acc > 0.9);
}

}  // TEST_SUITE
