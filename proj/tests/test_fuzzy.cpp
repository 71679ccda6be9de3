#include <doctest.h>

#include <cmath>

#include "gasboost/common.hpp"
#include "gasboost/fuzzy.hpp"
#include "gasboost/rng.hpp"

using namespace gasboost;

TEST_SUITE("fuzzy") {

TEST_CASE("tertile thresholds of 1..100 interpolate to 33.67 and 67.33") {
  Matrix X(100, 1);
  for (Index i = 0; i < 100; ++i) X(i, 0) = static_cast<double>(i + 1);
  FuzzyThresholds thr = fuzzy_fit(X);
  CHECK(thr.t_low(0) == doctest::Approx(33.67).epsilon(1e-12));
  CHECK(thr.t_high(0) == doctest::Approx(67.33).epsilon(1e-12));
}

TEST_CASE("constant column collapses both thresholds") {
  Matrix X(5, 1);
  X.setConstant(4.2);
  FuzzyThresholds thr = fuzzy_fit(X);
  CHECK(thr.t_low(0) == 4.2);
  CHECK(thr.t_high(0) == 4.2);
}

TEST_CASE("t_low never exceeds t_high") {
  Rng rng(7);
  Matrix X(64, 6);
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j) X(i, j) = rng.gaussian();
  FuzzyThresholds thr = fuzzy_fit(X);
  for (Index j = 0; j < X.cols(); ++j) CHECK(thr.t_low(j) <= thr.t_high(j));
}

TEST_CASE("transform assigns interior and boundary states as declared") {
  FuzzyThresholds thr;
  thr.t_low.resize(1);
  thr.t_high.resize(1);
  thr.t_low << 0.0;
  thr.t_high << 10.0;
  Matrix X(5, 1);
  X << -5.0, 5.0, 15.0, 0.0, 10.0;
  Matrix S = fuzzy_transform(X, thr);
  CHECK(S(0, 0) == 0.0);  // below
  CHECK(S(1, 0) == 1.0);  // interior
  CHECK(S(2, 0) == 2.0);  // above
  CHECK(S(3, 0) == 0.0);  // exactly t_low
  CHECK(S(4, 0) == 2.0);  // exactly t_high
}

TEST_CASE("degenerate thresholds map the shared value to the middle state") {
  FuzzyThresholds thr;
  thr.t_low.resize(1);
  thr.t_high.resize(1);
  thr.t_low << 3.0;
  thr.t_high << 3.0;
  Matrix X(3, 1);
  X << 2.0, 3.0, 4.0;
  Matrix S = fuzzy_transform(X, thr);
  CHECK(S(0, 0) == 0.0);
  CHECK(S(1, 0) == 1.0);
  CHECK(S(2, 0) == 2.0);
}

TEST_CASE("transform rejects a column-count mismatch") {
  FuzzyThresholds thr;
  thr.t_low = Vector::Zero(2);
  thr.t_high = Vector::Ones(2);
  Matrix X(1, 3);
  X.setZero();
  CHECK_THROWS_AS(fuzzy_transform(X, thr), Error);
}

TEST_CASE("states balance into tertiles on distinct fitting data") {
  Rng rng(11);
  Matrix X(300, 1);
  for (Index i = 0; i < 300; ++i) X(i, 0) = rng.uniform();
  FuzzyThresholds thr = fuzzy_fit(X);
  Matrix S = fuzzy_transform(X, thr);
  int counts[3] = {0, 0, 0};
  for (Index i = 0; i < 300; ++i) ++counts[static_cast<int>(S(i, 0))];
  for (int c : counts) CHECK(std::abs(c - 100) <= 2);
}

TEST_CASE("membership knot values") {
  Membership at_low = membership(0.0, 0.0, 10.0);
  CHECK(at_low.low == 1.0);
  CHECK(at_low.med == 0.0);
  CHECK(at_low.high == 0.0);

  Membership at_mid = membership(5.0, 0.0, 10.0);
  CHECK(at_mid.low == 0.0);
  CHECK(at_mid.med == 1.0);
  CHECK(at_mid.high == 0.0);

  Membership quarter = membership(2.5, 0.0, 10.0);
  CHECK(quarter.low == doctest::Approx(0.5));
  CHECK(quarter.med == doctest::Approx(0.5));
  CHECK(quarter.high == 0.0);

  Membership degenerate = membership(7.0, 7.0, 7.0);
  CHECK(degenerate.med == 1.0);

  CHECK_THROWS_AS(membership(0.0, 2.0, 1.0), Error);
}

TEST_CASE("membership is a partition of unity over the threshold interval") {
  const double a = -1.3, b = 2.9;
  for (int i = 0; i <= 1000; ++i) {
    const double x = a + (b - a) * i / 1000.0;
    Membership mu = membership(x, a, b);
    CHECK(std::abs(mu.low + mu.med + mu.high - 1.0) <= 1e-12);
    CHECK(mu.low >= 0.0);
    CHECK(mu.med >= 0.0);
    CHECK(mu.high >= 0.0);
  }
}

TEST_CASE("mu_low never increases and mu_high never decreases") {
  const double a = 0.0, b = 4.0;
  double prev_low = 2.0, prev_high = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.0 + 6.0 * i / 400.0;
    Membership mu = membership(x, a, b);
    CHECK(mu.low <= prev_low + 1e-15);
    CHECK(mu.high >= prev_high - 1e-15);
    prev_low = mu.low;
    prev_high = mu.high;
  }
}

}  // TEST_SUITE
