#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "frechet/frechet.hpp"
#include "oracles.hpp"

using namespace frechet;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

TEST(Covering, IntervalExamples) {
  const auto region = interval_region(-1.0, 1.0, 1e-3);
  EXPECT_EQ(covering_number(region, 1.0), 1u);
  EXPECT_EQ(covering_number(region, 0.5), 2u);
  EXPECT_EQ(covering_number(region, 0.1), 10u);
}

TEST(Covering, SingletonIsOne) {
  EXPECT_EQ(covering_number(singleton_region(VectorPoint{1.0, 2.0}), 1e-6), 1u);
}

TEST(Covering, UnitDiscWithinPollard) {
  const auto region = ball_region(2, 1.0, 0.01);
  EXPECT_LE(static_cast<double>(covering_number(region, 0.5)), 36.0);
}

TEST(Covering, PollardOnBalls) {
  for (int b = 1; b <= 3; ++b) {
    const auto region = ball_region(static_cast<std::size_t>(b), 1.0, b == 3 ? 0.1 : 0.02);
    for (double r : {0.2, 0.35, 0.5, 0.8, 1.0})
      EXPECT_LE(static_cast<double>(covering_number(region, r)), oracle::pollard(1.0, r, b)) << b << " " << r;
  }
}

TEST(Covering, CentersActuallyCover) {
  // a cover at radius r must leave no point farther than r from the chosen set;
  // monotone in r
  const auto region = ball_region(2, 1.0, 0.05);
  std::size_t prev = region.points.size() + 1;
  for (double r : {0.1, 0.2, 0.4, 0.8, 1.6}) {
    const auto n = covering_number(region, r);
    EXPECT_LE(n, prev);
    prev = n;
  }
  EXPECT_EQ(covering_number(region, 1.0), 1u);
}

TEST(Covering, TreeRegion) {
  const auto t = MetricTree::tripod(1.0);
  const auto region = tree_region(t, 0.01, kind::Base{});
  EXPECT_EQ(covering_number(region, 1.0), 1u);  // the hub reaches every point
  EXPECT_GE(covering_number(region, 0.25), 3u);
}

TEST(Entrn, SingletonIsZero) {
  for (std::size_t n : {1u, 10u, 1000u}) EXPECT_EQ(entrn_estimate(singleton_region(VectorPoint{0.0}), n, 1e-3), 0.0);
}

TEST(Entrn, IntervalFiniteAndStable) {
  const auto region = interval_region(0.0, 1.0, 1e-4);
  const auto a = entrn_detail(region, 100, 1e-3, 8);
  const auto b = entrn_detail(region, 100, 1e-3, 32);
  EXPECT_GT(a.value, 0.0);
  EXPECT_TRUE(std::isfinite(a.value));
  EXPECT_LE(b.value, a.value + 1e-12);
  EXPECT_NEAR(a.value, b.value, 0.1 * a.value);
  EXPECT_LE(a.value, a.integral_from_zero + 1e-12);
}

TEST(Entrn, NonDecreasingInN) {
  const auto region = interval_region(0.0, 1.0, 1e-3);
  double prev = 0.0;
  for (std::size_t n : {1u, 10u, 100u, 10000u}) {
    const double v = entrn_estimate(region, n, 1e-3);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
}

TEST(Eta, Branches) {
  EXPECT_DOUBLE_EQ(eta(0.5, 100), 0.1);
  EXPECT_NEAR(eta(1.0, 99), 0.46284, 1e-5);  // log(100) / sqrt(99)
  EXPECT_DOUBLE_EQ(eta(1.0, 99), oracle::eta(1.0, 99));
  EXPECT_DOUBLE_EQ(eta(2.0, 10000), 0.1);
  for (double beta : {0.3, 0.99, 1.5, 3.0}) EXPECT_DOUBLE_EQ(eta(beta, 777), oracle::eta(beta, 777));
}

TEST(Eta, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { eta(0.0, 10); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { eta(1.0, 0); }), ErrorKind::InvalidArgument);
}

TEST(EntropyFit, SyntheticPower) {
  std::vector<CoveringCell> cells;
  for (double delta : {0.5, 1.0})
    for (double r : {0.125, 0.2, 0.3, 0.4}) {
      const double h = 3.0 * std::pow(delta / r, 0.7);
      cells.push_back({delta, r, std::exp(h * h)});
    }
  const auto f = entropy_fit(cells, EntropyModel::Power);
  EXPECT_NEAR(f.c_e_hat, 3.0, 3e-6);
  EXPECT_NEAR(f.beta_hat, 0.7, 7e-7);
}

TEST(EntropyFit, AllOnesIsNothingToFit) {
  const std::vector<CoveringCell> cells{{1, 1, 1}, {1, 2, 1}, {2, 3, 1}};
  EXPECT_EQ(kind_of([&] { entropy_fit(cells, EntropyModel::Power); }), ErrorKind::NothingToFit);
}

TEST(EntropyFit, IntervalsLogPower) {
  const auto region_for = [](double delta) { return interval_region(-delta, delta, delta / 1e4); };
  const auto f = entropy_fit(region_for, {1.0}, log_grid(1e-3, 0.1, 4), EntropyModel::LogPower);
  EXPECT_NEAR(f.beta_hat, 0.5, 0.05);
}

// log N = 2 log(delta / r) + c with c > 0, so the fitted exponent only reaches 1/2
// as delta / r grows without bound; at desk scale it sits near 0.3.
TEST(EntropyFit, EuclideanDiscsLogPower) {
  const auto region_for = [](double delta) { return ball_region(2, delta, delta / 60.0); };
  const auto f = entropy_fit(region_for, {1.0}, log_grid(0.02, 0.5, 4), EntropyModel::LogPower);
  EXPECT_GT(f.beta_hat, 0.25);
  EXPECT_LT(f.beta_hat, 0.5);
}

TEST(RatePrediction, EntropyRateExample) {
  const auto p = rate_prediction(2.0, 0.5, 0.5, 10000);
  EXPECT_DOUBLE_EQ(p.eta_value, 0.01);
  EXPECT_DOUBLE_EQ(p.loss_exponent, 1.0);
  EXPECT_DOUBLE_EQ(p.predicted_rate, 0.01);
  EXPECT_FALSE(p.schedule.has_value());
}

TEST(RatePrediction, RejectsEntropyAboveGrowth) {
  EXPECT_EQ(kind_of([] { rate_prediction(2.0, 1.0, 0.5, 100); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { rate_prediction(2.0, 3.0, 1.0, 100); }), ErrorKind::InvalidArgument);
}

TEST(RatePrediction, LogScheduleValues) {
  const auto n = static_cast<std::size_t>(std::llround(std::exp(10.0)));
  const auto p = rate_prediction(2.0, 0.5, 1.0, n, LogSchedule{2.0});
  ASSERT_TRUE(p.schedule.has_value());
  EXPECT_DOUBLE_EQ(p.schedule->R_n, static_cast<double>(n));
  EXPECT_DOUBLE_EQ(p.schedule->xi_n, 1.0 - 1.0 / std::log(static_cast<double>(n)));
  EXPECT_NEAR(p.schedule->xi_n, 0.9, 1e-5);
  EXPECT_DOUBLE_EQ(p.loss_exponent, 2.0);
  const double dn = static_cast<double>(n);
  EXPECT_NEAR(p.predicted_rate, std::pow(std::log(dn) / std::sqrt(dn), 2.0), 1e-15);
}

TEST(RatePrediction, LogSchedulePreconditions) {
  EXPECT_EQ(kind_of([] { rate_prediction(1.0, 0.1, 1.0, 100, LogSchedule{2.0}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { rate_prediction(2.0, 0.1, 1.0, 100, LogSchedule{0.5}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { rate_prediction(2.0, 0.1, 1.0, 2, LogSchedule{2.0}); }), ErrorKind::InvalidArgument);
}

}  // namespace
