#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
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

const double e = std::numbers::e;

TEST(CostEval, SquaredDistance) {
  EXPECT_DOUBLE_EQ(cost_eval(cost::SquaredDistance{}, Euclidean{2}, VectorPoint{0, 0}, VectorPoint{1, 1}), 2.0);
}

TEST(CostEval, BregmanSquaredNormIsSquaredDistance) {
  EXPECT_DOUBLE_EQ(cost_eval(cost::Bregman{Psi::SquaredNorm}, Euclidean{2}, VectorPoint{1, 0}, VectorPoint{0, 0}), 1.0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto y = sample_point(Euclidean{3}, rng), q = sample_point(Euclidean{3}, rng);
    const double d = oracle::euclid(as_vector(y).coords, as_vector(q).coords);
    EXPECT_NEAR(cost_eval(cost::Bregman{Psi::SquaredNorm}, Euclidean{3}, y, q), d * d, 1e-13);
  }
}

TEST(CostEval, BregmanExponentialByHand) {
  // e^y - e^q - e^q (y - q)
  const double v = cost_eval(cost::Bregman{Psi::CoordinateExponential}, Euclidean{1}, VectorPoint{1}, VectorPoint{0});
  EXPECT_NEAR(v, e - 2.0, 1e-15);
}

TEST(CostEval, AnchoredPower) {
  const cost::AnchoredPower c{1.0, VectorPoint{0}};
  EXPECT_DOUBLE_EQ(cost_eval(c, Euclidean{1}, VectorPoint{0}, VectorPoint{4}), 4.0);
  EXPECT_DOUBLE_EQ(cost_eval(c, Euclidean{1}, VectorPoint{3}, VectorPoint{4}), 1.0 - 3.0);
}

TEST(CostEval, PowerOnTripod) {
  const auto t = MetricTree::tripod(1.0);
  EXPECT_NEAR(cost_eval(cost::Power{1.5}, t, TreePoint{0, 1}, TreePoint{1, 1}), std::pow(2.0, 1.5), 1e-14);
}

TEST(CostEval, RejectsBadExponent) {
  EXPECT_EQ(kind_of([] { cost_eval(cost::Power{2.5}, Euclidean{1}, VectorPoint{0}, VectorPoint{1}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { cost_eval(cost::Power{0.5}, Euclidean{1}, VectorPoint{0}, VectorPoint{1}); }),
            ErrorKind::InvalidArgument);
}

TEST(CostEval, BregmanNeedsEuclidean) {
  EXPECT_EQ(kind_of([] {
              cost_eval(cost::Bregman{}, MetricTree::tripod(1.0), TreePoint{0, 1}, TreePoint{1, 1});
            }),
            ErrorKind::IncompatibleSpace);
}

TEST(Objective, SingleSample) {
  const std::vector<SpacePoint> ys{VectorPoint{2, 3}};
  EXPECT_DOUBLE_EQ(empirical_objective(cost::SquaredDistance{}, Euclidean{2}, ys, VectorPoint{0, 0}), 13.0);
}

TEST(Objective, TwoSamplesOnLine) {
  const std::vector<SpacePoint> ys{VectorPoint{0}, VectorPoint{2}};
  EXPECT_DOUBLE_EQ(empirical_objective(cost::SquaredDistance{}, Euclidean{1}, ys, VectorPoint{1}), 1.0);
}

TEST(Objective, EmptySample) {
  const std::vector<SpacePoint> ys;
  EXPECT_EQ(kind_of([&] { empirical_objective(cost::SquaredDistance{}, Euclidean{1}, ys, VectorPoint{1}); }),
            ErrorKind::EmptySample);
}

TEST(Objective, WeightsAreNormalized) {
  const std::vector<SpacePoint> ys{VectorPoint{0}, VectorPoint{2}};
  const std::vector<double> w{3.0, 1.0};
  EXPECT_DOUBLE_EQ(weighted_objective(cost::SquaredDistance{}, Euclidean{1}, ys, w, VectorPoint{0}), 1.0);
}

TEST(WeakResidual, NiceWithEqualDataVanishes) {
  const auto t = MetricTree::tripod(1.0);
  const TreePoint y{0, 0.5};
  EXPECT_NEAR(weak_quadruple_residual({structure::Nice{}}, t, y, y, TreePoint{1, 0.2}, TreePoint{2, 0.9}), 0.0, 1e-15);
}

TEST(WeakResidual, InnerProduct) {
  const double r = weak_quadruple_residual({structure::InnerProduct{}}, Euclidean{2}, VectorPoint{1, 0},
                                           VectorPoint{0, 0}, VectorPoint{0, 1}, VectorPoint{0, 0});
  EXPECT_NEAR(r, -2.0, 1e-15);
}

TEST(WeakResidual, InnerProductLeftSideIsMinusTwoInner) {
  Rng rng(2);
  const Euclidean s{4};
  for (int i = 0; i < 200; ++i) {
    const auto y = as_vector(sample_point(s, rng)), z = as_vector(sample_point(s, rng));
    const auto q = as_vector(sample_point(s, rng)), p = as_vector(sample_point(s, rng));
    double inner = 0.0;
    for (int k = 0; k < 4; ++k) inner += (y[k] - z[k]) * (q[k] - p[k]);
    const auto t = weak_quadruple_terms({structure::InnerProduct{}}, s, y, z, q, p);
    EXPECT_NEAR(t.lhs, -2.0 * inner, 1e-12);
    EXPECT_NEAR(t.bound, 2.0 * oracle::euclid(y.coords, z.coords) * oracle::euclid(q.coords, p.coords), 1e-12);
  }
}

// Frozen: with q = 0, p = 1 the left side is e - 1 and the bound is |1 - 0| |e^0 - e^1|,
// so the residual is 0. Swapping q and p flips the left side and gives -2(e - 1).
TEST(WeakResidual, BregmanExponentialOnLine) {
  const QuadrupleStructure st{structure::Bregman{Psi::CoordinateExponential}};
  const Euclidean s{1};
  const auto t = weak_quadruple_terms(st, s, VectorPoint{1}, VectorPoint{0}, VectorPoint{0}, VectorPoint{1});
  EXPECT_NEAR(t.lhs, e - 1.0, 1e-14);
  EXPECT_NEAR(t.bound, e - 1.0, 1e-14);
  EXPECT_NEAR(t.residual(), 0.0, 1e-14);
  const double swapped = weak_quadruple_residual(st, s, VectorPoint{1}, VectorPoint{0}, VectorPoint{1}, VectorPoint{0});
  EXPECT_NEAR(swapped, (1.0 - e) - (e - 1.0), 1e-14);
  EXPECT_NEAR(swapped, -3.4366, 1e-4);
}

TEST(WeakResidual, PowerAtAlphaOneIsNice) {
  Rng rng(3);
  const Euclidean s{3};
  for (int i = 0; i < 100; ++i) {
    const auto y = sample_point(s, rng), z = sample_point(s, rng), q = sample_point(s, rng), p = sample_point(s, rng);
    EXPECT_NEAR(weak_quadruple_residual({structure::Power{1.0}}, s, y, z, q, p),
                weak_quadruple_residual({structure::Nice{}}, s, y, z, q, p), 1e-12);
  }
}

TEST(StrongResidual, EqualDescriptorsVanish) {
  const Euclidean s{2};
  const double r = strong_quadruple_residual({structure::Nice{}}, s, VectorPoint{0, 0}, 0.5, kind::Base{},
                                             VectorPoint{1, 2}, VectorPoint{-1, 0}, VectorPoint{0.3, 0.1},
                                             VectorPoint{0.3, 0.1});
  EXPECT_NEAR(r, 0.0, 1e-15);
}

TEST(StrongResidual, StrongIPSameDirection) {
  const VectorPoint m{0, 0};
  const double r = strong_quadruple_residual({structure::StrongIP{m}}, Euclidean{2}, m, 1.0, kind::Base{},
                                             VectorPoint{1, 0}, VectorPoint{0, 0}, VectorPoint{0, 1}, VectorPoint{0, 2});
  EXPECT_NEAR(r, 0.0, 1e-15);
}

TEST(StrongResidual, TripodConfigurationIsPositive) {
  // y = p on pod 1 at eps, z at the hub, q at the end of pod 2, m at the end of pod 3
  const double eps = 0.1;
  const MetricSpace s = MetricTree::tripod(1.0);
  const double r = strong_quadruple_residual({structure::Nice{}}, s, TreePoint{2, 1.0}, 1.0, kind::Base{},
                                             TreePoint{0, eps}, TreePoint{0, 0.0}, TreePoint{1, 1.0}, TreePoint{0, eps});
  // left side 2 eps, bound 2 eps * sqrt(2 eps / (1 + eps))
  EXPECT_NEAR(r, 2 * eps - 2 * eps * std::sqrt(2 * eps / (1 + eps)), 1e-12);
  EXPECT_GT(r, 0.0);
}

TEST(Product, SingleFactorMatchesFactor) {
  const QuadrupleStructure base{structure::Power{0.75}};
  const auto prod = product_structure({{base, 3}});
  Rng rng(4);
  const Euclidean s{3};
  for (int i = 0; i < 200; ++i) {
    const auto y = sample_point(s, rng), z = sample_point(s, rng), q = sample_point(s, rng), p = sample_point(s, rng);
    EXPECT_NEAR(weak_quadruple_residual(prod, s, y, z, q, p), weak_quadruple_residual(base, s, y, z, q, p), 1e-12);
  }
}

TEST(Product, TwoFactorSweepClean) {
  const auto prod = product_structure({{{structure::Nice{}}, 2}, {{structure::Power{0.6}}, 1}});
  EXPECT_TRUE(sweep_structure(Euclidean{3}, prod, 20000, 5).ok());
}

TEST(MinOverSets, KOneMatchesBase) {
  const QuadrupleStructure base{structure::Nice{}};
  const auto mn = min_structure(base, 1);
  Rng rng(6);
  const Euclidean s{2};
  for (int i = 0; i < 200; ++i) {
    const auto y = sample_point(s, rng), z = sample_point(s, rng), q = sample_point(s, rng), p = sample_point(s, rng);
    EXPECT_NEAR(weak_quadruple_residual(mn, s, y, z, q, p), weak_quadruple_residual(base, s, y, z, q, p), 1e-12);
  }
}

TEST(MinOverSets, KThreeSweepClean) {
  EXPECT_TRUE(sweep_structure(Euclidean{2}, min_structure({structure::Nice{}}, 3), 20000, 7).ok());
}

TEST(Structure, PowerConstantAtSpecialAlpha) {
  const double a = 1.0 / (2.0 * std::log(2.0));
  EXPECT_NEAR(power_constant(a), 4.0 / (e * std::log(2.0)), 1e-14);
  EXPECT_LE(power_constant(a), 2.123);
  EXPECT_DOUBLE_EQ(power_constant(0.5), 2.0);
  EXPECT_DOUBLE_EQ(power_constant(1.0), 2.0);
}

}  // namespace
