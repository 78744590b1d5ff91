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

std::vector<SpacePoint> line(std::initializer_list<double> xs) {
  std::vector<SpacePoint> out;
  for (double x : xs) out.push_back(VectorPoint{x});
  return out;
}

const MetricTree kTripod = MetricTree::tripod(1.0);

TEST(VectorMean, SquaredDistanceIsArithmeticMean) {
  const std::vector<SpacePoint> ys{VectorPoint{0, 0}, VectorPoint{2, 0}, VectorPoint{1, 3}};
  const auto r = frechet_mean(cost::SquaredDistance{}, Euclidean{2}, ys);
  EXPECT_EQ(as_vector(r.point), (VectorPoint{1, 1}));
  EXPECT_EQ(r.status, MeanStatus::Converged);
}

TEST(VectorMean, MedianOnLine) {
  const auto r = frechet_mean(cost::Power{1.0}, Euclidean{1}, line({1, 2, 100}));
  EXPECT_EQ(as_vector(r.point)[0], 2.0);
}

TEST(VectorMean, MedianMatchesSortOracle) {
  Rng rng(3);
  std::vector<SpacePoint> ys;
  std::vector<double> raw;
  for (int i = 0; i < 101; ++i) {
    raw.push_back(uniform(rng, -5, 5));
    ys.push_back(VectorPoint{raw.back()});
  }
  EXPECT_EQ(as_vector(frechet_mean(cost::Power{1.0}, Euclidean{1}, ys).point)[0], oracle::median(raw));
}

TEST(VectorMean, EmptySample) {
  const std::vector<SpacePoint> ys;
  EXPECT_EQ(kind_of([&] { frechet_mean(cost::SquaredDistance{}, Euclidean{2}, ys); }), ErrorKind::EmptySample);
}

TEST(VectorMean, GeometricMedianBeatsEverySample) {
  Rng rng(4);
  std::vector<SpacePoint> ys;
  for (int i = 0; i < 40; ++i) ys.push_back(sample_point(Euclidean{3}, rng, {-3, 3}));
  EstimatorConfig cfg;
  cfg.trace = true;
  const auto r = frechet_mean(cost::Power{1.0}, Euclidean{3}, ys, cfg);
  for (const auto& y : ys) EXPECT_LE(r.objective, empirical_objective(cost::Power{1.0}, Euclidean{3}, ys, y) + 1e-12);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1] + 1e-14);
}

TEST(VectorMean, GeometricMedianSquareCorners) {
  const std::vector<SpacePoint> ys{VectorPoint{0, 0}, VectorPoint{1, 0}, VectorPoint{0, 1}, VectorPoint{1, 1}};
  const auto p = as_vector(frechet_mean(cost::Power{1.0}, Euclidean{2}, ys).point);
  EXPECT_NEAR(p[0], 0.5, 1e-8);
  EXPECT_NEAR(p[1], 0.5, 1e-8);
}

TEST(VectorMean, GeometricMedianOnASample) {
  // majority at one point: the median is that point
  const std::vector<SpacePoint> ys{VectorPoint{0, 0}, VectorPoint{0, 0}, VectorPoint{0, 0}, VectorPoint{4, 1},
                                   VectorPoint{-2, 3}};
  const auto p = as_vector(frechet_mean(cost::Power{1.0}, Euclidean{2}, ys).point);
  EXPECT_NEAR(p[0], 0.0, 1e-9);
  EXPECT_NEAR(p[1], 0.0, 1e-9);
}

TEST(VectorMean, IntermediateExponentMatchesGrid) {
  const auto ys = line({0, 0.3, 1, 2.5, 4});
  const auto r = frechet_mean(cost::Power{1.5}, Euclidean{1}, ys);
  const double grid = oracle::grid_argmin_line({0, 0.3, 1, 2.5, 4}, 1.5, -1, 5, 1e-5);
  EXPECT_NEAR(as_vector(r.point)[0], grid, 2e-5);
}

TEST(VectorMean, SubgradientAgreesWithWeiszfeld) {
  Rng rng(6);
  std::vector<SpacePoint> ys;
  for (int i = 0; i < 25; ++i) ys.push_back(sample_point(Euclidean{2}, rng));
  EstimatorConfig a, b;
  a.method = MeanMethod::Weiszfeld;
  b.method = MeanMethod::Subgradient;
  b.max_iter = 20000;
  const auto ra = frechet_mean(cost::Power{1.5}, Euclidean{2}, ys, a);
  const auto rb = frechet_mean(cost::Power{1.5}, Euclidean{2}, ys, b);
  EXPECT_NEAR(ra.objective, rb.objective, 1e-6);
}

TEST(VectorMean, BregmanIsArithmeticMean) {
  const std::vector<SpacePoint> ys{VectorPoint{0, 1}, VectorPoint{2, -1}};
  const auto p = as_vector(frechet_mean(cost::Bregman{Psi::CoordinateExponential}, Euclidean{2}, ys).point);
  EXPECT_EQ(p, (VectorPoint{1, 0}));
}

TEST(TreeMean, TwoPodsGiveHub) {
  const std::vector<SpacePoint> ys{TreePoint{0, 1}, TreePoint{1, 1}};
  const auto r = frechet_mean(cost::SquaredDistance{}, kTripod, ys);
  EXPECT_NEAR(kTripod.distance(as_tree(r.point), kTripod.vertex_point(0)), 0.0, 1e-12);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
  const auto brute = brute_force_mean(cost::SquaredDistance{}, kTripod, ys, 1e-3);
  EXPECT_NEAR(brute.objective, r.objective, 1e-9);
}

TEST(TreeMean, SingleSample) {
  const std::vector<SpacePoint> ys{TreePoint{2, 0.37}};
  const auto r = frechet_mean(cost::Power{1.3}, kTripod, ys);
  EXPECT_NEAR(kTripod.distance(as_tree(r.point), TreePoint{2, 0.37}), 0.0, 1e-9);
  EXPECT_NEAR(r.objective, 0.0, 1e-12);
}

TEST(TreeMean, MedianAlongPod) {
  const std::vector<SpacePoint> ys{TreePoint{0, 0.1}, TreePoint{0, 0.2}, TreePoint{0, 0.9}};
  const auto r = frechet_mean(cost::Power{1.0}, kTripod, ys);
  EXPECT_NEAR(kTripod.distance(as_tree(r.point), TreePoint{0, 0.2}), 0.0, 1e-12);
}

TEST(TreeMean, ThreePodsWeighted) {
  // 0.6/0.2/0.2 at the pod ends: mean on pod 0 at 0.2
  const std::vector<SpacePoint> ys{TreePoint{0, 1}, TreePoint{1, 1}, TreePoint{2, 1}};
  const std::vector<double> w{0.6, 0.2, 0.2};
  const auto r = frechet_mean_tree(cost::SquaredDistance{}, kTripod, ys, {}, w);
  EXPECT_NEAR(kTripod.distance(as_tree(r.point), TreePoint{0, 0.2}), 0.0, 1e-12);
}

TEST(TreeMean, BeatsVerticesAndSamplesOnRandomTrees) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = MetricTree::random(8, seed);
    Rng rng(seed);
    std::vector<SpacePoint> ys;
    for (int i = 0; i < 30; ++i) ys.push_back(t.sample(rng));
    for (double pw : {1.0, 1.5, 2.0}) {
      const CostDescriptor c = pw == 2.0 ? CostDescriptor{cost::SquaredDistance{}} : CostDescriptor{cost::Power{pw}};
      const auto r = frechet_mean(c, t, ys);
      for (std::size_t v = 0; v < t.num_vertices(); ++v)
        EXPECT_LE(r.objective, empirical_objective(c, t, ys, t.vertex_point(v)) + 1e-12);
      for (const auto& y : ys) EXPECT_LE(r.objective, empirical_objective(c, t, ys, y) + 1e-12);
      const auto brute = brute_force_mean(c, t, ys, 1e-3);
      EXPECT_LE(r.objective, brute.objective + 1e-12);
    }
  }
}

TEST(PlaneMean, ProjectsTheMean) {
  const PlaneWithHole plane(DiscHole{VectorPoint{0, 0}, 1.0});
  const std::vector<SpacePoint> far{VectorPoint{2, 1}, VectorPoint{2, -1}};
  EXPECT_EQ(as_vector(frechet_mean_constrained_plane(far, plane).point), (VectorPoint{2, 0}));
  const std::vector<SpacePoint> near{VectorPoint{2.5, 1.5}, VectorPoint{-1.5, -1.5}};
  const auto r = frechet_mean_constrained_plane(near, plane);
  EXPECT_NEAR(as_vector(r.point)[0], 1.0, 1e-15);
  EXPECT_NEAR(as_vector(r.point)[1], 0.0, 1e-15);
  EXPECT_EQ(r.status, MeanStatus::Converged);
}

TEST(PlaneMean, CenterIsDegenerate) {
  const PlaneWithHole plane(DiscHole{VectorPoint{0, 0}, 1.0});
  const std::vector<SpacePoint> ys{VectorPoint{2, 0}, VectorPoint{-2, 0}};
  EXPECT_EQ(frechet_mean_constrained_plane(ys, plane).status, MeanStatus::Degenerate);
}

TEST(BruteForce, NeedsBoxOffTrees) {
  EXPECT_EQ(kind_of([] { brute_force_mean(cost::SquaredDistance{}, Euclidean{1}, line({0, 1}), 0.1); }),
            ErrorKind::UnboundedRegion);
}

TEST(BruteForce, AgreesWithClosedFormOnLine) {
  const auto r = brute_force_mean(cost::SquaredDistance{}, Euclidean{1}, line({0, 0.5, 2}), 1e-3, Box{-1, 3});
  EXPECT_NEAR(as_vector(r.point)[0], 2.5 / 3.0, 1e-3);
}

TEST(Growth, SyntheticExact) {
  std::vector<double> l, ex;
  for (double x = 0.01; x < 1.0; x *= 1.5) {
    l.push_back(x);
    ex.push_back(0.7 * std::pow(x, 2.3));
  }
  const auto g = growth_fit(l, ex);
  EXPECT_NEAR(g.gamma_hat, 2.3, 1e-6);
  EXPECT_NEAR(g.cg_hat, 0.7, 1e-6);
}

TEST(Growth, GaussianQuadratic) {
  const DistributionSpec d = dist::GaussianVector{VectorPoint{0.0, 0.0}, {1.0, 4.0}};
  const auto F = population_objective(d, cost::SquaredDistance{}, Euclidean{2});
  std::vector<SpacePoint> probes;
  for (double r = 0.05; r <= 1.0; r += 0.05) probes.push_back(VectorPoint{r * 0.6, r * 0.8});
  const LossFn loss = [](const SpacePoint& a, const SpacePoint& b) { return base_distance(Euclidean{2}, a, b); };
  const auto g = growth_fit(F.F, loss, VectorPoint{0.0, 0.0}, probes);
  EXPECT_NEAR(g.gamma_hat, 2.0, 1e-9);
  EXPECT_NEAR(g.cg_hat, 1.0, 1e-9);
}

TEST(Growth, TripodTwoPods) {
  const MetricSpace s = kTripod;
  const DistributionSpec d = dist::TreeDiscrete{{TreePoint{0, 1}, TreePoint{1, 1}}, {0.5, 0.5}};
  const auto F = population_objective(d, cost::SquaredDistance{}, s);
  const auto m = known_minimizer(d, cost::SquaredDistance{}, s);
  // along the two loaded pods F = 1 + x^2; into the empty pod F grows linearly
  std::vector<SpacePoint> probes, third;
  for (double x = 0.05; x <= 1.0; x += 0.05) {
    probes.push_back(TreePoint{0, x});
    probes.push_back(TreePoint{1, x});
    third.push_back(TreePoint{2, x});
  }
  const LossFn loss = [&](const SpacePoint& a, const SpacePoint& b) { return base_distance(s, a, b); };
  const auto g = growth_fit(F.F, loss, m, probes);
  EXPECT_NEAR(g.gamma_hat, 2.0, 1e-9);
  EXPECT_NEAR(g.cg_hat, 1.0, 1e-9);
  EXPECT_NEAR(growth_scan(F.F, loss, m, third, 1.0), 2.05, 1e-9);
}

TEST(Growth, CauchyMedianNearCenter) {
  const DistributionSpec d = dist::CauchyLine{0.0, 1.0};
  const auto F = population_objective(d, cost::Power{1.0}, Euclidean{1});
  ASSERT_TRUE(F.exact);
  for (double q : {-0.7, 0.1, 0.5, 2.0})
    EXPECT_NEAR(F.F(VectorPoint{q}) - F.F(VectorPoint{0.0}), oracle::cauchy_excess(q), 1e-10) << q;
  std::vector<SpacePoint> probes;
  for (double q = 0.05; q <= 1.0; q += 0.05) {
    probes.push_back(VectorPoint{q});
    probes.push_back(VectorPoint{-q});
  }
  const LossFn loss = [](const SpacePoint& a, const SpacePoint& b) { return base_distance(Euclidean{1}, a, b); };
  EXPECT_NEAR(growth_fit(F.F, loss, VectorPoint{0.0}, probes).gamma_hat, 2.0, 0.15);
}

TEST(Growth, WrongCenterRejected) {
  const DistributionSpec d = dist::GaussianVector{VectorPoint{0.0}, {1.0}};
  const auto F = population_objective(d, cost::SquaredDistance{}, Euclidean{1});
  const std::vector<SpacePoint> probes{VectorPoint{0.0}, VectorPoint{1.0}};
  const LossFn loss = [](const SpacePoint& a, const SpacePoint& b) { return base_distance(Euclidean{1}, a, b); };
  EXPECT_EQ(kind_of([&] { growth_fit(F.F, loss, VectorPoint{0.5}, probes); }), ErrorKind::InvalidCenter);
}

TEST(Growth, PlaneWithHoleScan) {
  // mu outside the disc: F(q) = |q - mu|^2 + trace, minimized on the space at mu itself
  const MetricSpace s = PlaneWithHole(DiscHole{VectorPoint{0, 0}, 1.0});
  const DistributionSpec d = dist::PlaneCloud{{VectorPoint{2, 1}, VectorPoint{2, -1}}, {0.5, 0.5}};
  const auto F = population_objective(d, cost::SquaredDistance{}, s);
  const auto m = known_minimizer(d, cost::SquaredDistance{}, s);
  EXPECT_EQ(as_vector(m), (VectorPoint{2, 0}));
  std::vector<SpacePoint> probes;
  for (double a = 0.0; a < 6.28; a += 0.5) probes.push_back(VectorPoint{2 + 0.5 * std::cos(a), 0.5 * std::sin(a)});
  const LossFn loss = [&](const SpacePoint& a, const SpacePoint& b) { return base_distance(s, a, b); };
  EXPECT_NEAR(growth_scan(F.F, loss, m, probes, 2.0), 1.0, 1e-12);
}

}  // namespace
