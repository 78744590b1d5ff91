#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "frechet/cost.hpp"
#include "frechet/error.hpp"
#include "frechet/estimator.hpp"
#include "frechet/point.hpp"
#include "frechet/random.hpp"
#include "frechet/space.hpp"

namespace frechet {

namespace dist {

// Independent normal coordinates.
struct GaussianVector {
  VectorPoint mean;
  std::vector<double> variances;
};

struct CauchyLine {
  double location = 0.0;
  double scale = 1.0;
};

struct TreeDiscrete {
  std::vector<TreePoint> points;
  std::vector<double> probs;
};

// Finitely many atoms in the plane with a hole; mu = sum_k w_k x_k.
struct PlaneCloud {
  std::vector<VectorPoint> points;
  std::vector<double> weights;
};

struct PointMass {
  SpacePoint point;
};

}  // namespace dist

using DistributionSpec =
    std::variant<dist::GaussianVector, dist::CauchyLine, dist::TreeDiscrete, dist::PlaneCloud, dist::PointMass>;

inline std::string distribution_name(const DistributionSpec& d) {
  static const char* names[] = {"gaussian", "cauchy", "tree_discrete", "plane_cloud", "point_mass"};
  return names[d.index()];
}

namespace population_detail {

inline void check_probs(const std::vector<double>& probs, std::size_t n) {
  require(n >= 1 && probs.size() == n, ErrorKind::InvalidArgument, "one probability per atom");
  double total = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidArgument, "probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    fail(ErrorKind::InvalidArgument, "probabilities sum to " + std::to_string(total) + ", not 1");
}

inline std::size_t draw_index(Rng& rng, const std::vector<double>& probs) {
  const double u = uniform(rng, 0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding slack: last atom with positive mass.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return i;
  return 0;
}

}  // namespace population_detail

inline void validate_distribution(const DistributionSpec& d, const MetricSpace& s) {
  if (const auto* g = std::get_if<dist::GaussianVector>(&d)) {
    require(is_vector_space(s) && !std::holds_alternative<PlaneWithHole>(s), ErrorKind::IncompatibleSpace,
            "Gaussian laws live on flat vector spaces");
    require(g->mean.dim() == vector_dim(s) && g->variances.size() == g->mean.dim(), ErrorKind::InvalidArgument,
            "Gaussian mean and variances must match the space dimension");
    for (double v : g->variances)
      require(std::isfinite(v) && v > 0.0, ErrorKind::InvalidArgument, "variances must be positive");
  } else if (const auto* c = std::get_if<dist::CauchyLine>(&d)) {
    require(vector_dim(s) == 1 && std::holds_alternative<Euclidean>(s), ErrorKind::IncompatibleSpace,
            "the Cauchy law lives on the real line");
    require(std::isfinite(c->location) && c->scale > 0.0, ErrorKind::InvalidArgument, "Cauchy scale must be positive");
  } else if (const auto* t = std::get_if<dist::TreeDiscrete>(&d)) {
    require(std::holds_alternative<MetricTree>(s), ErrorKind::IncompatibleSpace, "tree law needs a tree");
    population_detail::check_probs(t->probs, t->points.size());
    for (const auto& p : t->points) require_in_space(s, p);
  } else if (const auto* pc = std::get_if<dist::PlaneCloud>(&d)) {
    require(std::holds_alternative<PlaneWithHole>(s), ErrorKind::IncompatibleSpace, "plane cloud needs a plane with a hole");
    population_detail::check_probs(pc->weights, pc->points.size());
    for (const auto& p : pc->points) require_in_space(s, p);
  } else {
    require_in_space(s, std::get<dist::PointMass>(d).point);
  }
}

inline SpacePoint draw(const DistributionSpec& d, Rng& rng) {
  if (const auto* g = std::get_if<dist::GaussianVector>(&d)) {
    auto v = g->mean;
    for (std::size_t k = 0; k < v.dim(); ++k) v[k] += std::sqrt(g->variances[k]) * std::normal_distribution<double>()(rng);
    return v;
  }
  if (const auto* c = std::get_if<dist::CauchyLine>(&d))
    return VectorPoint{c->location + c->scale * std::cauchy_distribution<double>()(rng)};
  if (const auto* t = std::get_if<dist::TreeDiscrete>(&d)) return t->points[population_detail::draw_index(rng, t->probs)];
  if (const auto* pc = std::get_if<dist::PlaneCloud>(&d))
    return pc->points[population_detail::draw_index(rng, pc->weights)];
  return std::get<dist::PointMass>(d).point;
}

inline std::vector<SpacePoint> sample_distribution(const DistributionSpec& d, Rng& rng, std::size_t n) {
  std::vector<SpacePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(d, rng));
  return out;
}

namespace population_detail {

inline bool is_symmetric_power(const CostDescriptor& c) {
  return std::holds_alternative<cost::SquaredDistance>(c) || std::holds_alternative<cost::Power>(c) ||
         std::holds_alternative<cost::AnchoredPower>(c);
}

// E[|Y - q| - |Y - a|] for Y ~ Cauchy(loc, scale), integrating over the angle
// y = loc + scale tan(theta) with density 1/pi. Split at the kinks.
inline double cauchy_median_excess(const dist::CauchyLine& c, double q, double a) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double th) {
    const double y = c.location + c.scale * std::tan(th);
    return (std::abs(y - q) - std::abs(y - a)) / std::numbers::pi;
  };
  const double h = std::numbers::pi / 2.0;
  std::vector<double> cuts{-h, std::atan((q - c.location) / c.scale), std::atan((a - c.location) / c.scale), h};
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-13);
  return total;
}

}  // namespace population_detail

// Population minimizer m when it is known in closed form (or by an exact finite search).
inline SpacePoint known_minimizer(const DistributionSpec& d, const CostDescriptor& c, const MetricSpace& s) {
  validate_distribution(d, s);
  if (const auto* pm = std::get_if<dist::PointMass>(&d)) return canonical(s, pm->point);
  if (const auto* g = std::get_if<dist::GaussianVector>(&d)) {
    // Reflection symmetry about the mean plus convexity.
    require(population_detail::is_symmetric_power(c) || std::holds_alternative<cost::Bregman>(c),
            ErrorKind::InvalidArgument, "no closed-form minimizer for this cost");
    return g->mean;
  }
  if (const auto* ca = std::get_if<dist::CauchyLine>(&d)) {
    require(population_detail::is_symmetric_power(c), ErrorKind::InvalidArgument,
            "no closed-form minimizer for this cost");
    return VectorPoint{ca->location};
  }
  if (const auto* t = std::get_if<dist::TreeDiscrete>(&d)) {
    std::vector<SpacePoint> pts(t->points.begin(), t->points.end());
    EstimatorConfig cfg;
    cfg.tol = 1e-13;
    return frechet_mean_tree(c, std::get<MetricTree>(s), pts, cfg, t->probs).point;
  }
  const auto& pc = std::get<dist::PlaneCloud>(d);
  require(std::holds_alternative<cost::SquaredDistance>(c), ErrorKind::InvalidArgument,
          "plane cloud minimizer is known for the squared distance only");
  auto mu = vec::zeros(2);
  for (std::size_t i = 0; i < pc.points.size(); ++i) mu = vec::add(mu, vec::scale(pc.points[i], pc.weights[i]));
  const auto proj = std::get<PlaneWithHole>(s).project_any(mu);
  require(proj.unique, ErrorKind::InvalidCenter, "population mean lies on the medial axis; the minimizer is not unique");
  return proj.point;
}

struct PopulationObjective {
  Objective F;
  bool exact = true;  // false for the plug-in estimate
};

inline constexpr std::size_t kPlugInDraws = 1000000;

// F(q) = E c(Y, q). Closed forms for Gaussian squared distance and finite laws; the
// Cauchy median cost is reported relative to |Y - location| (F itself is infinite);
// everything else uses a fixed plug-in sample of kPlugInDraws points.
inline PopulationObjective population_objective(const DistributionSpec& d, const CostDescriptor& c, const MetricSpace& s,
                                                std::uint64_t seed = 0x5eed) {
  validate_distribution(d, s);
  validate_cost(c, s);
  auto share_space = std::make_shared<MetricSpace>(s);
  if (const auto* g = std::get_if<dist::GaussianVector>(&d); g && std::holds_alternative<cost::SquaredDistance>(c)) {
    double tr = 0.0;
    for (double v : g->variances) tr += v;
    const auto mean = g->mean;
    return {[mean, tr](const SpacePoint& q) {
              const double dd = vec::dist(as_vector(q), mean);
              return dd * dd + tr;
            },
            true};
  }
  if (const auto* ca = std::get_if<dist::CauchyLine>(&d)) {
    double p = 0.0;
    double anchor = ca->location;
    if (const auto* pw = std::get_if<cost::Power>(&c)) p = pw->two_alpha;
    if (const auto* ap = std::get_if<cost::AnchoredPower>(&c)) {
      p = ap->two_alpha;
      anchor = as_vector(ap->anchor)[0];
    }
    require(p == 1.0, ErrorKind::InvalidArgument, "the Cauchy objective is available for two_alpha = 1 only");
    const auto law = *ca;
    return {[law, anchor](const SpacePoint& q) {
              return population_detail::cauchy_median_excess(law, as_vector(q)[0], anchor);
            },
            true};
  }
  std::vector<SpacePoint> atoms;
  std::vector<double> probs;
  if (const auto* t = std::get_if<dist::TreeDiscrete>(&d)) {
    atoms.assign(t->points.begin(), t->points.end());
    probs = t->probs;
  } else if (const auto* pc = std::get_if<dist::PlaneCloud>(&d)) {
    atoms.assign(pc->points.begin(), pc->points.end());
    probs = pc->weights;
  } else if (const auto* pm = std::get_if<dist::PointMass>(&d)) {
    atoms.push_back(pm->point);
    probs.push_back(1.0);
  }
  if (!atoms.empty())
    return {[share_space, c, atoms, probs](const SpacePoint& q) {
              return weighted_objective(c, *share_space, atoms, probs, q);
            },
            true};
  Rng rng = substream(seed, {0x504c});
  auto plug = std::make_shared<std::vector<SpacePoint>>(sample_distribution(d, rng, kPlugInDraws));
  return {[share_space, c, plug](const SpacePoint& q) { return empirical_objective(c, *share_space, *plug, q); }, false};
}

}  // namespace frechet
