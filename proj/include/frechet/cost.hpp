#pragma once

#include <cmath>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/point.hpp"
#include "frechet/space.hpp"

namespace frechet {

enum class Psi { SquaredNorm, CoordinateExponential };

inline std::string psi_name(Psi psi) { return psi == Psi::SquaredNorm ? "squared_norm" : "coordinate_exponential"; }

inline double psi_value(Psi psi, const VectorPoint& x) {
  double s = 0.0;
  for (double v : x.coords) s += psi == Psi::SquaredNorm ? v * v : std::exp(v);
  return s;
}

inline VectorPoint psi_gradient(Psi psi, const VectorPoint& x) {
  VectorPoint g = x;
  for (auto& v : g.coords) v = psi == Psi::SquaredNorm ? 2.0 * v : std::exp(v);
  return g;
}

namespace cost {
struct SquaredDistance {};
// d^{2 alpha}
struct Power {
  double two_alpha = 1.0;
};
// d^{2 alpha}(y,q) - d^{2 alpha}(y,o)
struct AnchoredPower {
  double two_alpha = 1.0;
  SpacePoint anchor;
};
struct Bregman {
  Psi psi = Psi::SquaredNorm;
};
}  // namespace cost

using CostDescriptor = std::variant<cost::SquaredDistance, cost::Power, cost::AnchoredPower, cost::Bregman>;

inline std::string cost_name(const CostDescriptor& c) {
  static const char* names[] = {"squared_distance", "power", "anchored_power", "bregman"};
  return names[c.index()];
}

inline void check_two_alpha(double two_alpha) {
  require(two_alpha >= 1.0 && two_alpha <= 2.0, ErrorKind::InvalidArgument, "two_alpha must lie in [1, 2]");
}

inline void validate_cost(const CostDescriptor& c, const MetricSpace& s) {
  if (const auto* p = std::get_if<cost::Power>(&c)) check_two_alpha(p->two_alpha);
  if (const auto* a = std::get_if<cost::AnchoredPower>(&c)) {
    check_two_alpha(a->two_alpha);
    require_in_space(s, a->anchor);
  }
  if (std::holds_alternative<cost::Bregman>(c))
    require(std::holds_alternative<Euclidean>(s), ErrorKind::IncompatibleSpace, "Bregman costs need a Euclidean space");
}

inline double cost_eval(const CostDescriptor& c, const MetricSpace& s, const SpacePoint& y, const SpacePoint& q) {
  if (std::holds_alternative<cost::SquaredDistance>(c)) {
    const double d = base_distance(s, y, q);
    return d * d;
  }
  if (const auto* p = std::get_if<cost::Power>(&c)) {
    check_two_alpha(p->two_alpha);
    return std::pow(base_distance(s, y, q), p->two_alpha);
  }
  if (const auto* a = std::get_if<cost::AnchoredPower>(&c)) {
    check_two_alpha(a->two_alpha);
    return std::pow(base_distance(s, y, q), a->two_alpha) - std::pow(base_distance(s, y, a->anchor), a->two_alpha);
  }
  const auto psi = std::get<cost::Bregman>(c).psi;
  require(std::holds_alternative<Euclidean>(s), ErrorKind::IncompatibleSpace, "Bregman costs need a Euclidean space");
  require_in_space(s, y);
  require_in_space(s, q);
  const auto& vy = std::get<VectorPoint>(y);
  const auto& vq = std::get<VectorPoint>(q);
  const auto g = psi_gradient(psi, vq);
  require(all_finite(g.coords), ErrorKind::InvalidArgument, "gradient of psi is not finite at q");
  return psi_value(psi, vy) - psi_value(psi, vq) - vec::dot(g, vec::sub(vy, vq));
}

// (1/n) sum_i c(Y_i, q)
inline double empirical_objective(const CostDescriptor& c, const MetricSpace& s, std::span<const SpacePoint> samples,
                                  const SpacePoint& q) {
  require(!samples.empty(), ErrorKind::EmptySample, "empirical objective needs at least one sample");
  double sum = 0.0;
  for (const auto& y : samples) sum += cost_eval(c, s, y, q);
  return sum / static_cast<double>(samples.size());
}

// sum_i w_i c(Y_i, q) with w normalized to sum 1.
inline double weighted_objective(const CostDescriptor& c, const MetricSpace& s, std::span<const SpacePoint> samples,
                                 std::span<const double> weights, const SpacePoint& q) {
  require(!samples.empty(), ErrorKind::EmptySample, "objective needs at least one sample");
  require(weights.size() == samples.size(), ErrorKind::InvalidArgument, "one weight per sample");
  double sum = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (weights[i] == 0.0) continue;
    sum += weights[i] * cost_eval(c, s, samples[i], q);
    total += weights[i];
  }
  require(total > 0.0, ErrorKind::InvalidArgument, "weights sum to zero");
  return sum / total;
}

}  // namespace frechet
