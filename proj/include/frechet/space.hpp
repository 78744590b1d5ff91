#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/plane.hpp"
#include "frechet/point.hpp"
#include "frechet/random.hpp"
#include "frechet/tree.hpp"

namespace frechet {

struct Euclidean {
  std::size_t dim = 1;
};

// Finite truncation of a weighted sequence space; the base metric is plain l2.
struct WeightedSequence {
  std::vector<double> weights;
  std::size_t dim() const { return weights.size(); }
};

using MetricSpace = std::variant<Euclidean, WeightedSequence, MetricTree, PlaneWithHole>;

inline Euclidean euclidean(std::size_t dim) {
  require(dim >= 1, ErrorKind::InvalidArgument, "Euclidean dimension must be at least 1");
  return Euclidean{dim};
}

inline WeightedSequence weighted_sequence(std::vector<double> weights) {
  require(!weights.empty(), ErrorKind::InvalidArgument, "weighted sequence needs at least one weight");
  for (double w : weights)
    require(std::isfinite(w) && w > 0.0, ErrorKind::InvalidArgument, "weights must be strictly positive");
  return WeightedSequence{std::move(weights)};
}

inline std::string space_name(const MetricSpace& s) {
  struct V {
    std::string operator()(const Euclidean& e) const { return "euclidean" + std::to_string(e.dim); }
    std::string operator()(const WeightedSequence& w) const { return "weighted" + std::to_string(w.dim()); }
    std::string operator()(const MetricTree& t) const { return "tree" + std::to_string(t.num_edges()); }
    std::string operator()(const PlaneWithHole&) const { return "plane_with_hole"; }
  };
  return std::visit(V{}, s);
}

inline bool is_vector_space(const MetricSpace& s) {
  return std::holds_alternative<Euclidean>(s) || std::holds_alternative<WeightedSequence>(s) ||
         std::holds_alternative<PlaneWithHole>(s);
}

// Ambient coordinate dimension of a vector space (0 for trees).
inline std::size_t vector_dim(const MetricSpace& s) {
  if (const auto* e = std::get_if<Euclidean>(&s)) return e->dim;
  if (const auto* w = std::get_if<WeightedSequence>(&s)) return w->dim();
  if (std::holds_alternative<PlaneWithHole>(s)) return 2;
  return 0;
}

inline bool contains(const MetricSpace& s, const SpacePoint& p) {
  if (const auto* t = std::get_if<MetricTree>(&s)) return is_tree(p) && t->contains(std::get<TreePoint>(p));
  const auto* v = std::get_if<VectorPoint>(&p);
  if (v == nullptr || !all_finite(v->coords)) return false;
  if (const auto* h = std::get_if<PlaneWithHole>(&s)) return h->contains(*v);
  return v->dim() == vector_dim(s);
}

inline void require_in_space(const MetricSpace& s, const SpacePoint& p) {
  if (!contains(s, p)) fail(ErrorKind::PointNotInSpace, "point " + format_point(p) + " not in " + space_name(s));
}

inline SpacePoint canonical(const MetricSpace& s, const SpacePoint& p) {
  require_in_space(s, p);
  if (const auto* t = std::get_if<MetricTree>(&s)) return t->canonical(std::get<TreePoint>(p));
  return p;
}

inline double base_distance(const MetricSpace& s, const SpacePoint& x, const SpacePoint& y) {
  require_in_space(s, x);
  require_in_space(s, y);
  if (const auto* t = std::get_if<MetricTree>(&s)) return t->distance(std::get<TreePoint>(x), std::get<TreePoint>(y));
  return vec::dist(std::get<VectorPoint>(x), std::get<VectorPoint>(y));
}

// Axis-aligned sampling box for vector spaces; trees ignore it.
struct Box {
  double lo = -1.0;
  double hi = 1.0;
};

// Uniform on the box (minus the hole), or uniform by length on a tree.
inline SpacePoint sample_point(const MetricSpace& s, Rng& rng, const Box& box = {}) {
  if (const auto* t = std::get_if<MetricTree>(&s)) return t->sample(rng);
  const auto dim = vector_dim(s);
  const auto* hole = std::get_if<PlaneWithHole>(&s);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto v = vec::zeros(dim);
    for (auto& x : v.coords) x = uniform(rng, box.lo, box.hi);
    if (hole == nullptr || hole->contains(v)) return v;
  }
  fail(ErrorKind::EmptyRegion, "sampling box lies inside the excluded region");
}

}  // namespace frechet
