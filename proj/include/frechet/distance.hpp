#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/parallel.hpp"
#include "frechet/point.hpp"
#include "frechet/report.hpp"
#include "frechet/space.hpp"

namespace frechet {

namespace kind {
struct Base {};
// d^a, a in (0, 1].
struct Power {
  double a = 1.0;
};
// sqrt((d(q,p)^2 - (d(q,m) - d(p,m))^2) / (d(q,m) d(p,m))); defined in any metric space.
struct Projection {
  SpacePoint m;
};
// |(q-m)/|q-m| - (p-m)/|p-m||, vector spaces only.
struct SphereProjection {
  VectorPoint m;
};
// |x - y|_w, or with inverse weights.
struct WeightedNorm {
  std::vector<double> weights;
  bool inverse = false;
};
}  // namespace kind

using DistanceKind =
    std::variant<kind::Base, kind::Power, kind::Projection, kind::SphereProjection, kind::WeightedNorm>;

inline std::string distance_name(const DistanceKind& k) {
  static const char* names[] = {"base", "power", "projection", "sphere_projection", "weighted_norm"};
  return names[k.index()];
}

// Projection is excluded: whether it is a metric outside Euclidean space is open.
inline bool claims_triangle(const DistanceKind& k) { return !std::holds_alternative<kind::Projection>(k); }

inline VectorPoint unit_direction(const VectorPoint& x, const VectorPoint& m) {
  auto v = vec::sub(x, m);
  const double n = vec::norm(v);
  require(n > 0.0, ErrorKind::PointAtBase, "point coincides with the base point");
  return vec::scale(v, 1.0 / n);
}

inline double projection_distance(const MetricSpace& s, const SpacePoint& m, const SpacePoint& q,
                                  const SpacePoint& p) {
  const double qm = base_distance(s, q, m);
  const double pm = base_distance(s, p, m);
  require(qm > 0.0 && pm > 0.0, ErrorKind::PointAtBase, "projection distance needs points away from the base point");
  const double qp = base_distance(s, q, p);
  const double num = (qp - (qm - pm)) * (qp + (qm - pm));
  return std::sqrt(std::max(0.0, num) / (qm * pm));
}

inline double distance(const MetricSpace& s, const DistanceKind& k, const SpacePoint& x, const SpacePoint& y) {
  if (std::holds_alternative<kind::Base>(k)) return base_distance(s, x, y);
  if (const auto* pw = std::get_if<kind::Power>(&k)) {
    require(pw->a > 0.0 && pw->a <= 1.0, ErrorKind::InvalidArgument, "power exponent must lie in (0, 1]");
    return std::pow(base_distance(s, x, y), pw->a);
  }
  if (const auto* pr = std::get_if<kind::Projection>(&k)) return projection_distance(s, pr->m, x, y);

  if (!is_vector_space(s)) fail(ErrorKind::IncompatibleSpace, distance_name(k) + " needs a vector space");
  require_in_space(s, x);
  require_in_space(s, y);
  const auto& vx = std::get<VectorPoint>(x);
  const auto& vy = std::get<VectorPoint>(y);
  if (const auto* sp = std::get_if<kind::SphereProjection>(&k)) {
    require_in_space(s, sp->m);
    return vec::dist(unit_direction(vx, sp->m), unit_direction(vy, sp->m));
  }
  const auto& wn = std::get<kind::WeightedNorm>(k);
  return vec::weighted_norm(vec::sub(vx, vy), wn.weights, wn.inverse);
}

inline SpacePoint tree_geodesic_point(const MetricTree& t, const SpacePoint& x, const SpacePoint& y, double u) {
  return t.geodesic_point(as_tree(x), as_tree(y), u);
}

inline SpacePoint project_to_space(const PlaneWithHole& s, const VectorPoint& raw) { return s.project(raw); }

inline SpacePoint midpoint(const MetricSpace& s, const SpacePoint& a, const SpacePoint& b) {
  if (const auto* t = std::get_if<MetricTree>(&s)) return t->geodesic_point(as_tree(a), as_tree(b), 0.5);
  if (!std::holds_alternative<Euclidean>(s) && !std::holds_alternative<WeightedSequence>(s))
    fail(ErrorKind::IncompatibleSpace, "midpoint is not computable in " + space_name(s));
  require_in_space(s, a);
  require_in_space(s, b);
  return vec::scale(vec::add(as_vector(a), as_vector(b)), 0.5);
}

// d(m,q)^2 - [d(y1,q)^2/2 + d(y2,q)^2/2 - d(y1,y2)^2/4], m the midpoint of y1, y2.
inline double npc_inequality_check(const MetricSpace& s, const SpacePoint& y1, const SpacePoint& y2,
                                   const SpacePoint& q) {
  const auto m = midpoint(s, y1, y2);
  const auto sq = [&](const SpacePoint& a, const SpacePoint& b) {
    const double d = base_distance(s, a, b);
    return d * d;
  };
  return sq(m, q) - (0.5 * sq(y1, q) + 0.5 * sq(y2, q) - 0.25 * sq(y1, y2));
}

struct AxiomSweepOptions {
  Box box{};
  // Defaults to claims_triangle(kind); may be forced on to report the Projection case.
  std::optional<bool> check_triangle;
};

// Residual per draw is the largest of: asymmetry, negativity, nonzero self-distance,
// and d(x,z) - d(x,y) - d(y,z) when the triangle check is on.
inline ViolationReport metric_axiom_sweep(const MetricSpace& s, const DistanceKind& k, std::uint64_t trials,
                                          std::uint64_t seed, double tol, const AxiomSweepOptions& opt = {}) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  const bool triangle = opt.check_triangle.value_or(claims_triangle(k));
  const SpacePoint* base = nullptr;
  if (const auto* pr = std::get_if<kind::Projection>(&k)) base = &pr->m;
  SpacePoint sphere_base;
  if (const auto* sp = std::get_if<kind::SphereProjection>(&k)) {
    sphere_base = sp->m;
    base = &sphere_base;
  }
  return chunked_sweep(trials, seed, [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
    ViolationReport rep;
    const auto draw = [&] {
      for (;;) {
        auto p = sample_point(s, rng, opt.box);
        if (base == nullptr || base_distance(s, p, *base) > 1e-9) return p;
        ++rep.rejected;
      }
    };
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto x = draw();
      const auto y = draw();
      const auto z = draw();
      const double dxy = distance(s, k, x, y);
      const double dyx = distance(s, k, y, x);
      double residual = std::abs(dxy - dyx);
      residual = std::max(residual, -dxy);
      residual = std::max(residual, distance(s, k, x, x));
      if (triangle) residual = std::max(residual, distance(s, k, x, z) - dxy - distance(s, k, y, z));
      if (residual > tol)
        rep.record(first + i, residual, true, {x, y, z});
      else
        rep.record(first + i, residual, false);
    }
    return rep;
  });
}

}  // namespace frechet
