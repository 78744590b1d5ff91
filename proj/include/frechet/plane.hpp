#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/point.hpp"

namespace frechet {

struct DiscHole {
  VectorPoint center;
  double radius = 1.0;
};

// Interior of a simple polygon, vertices in order (either orientation).
struct PolygonHole {
  std::vector<VectorPoint> vertices;
};

using Hole = std::variant<DiscHole, PolygonHole>;

// The closed set R^2 minus a bounded open region.
class PlaneWithHole {
 public:
  // Two projection candidates are tied when their distances to the query differ
  // by less than this times (1 + distance).
  static constexpr double kTieTolerance = 1e-9;

  explicit PlaneWithHole(Hole hole) : hole_(std::move(hole)) {
    if (const auto* d = std::get_if<DiscHole>(&hole_)) {
      require(d->center.dim() == 2 && all_finite(d->center.coords), ErrorKind::InvalidArgument,
              "disc center must be a finite plane point");
      require(std::isfinite(d->radius) && d->radius > 0.0, ErrorKind::InvalidArgument,
              "disc radius must be positive");
    } else {
      const auto& poly = std::get<PolygonHole>(hole_);
      require(poly.vertices.size() >= 3, ErrorKind::InvalidArgument, "polygon needs at least three vertices");
      for (const auto& v : poly.vertices)
        require(v.dim() == 2 && all_finite(v.coords), ErrorKind::InvalidArgument,
                "polygon vertices must be finite plane points");
    }
  }

  const Hole& hole() const { return hole_; }

  bool in_hole(const VectorPoint& x) const {
    require(x.dim() == 2, ErrorKind::PointNotInSpace, "plane points have two coordinates");
    if (const auto* d = std::get_if<DiscHole>(&hole_)) return vec::dist(x, d->center) < d->radius;
    const auto& vs = std::get<PolygonHole>(hole_).vertices;
    if (boundary_distance(x) == 0.0) return false;
    bool inside = false;
    for (std::size_t i = 0, j = vs.size() - 1; i < vs.size(); j = i++) {
      const auto& a = vs[i];
      const auto& b = vs[j];
      if ((a[1] > x[1]) != (b[1] > x[1])) {
        const double xc = (b[0] - a[0]) * (x[1] - a[1]) / (b[1] - a[1]) + a[0];
        if (x[0] < xc) inside = !inside;
      }
    }
    return inside;
  }

  bool contains(const VectorPoint& x) const { return x.dim() == 2 && all_finite(x.coords) && !in_hole(x); }

  struct Projection {
    VectorPoint point;
    bool unique = true;
  };

  // Nearest point, flagging queries on the medial axis instead of failing.
  // On a tie the lowest-indexed candidate (or the +x boundary point of a disc) is returned.
  Projection project_any(const VectorPoint& raw) const {
    require(raw.dim() == 2 && all_finite(raw.coords), ErrorKind::InvalidArgument,
            "projection needs a finite plane point");
    if (!in_hole(raw)) return {raw, true};
    if (const auto* d = std::get_if<DiscHole>(&hole_)) {
      const auto offset = vec::sub(raw, d->center);
      const double rho = vec::norm(offset);
      // Radial candidate at distance r - rho, antipodal one at r + rho.
      const double nearest = d->radius - rho;
      if (2.0 * rho < kTieTolerance * (1.0 + nearest))
        return {VectorPoint{d->center[0] + d->radius, d->center[1]}, false};
      return {vec::add(d->center, vec::scale(offset, d->radius / rho)), true};
    }

    const auto& vs = std::get<PolygonHole>(hole_).vertices;
    std::vector<VectorPoint> candidates;
    std::vector<double> dists;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto c = closest_on_segment(raw, vs[i], vs[(i + 1) % vs.size()]);
      dists.push_back(vec::dist(raw, c));
      candidates.push_back(std::move(c));
    }
    const auto best = static_cast<std::size_t>(std::min_element(dists.begin(), dists.end()) - dists.begin());
    const double dmin = dists[best];
    const double tie = kTieTolerance * (1.0 + dmin);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i == best || dists[i] - dmin >= tie) continue;
      if (vec::dist(candidates[i], candidates[best]) > tie) return {candidates[best], false};
    }
    return {candidates[best], true};
  }

  // Nearest point of the space; identity on points already in the space.
  VectorPoint project(const VectorPoint& raw) const {
    auto r = project_any(raw);
    if (!r.unique) fail(ErrorKind::NonUniqueProjection, "query lies on the medial axis of the hole");
    return std::move(r.point);
  }

  // Axis-aligned box around the hole, padded by `pad`.
  std::pair<VectorPoint, VectorPoint> hole_bounds(double pad = 0.0) const {
    if (const auto* d = std::get_if<DiscHole>(&hole_))
      return {VectorPoint{d->center[0] - d->radius - pad, d->center[1] - d->radius - pad},
              VectorPoint{d->center[0] + d->radius + pad, d->center[1] + d->radius + pad}};
    VectorPoint lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    VectorPoint hi{-lo[0], -lo[1]};
    for (const auto& v : std::get<PolygonHole>(hole_).vertices)
      for (int k = 0; k < 2; ++k) {
        lo[k] = std::min(lo[k], v[k] - pad);
        hi[k] = std::max(hi[k], v[k] + pad);
      }
    return {lo, hi};
  }

 private:
  static VectorPoint closest_on_segment(const VectorPoint& x, const VectorPoint& a, const VectorPoint& b) {
    const auto ab = vec::sub(b, a);
    const double len2 = vec::dot(ab, ab);
    double t = len2 > 0.0 ? vec::dot(vec::sub(x, a), ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return vec::add(a, vec::scale(ab, t));
  }

  double boundary_distance(const VectorPoint& x) const {
    const auto& vs = std::get<PolygonHole>(hole_).vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs.size(); ++i)
      best = std::min(best, vec::dist(x, closest_on_segment(x, vs[i], vs[(i + 1) % vs.size()])));
    return best;
  }

  Hole hole_;
};

}  // namespace frechet
