#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frechet/error.hpp"

namespace frechet {

struct VectorPoint {
  std::vector<double> coords;

  VectorPoint() = default;
  explicit VectorPoint(std::vector<double> c) : coords(std::move(c)) {}
  VectorPoint(std::initializer_list<double> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }

  friend bool operator==(const VectorPoint&, const VectorPoint&) = default;
};

// A location on a metric tree: arc length `offset` from the first endpoint of `edge`.
struct TreePoint {
  std::size_t edge = 0;
  double offset = 0.0;

  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

using SpacePoint = std::variant<VectorPoint, TreePoint>;

inline bool is_vector(const SpacePoint& p) { return std::holds_alternative<VectorPoint>(p); }
inline bool is_tree(const SpacePoint& p) { return std::holds_alternative<TreePoint>(p); }

inline const VectorPoint& as_vector(const SpacePoint& p) {
  const auto* v = std::get_if<VectorPoint>(&p);
  require(v != nullptr, ErrorKind::PointNotInSpace, "expected a vector point");
  return *v;
}

inline const TreePoint& as_tree(const SpacePoint& p) {
  const auto* t = std::get_if<TreePoint>(&p);
  require(t != nullptr, ErrorKind::PointNotInSpace, "expected a tree point");
  return *t;
}

inline bool all_finite(std::span<const double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

// Serialization used by CSV artifacts: "x;y;z" for vectors, "edge:offset" for trees.
inline std::string format_point(const SpacePoint& p) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* v = std::get_if<VectorPoint>(&p)) {
    for (std::size_t i = 0; i < v->dim(); ++i) {
      if (i) os << ';';
      os << v->coords[i];
    }
  } else {
    const auto& t = std::get<TreePoint>(p);
    os << t.edge << ':' << t.offset;
  }
  return os.str();
}

namespace vec {

inline void check_dims(const VectorPoint& a, const VectorPoint& b) {
  require(a.dim() == b.dim(), ErrorKind::PointNotInSpace, "dimension mismatch");
}

inline VectorPoint sub(const VectorPoint& a, const VectorPoint& b) {
  check_dims(a, b);
  VectorPoint r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

inline VectorPoint add(const VectorPoint& a, const VectorPoint& b) {
  check_dims(a, b);
  VectorPoint r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

inline VectorPoint scale(const VectorPoint& a, double s) {
  VectorPoint r = a;
  for (auto& x : r.coords) x *= s;
  return r;
}

inline double dot(const VectorPoint& a, const VectorPoint& b) {
  check_dims(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const VectorPoint& a) {
  double s = 0.0;
  for (double x : a.coords) s += x * x;
  return std::sqrt(s);
}

inline double dist(const VectorPoint& a, const VectorPoint& b) {
  check_dims(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// sqrt(sum_k w_k^2 x_k^2), or with w_k^{-1} when `inverse`.
inline double weighted_norm(const VectorPoint& a, std::span<const double> w, bool inverse) {
  require(w.size() == a.dim(), ErrorKind::PointNotInSpace, "weight/dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double wi = inverse ? 1.0 / w[i] : w[i];
    s += wi * wi * a[i] * a[i];
  }
  return std::sqrt(s);
}

inline VectorPoint zeros(std::size_t dim) { return VectorPoint(std::vector<double>(dim, 0.0)); }

}  // namespace vec

}  // namespace frechet
