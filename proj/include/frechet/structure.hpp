#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "frechet/cost.hpp"
#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/point.hpp"
#include "frechet/space.hpp"

namespace frechet {

struct QuadrupleStructure;

namespace structure {
// c = d^2, a = 2d, b = d.
struct Nice {};
// c = d^2, a = 4 D, b = d.
struct BoundedLipschitz {
  double diam = 1.0;
};
// c = d^{2 alpha}, a = 8 alpha 2^{-2 alpha} d^{2 alpha - 1}, b = d.
struct Power {
  double alpha = 1.0;
};
// c = |y-q|^2, a = 2|y-z|, b = |q-p|.
struct InnerProduct {};
// c = |y-q|^2, a = 2|y-z|_{1/s}, b = |q-p|_s.
struct WeightedIP {
  std::vector<double> weights;
};
// c = D_psi, a = |y-z|, b = |grad psi(q) - grad psi(p)|.
struct Bregman {
  Psi psi = Psi::SquaredNorm;
};
// Inner-product structure whose strong metric at m is the sphere projection (xi = 1).
struct StrongIP {
  VectorPoint m;
};
// A factor acting on the next `dim` coordinates of a vector point.
struct ProductFactor {
  std::shared_ptr<const QuadrupleStructure> structure;
  std::size_t dim = 1;
};
struct Product {
  std::vector<ProductFactor> factors;
};
// Data points are k-element sets, encoded as k concatenated base points.
struct MinOverSets {
  std::shared_ptr<const QuadrupleStructure> base;
  std::size_t k = 1;
};
}  // namespace structure

struct QuadrupleStructure {
  std::variant<structure::Nice, structure::BoundedLipschitz, structure::Power, structure::InnerProduct,
               structure::WeightedIP, structure::Bregman, structure::StrongIP, structure::Product,
               structure::MinOverSets>
      kind;
};

inline double power_constant(double alpha) { return 8.0 * alpha * std::pow(2.0, -2.0 * alpha); }

inline QuadrupleStructure product_structure(const std::vector<std::pair<QuadrupleStructure, std::size_t>>& factors) {
  require(!factors.empty(), ErrorKind::InvalidArgument, "product needs at least one factor");
  structure::Product p;
  for (const auto& [s, dim] : factors) {
    require(dim >= 1, ErrorKind::InvalidArgument, "factor dimension must be at least 1");
    p.factors.push_back({std::make_shared<const QuadrupleStructure>(s), dim});
  }
  return {p};
}

inline QuadrupleStructure min_structure(const QuadrupleStructure& base, std::size_t k) {
  require(k >= 1, ErrorKind::InvalidArgument, "set size k must be at least 1");
  require(k <= 8, ErrorKind::InvalidArgument, "set size k is limited to 8");
  return {structure::MinOverSets{std::make_shared<const QuadrupleStructure>(base), k}};
}

inline std::string structure_name(const QuadrupleStructure& st) {
  static const char* names[] = {"nice", "bounded_lipschitz", "power",   "inner_product", "weighted_ip",
                                "bregman", "strong_ip",      "product", "min_over_sets"};
  return names[st.kind.index()];
}

namespace detail {

inline VectorPoint block(const VectorPoint& v, std::size_t offset, std::size_t dim) {
  return VectorPoint(std::vector<double>(v.coords.begin() + static_cast<std::ptrdiff_t>(offset),
                                         v.coords.begin() + static_cast<std::ptrdiff_t>(offset + dim)));
}

inline std::size_t product_dim(const structure::Product& p) {
  std::size_t d = 0;
  for (const auto& f : p.factors) d += f.dim;
  return d;
}

inline void require_flat(const MetricSpace& s, const std::string& what) {
  if (!std::holds_alternative<Euclidean>(s) && !std::holds_alternative<WeightedSequence>(s))
    fail(ErrorKind::IncompatibleSpace, what + " needs a Euclidean or weighted sequence space");
}

inline const VectorPoint& vec_in(const MetricSpace& s, const SpacePoint& p) {
  require_in_space(s, p);
  return std::get<VectorPoint>(p);
}

// Splits a concatenated set point into its k members.
inline std::vector<SpacePoint> members(const MetricSpace& s, const SpacePoint& set, std::size_t k) {
  if (k == 1) return {set};
  const auto dim = vector_dim(s);
  require(dim > 0, ErrorKind::IncompatibleSpace, "set-valued data needs a vector space");
  const auto& v = as_vector(set);
  require(v.dim() == k * dim, ErrorKind::PointNotInSpace, "set point has the wrong number of coordinates");
  std::vector<SpacePoint> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(block(v, i * dim, dim));
  return out;
}

}  // namespace detail

inline void validate_structure(const QuadrupleStructure& st, const MetricSpace& s) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, structure::BoundedLipschitz>) {
          require(std::isfinite(k.diam) && k.diam > 0.0, ErrorKind::InvalidArgument, "diameter must be positive");
        } else if constexpr (std::is_same_v<T, structure::Power>) {
          require(k.alpha >= 0.5 && k.alpha <= 1.0, ErrorKind::InvalidArgument, "alpha must lie in [1/2, 1]");
        } else if constexpr (std::is_same_v<T, structure::InnerProduct>) {
          detail::require_flat(s, "inner product structure");
        } else if constexpr (std::is_same_v<T, structure::WeightedIP>) {
          detail::require_flat(s, "weighted inner product structure");
          require(k.weights.size() == vector_dim(s), ErrorKind::IncompatibleSpace, "one weight per coordinate");
          for (double w : k.weights) require(w > 0.0, ErrorKind::InvalidArgument, "weights must be positive");
        } else if constexpr (std::is_same_v<T, structure::Bregman>) {
          require(std::holds_alternative<Euclidean>(s), ErrorKind::IncompatibleSpace,
                  "Bregman structure needs a Euclidean space");
        } else if constexpr (std::is_same_v<T, structure::StrongIP>) {
          detail::require_flat(s, "strong inner product structure");
          require_in_space(s, k.m);
        } else if constexpr (std::is_same_v<T, structure::Product>) {
          require(!k.factors.empty(), ErrorKind::InvalidArgument, "product needs at least one factor");
          require(std::holds_alternative<Euclidean>(s) && vector_dim(s) == detail::product_dim(k),
                  ErrorKind::IncompatibleSpace, "product needs a Euclidean space of the summed factor dimension");
          for (const auto& f : k.factors) validate_structure(*f.structure, Euclidean{f.dim});
        } else if constexpr (std::is_same_v<T, structure::MinOverSets>) {
          require(k.k >= 1 && k.k <= 8, ErrorKind::InvalidArgument, "set size must lie in [1, 8]");
          require(k.k == 1 || is_vector_space(s), ErrorKind::IncompatibleSpace, "set-valued data needs a vector space");
          validate_structure(*k.base, s);
        }
      },
      st.kind);
}

// c(y, q). For MinOverSets, y is a concatenated set point.
inline double structure_cost(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& y,
                             const SpacePoint& q) {
  using namespace structure;
  if (const auto* pw = std::get_if<Power>(&st.kind)) return std::pow(base_distance(s, y, q), 2.0 * pw->alpha);
  if (const auto* b = std::get_if<Bregman>(&st.kind)) return cost_eval(cost::Bregman{b->psi}, s, y, q);
  if (const auto* pr = std::get_if<Product>(&st.kind)) {
    const auto& vy = detail::vec_in(s, y);
    const auto& vq = detail::vec_in(s, q);
    double sum = 0.0;
    std::size_t off = 0;
    for (const auto& f : pr->factors) {
      sum += structure_cost(*f.structure, Euclidean{f.dim}, detail::block(vy, off, f.dim), detail::block(vq, off, f.dim));
      off += f.dim;
    }
    return sum;
  }
  if (const auto* mn = std::get_if<MinOverSets>(&st.kind)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : detail::members(s, y, mn->k)) best = std::min(best, structure_cost(*mn->base, s, m, q));
    return best;
  }
  const double d = base_distance(s, y, q);
  return d * d;
}

// a(y, z).
inline double data_distance(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& y,
                            const SpacePoint& z) {
  using namespace structure;
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Nice> || std::is_same_v<T, InnerProduct> || std::is_same_v<T, StrongIP>) {
          return 2.0 * base_distance(s, y, z);
        } else if constexpr (std::is_same_v<T, BoundedLipschitz>) {
          require_in_space(s, y);
          require_in_space(s, z);
          return 4.0 * k.diam;
        } else if constexpr (std::is_same_v<T, Power>) {
          return power_constant(k.alpha) * std::pow(base_distance(s, y, z), 2.0 * k.alpha - 1.0);
        } else if constexpr (std::is_same_v<T, WeightedIP>) {
          return 2.0 * vec::weighted_norm(vec::sub(detail::vec_in(s, y), detail::vec_in(s, z)), k.weights, true);
        } else if constexpr (std::is_same_v<T, Bregman>) {
          return base_distance(s, y, z);
        } else if constexpr (std::is_same_v<T, Product>) {
          const auto& vy = detail::vec_in(s, y);
          const auto& vz = detail::vec_in(s, z);
          double sum = 0.0;
          std::size_t off = 0;
          for (const auto& f : k.factors) {
            const double a = data_distance(*f.structure, Euclidean{f.dim}, detail::block(vy, off, f.dim),
                                           detail::block(vz, off, f.dim));
            sum += a * a;
            off += f.dim;
          }
          return std::sqrt(sum);
        } else {
          double worst = 0.0;
          const auto ys = detail::members(s, y, k.k);
          const auto zs = detail::members(s, z, k.k);
          for (const auto& a : ys)
            for (const auto& b : zs) worst = std::max(worst, data_distance(*k.base, s, a, b));
          return worst;
        }
      },
      st.kind);
}

// b(q, p), the weak descriptor metric.
inline double descriptor_distance(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& q,
                                  const SpacePoint& p) {
  using namespace structure;
  if (const auto* w = std::get_if<WeightedIP>(&st.kind))
    return vec::weighted_norm(vec::sub(detail::vec_in(s, q), detail::vec_in(s, p)), w->weights, false);
  if (const auto* b = std::get_if<Bregman>(&st.kind))
    return vec::dist(psi_gradient(b->psi, detail::vec_in(s, q)), psi_gradient(b->psi, detail::vec_in(s, p)));
  if (const auto* pr = std::get_if<Product>(&st.kind)) {
    const auto& vq = detail::vec_in(s, q);
    const auto& vp = detail::vec_in(s, p);
    double sum = 0.0;
    std::size_t off = 0;
    for (const auto& f : pr->factors) {
      const double b = descriptor_distance(*f.structure, Euclidean{f.dim}, detail::block(vq, off, f.dim),
                                           detail::block(vp, off, f.dim));
      sum += b * b;
      off += f.dim;
    }
    return std::sqrt(sum);
  }
  if (const auto* mn = std::get_if<MinOverSets>(&st.kind)) return descriptor_distance(*mn->base, s, q, p);
  return base_distance(s, q, p);
}

// Data space of the structure: concatenated set points for MinOverSets.
inline MetricSpace data_space(const QuadrupleStructure& st, const MetricSpace& s) {
  if (const auto* mn = std::get_if<structure::MinOverSets>(&st.kind); mn && mn->k > 1)
    return Euclidean{mn->k * vector_dim(s)};
  return s;
}

inline SpacePoint sample_data(const QuadrupleStructure& st, const MetricSpace& s, Rng& rng, const Box& box = {}) {
  if (const auto* mn = std::get_if<structure::MinOverSets>(&st.kind); mn && mn->k > 1) {
    std::vector<double> coords;
    for (std::size_t i = 0; i < mn->k; ++i) {
      const auto m = as_vector(sample_data(*mn->base, s, rng, box));
      coords.insert(coords.end(), m.coords.begin(), m.coords.end());
    }
    return VectorPoint(std::move(coords));
  }
  return sample_point(s, rng, box);
}

struct QuadrupleTerms {
  double lhs = 0.0;    // c(y,q) - c(y,p) - c(z,q) + c(z,p)
  double bound = 0.0;  // a(y,z) b(q,p)
  double residual() const { return lhs - bound; }
};

inline QuadrupleTerms weak_quadruple_terms(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& y,
                                           const SpacePoint& z, const SpacePoint& q, const SpacePoint& p) {
  const double lhs = structure_cost(st, s, y, q) - structure_cost(st, s, y, p) - structure_cost(st, s, z, q) +
                     structure_cost(st, s, z, p);
  return {lhs, data_distance(st, s, y, z) * descriptor_distance(st, s, q, p)};
}

inline double weak_quadruple_residual(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& y,
                                      const SpacePoint& z, const SpacePoint& q, const SpacePoint& p) {
  return weak_quadruple_terms(st, s, y, z, q, p).residual();
}

// Strong quadruple metric b_m at m.
//
// With xi = 1 the structures that have a dedicated metric use it (the projection
// metric for Nice, sphere projections for the inner-product family, the gradient
// form for Bregman). Otherwise the weak-to-strong metric 2^xi b(q,p)^{1-xi} is
// used; it is valid when the loss equals the descriptor metric b.
inline double strong_metric(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& m, double xi,
                            const SpacePoint& q, const SpacePoint& p) {
  using namespace structure;
  if (xi == 1.0) {
    if (std::holds_alternative<Nice>(st.kind)) return projection_distance(s, m, q, p);
    if (std::holds_alternative<InnerProduct>(st.kind) || std::holds_alternative<StrongIP>(st.kind))
      return distance(s, kind::SphereProjection{as_vector(m)}, q, p);
    if (const auto* w = std::get_if<WeightedIP>(&st.kind)) {
      const auto& vm = as_vector(m);
      const auto diff = vec::sub(unit_direction(detail::vec_in(s, q), vm), unit_direction(detail::vec_in(s, p), vm));
      return vec::weighted_norm(diff, w->weights, false);
    }
    if (const auto* b = std::get_if<Bregman>(&st.kind)) {
      const auto& vm = detail::vec_in(s, m);
      const auto& vq = detail::vec_in(s, q);
      const auto& vp = detail::vec_in(s, p);
      const double nq = vec::dist(vq, vm);
      const double np = vec::dist(vp, vm);
      require(nq > 0.0 && np > 0.0, ErrorKind::PointAtBase, "strong metric needs points away from m");
      const auto gm = psi_gradient(b->psi, vm);
      const auto tq = vec::scale(vec::sub(psi_gradient(b->psi, vq), gm), 1.0 / nq);
      const auto tp = vec::scale(vec::sub(psi_gradient(b->psi, vp), gm), 1.0 / np);
      return vec::dist(tq, tp);
    }
  }
  return std::pow(2.0, xi) * std::pow(descriptor_distance(st, s, q, p), 1.0 - xi);
}

struct StrongTerms {
  double lhs = 0.0;
  double bound = 0.0;
  double residual() const { return lhs - bound; }
};

// Difference of the two normalized quadruple quotients, and a(y,z) b_m(q,p).
inline StrongTerms strong_quadruple_terms(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& m,
                                          double xi, const DistanceKind& loss, const SpacePoint& y,
                                          const SpacePoint& z, const SpacePoint& q, const SpacePoint& p) {
  require(xi >= 0.0 && xi <= 1.0, ErrorKind::InvalidArgument, "xi must lie in [0, 1]");
  const double lq = distance(s, loss, m, q);
  const double lp = distance(s, loss, m, p);
  require(lq > 0.0 && lp > 0.0, ErrorKind::PointAtBase, "strong residual needs loss(m,q), loss(m,p) > 0");
  const double cym = structure_cost(st, s, y, m);
  const double czm = structure_cost(st, s, z, m);
  const double tq = (structure_cost(st, s, y, q) - cym - structure_cost(st, s, z, q) + czm) / std::pow(lq, xi);
  const double tp = (structure_cost(st, s, y, p) - cym - structure_cost(st, s, z, p) + czm) / std::pow(lp, xi);
  return {tq - tp, data_distance(st, s, y, z) * strong_metric(st, s, m, xi, q, p)};
}

inline double strong_quadruple_residual(const QuadrupleStructure& st, const MetricSpace& s, const SpacePoint& m,
                                        double xi, const DistanceKind& loss, const SpacePoint& y,
                                        const SpacePoint& z, const SpacePoint& q, const SpacePoint& p) {
  return strong_quadruple_terms(st, s, m, xi, loss, y, z, q, p).residual();
}

}  // namespace frechet
