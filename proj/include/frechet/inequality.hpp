#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/parallel.hpp"
#include "frechet/report.hpp"
#include "frechet/space.hpp"
#include "frechet/structure.hpp"

namespace frechet {

inline constexpr double kDefaultRelTol = 1e-9;

inline bool exceeds(double residual, double lhs, double rel_tol) {
  return residual > rel_tol * (1.0 + std::abs(lhs));
}

struct SweepOptions {
  Box box{};
  unsigned workers = 0;
};

// Weak quadruple inequality on random (y, z, q, p).
inline ViolationReport sweep_structure(const MetricSpace& s, const QuadrupleStructure& st, std::uint64_t trials,
                                       std::uint64_t seed, double rel_tol = kDefaultRelTol,
                                       const SweepOptions& opt = {}) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  validate_structure(st, s);
  return chunked_sweep(
      trials, seed,
      [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
        ViolationReport rep;
        for (std::uint64_t i = 0; i < count; ++i) {
          const auto y = sample_data(st, s, rng, opt.box);
          const auto z = sample_data(st, s, rng, opt.box);
          const auto q = sample_point(s, rng, opt.box);
          const auto p = sample_point(s, rng, opt.box);
          const auto t = weak_quadruple_terms(st, s, y, z, q, p);
          const bool bad = exceeds(t.residual(), t.lhs, rel_tol);
          if (bad)
            rep.record(first + i, t.residual(), true, {y, z, q, p});
          else
            rep.record(first + i, t.residual(), false);
        }
        return rep;
      },
      opt.workers);
}

// ---------------------------------------------------------------------------
// Arithmetic form of the power inequality.

struct ArithmeticQuadruple {
  double a = 0.0, b = 0.0, c = 0.0;
  double r = 0.0, s = 0.0;
  double alpha = 1.0;
};

struct ArithmeticTerms {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return lhs - rhs; }
};

inline ArithmeticTerms arithmetic_form_terms(const ArithmeticQuadruple& q) {
  const double al = q.alpha;
  const double t1 = std::max(0.0, q.a * q.a - 2.0 * q.r * q.a * q.b + q.b * q.b);
  const double t2 = std::max(0.0, q.c * q.c - 2.0 * q.s * q.c * q.b + q.b * q.b);
  const double lhs = std::pow(q.a, 2.0 * al) - std::pow(q.c, 2.0 * al) - std::pow(t1, al) + std::pow(t2, al);
  const double mx = std::max(q.r * q.a - q.s * q.c, std::abs(q.a - q.c));
  const double rhs = power_constant(al) * q.b * std::pow(mx, 2.0 * al - 1.0);
  return {lhs, rhs};
}

inline double arithmetic_form_check(const ArithmeticQuadruple& q) { return arithmetic_form_terms(q).residual(); }

// Reals in [0, 10], half of the draws log-uniform in [1e-3, 10]; occasional
// boundary values for r, s and alpha.
inline ArithmeticQuadruple sample_arithmetic(Rng& rng) {
  const auto real = [&] { return coin(rng, 0.5) ? uniform(rng, 0.0, 10.0) : log_uniform(rng, 1e-3, 10.0); };
  const auto unit = [&] {
    if (coin(rng, 0.1)) return coin(rng, 0.5) ? 1.0 : -1.0;
    return uniform(rng, -1.0, 1.0);
  };
  ArithmeticQuadruple q;
  q.a = real();
  q.b = real();
  q.c = coin(rng, 0.05) ? q.a : real();
  q.r = unit();
  q.s = unit();
  q.alpha = coin(rng, 0.1) ? (coin(rng, 0.5) ? 0.5 : 1.0) : uniform(rng, 0.5, 1.0);
  return q;
}

inline ViolationReport arithmetic_form_sweep(std::uint64_t trials, std::uint64_t seed,
                                             double rel_tol = kDefaultRelTol, unsigned workers = 0) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  return chunked_sweep(
      trials, seed,
      [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
        ViolationReport rep;
        for (std::uint64_t i = 0; i < count; ++i) {
          const auto q = sample_arithmetic(rng);
          const auto t = arithmetic_form_terms(q);
          const bool bad = exceeds(t.residual(), t.lhs, rel_tol);
          if (bad)
            rep.record(first + i, t.residual(), true, {}, {q.a, q.b, q.c, q.r, q.s, q.alpha});
          else
            rep.record(first + i, t.residual(), false);
        }
        return rep;
      },
      workers);
}

// ---------------------------------------------------------------------------
// Optimality of the power constant.

enum class OptimalityCase { A, B, C };

struct SixDistances {
  double yq, yp, zq, zp, yz, qp;
};

inline SixDistances optimality_distances(OptimalityCase c, double eps) {
  switch (c) {
    case OptimalityCase::A: return {1 - eps, 1 - 3 * eps, 1 - 2 * eps, 1, 2 - 3 * eps, 2 * eps};
    case OptimalityCase::B: return {1, eps, 1 - eps, 2 * eps, 2 * eps, 1};
    case OptimalityCase::C: return {2 * eps, eps, 1, 1, 1, eps};
  }
  fail(ErrorKind::InvalidArgument, "unknown optimality case");
}

inline double optimality_case(OptimalityCase c, double alpha, double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  switch (c) {
    case OptimalityCase::A:
      require(alpha >= 0.5 && alpha <= 1.0, ErrorKind::InvalidArgument, "case (a) needs alpha in [1/2, 1]");
      break;
    case OptimalityCase::B: require(alpha > 1.0, ErrorKind::InvalidArgument, "case (b) needs alpha > 1"); break;
    case OptimalityCase::C:
      require(alpha > 0.0 && alpha < 0.5, ErrorKind::InvalidArgument, "case (c) needs alpha in (0, 1/2)");
      break;
  }
  const auto d = optimality_distances(c, eps);
  const double e = 2.0 * alpha;
  const double num = std::pow(d.yq, e) - std::pow(d.yp, e) - std::pow(d.zq, e) + std::pow(d.zp, e);
  return num / (std::pow(d.yz, e - 1.0) * d.qp);
}

// ---------------------------------------------------------------------------
// Tripod configuration against the projection metric.

struct TripodCounterexample {
  double left_side = 0.0;      // difference of the two normalized quotients
  double a_over_k = 0.0;       // d(y,z) * d_proj(q,p); the bound is K times this
  double required_k = 0.0;     // left_side / a_over_k, from direct distances
  double formula_k = 0.0;      // sqrt(2 (r + eps) / eps)
  bool left_matches = false;   // left_side == 2 eps to relative 1e-10
};

// Pods are edges 0, 1, 2 of a tripod with arms of length r. y, p on pod 1 at
// eps, z at the hub, q on pod 2 at r, m on pod 3 at r.
inline TripodCounterexample tripod_strong_counterexample(double r, double eps) {
  require(std::isfinite(r) && std::isfinite(eps) && eps > 0.0 && r >= eps, ErrorKind::InvalidArgument,
          "tripod configuration needs r >= eps > 0");
  const MetricSpace s = MetricTree::tripod(r);
  const SpacePoint y = TreePoint{0, eps};
  const SpacePoint z = TreePoint{0, 0.0};
  const SpacePoint q = TreePoint{1, r};
  const SpacePoint p = TreePoint{0, eps};
  const SpacePoint m = TreePoint{2, r};
  const auto terms = strong_quadruple_terms({structure::Nice{}}, s, m, 1.0, kind::Base{}, y, z, q, p);
  TripodCounterexample out;
  out.left_side = terms.lhs;
  out.a_over_k = base_distance(s, y, z) * projection_distance(s, m, q, p);
  out.required_k = out.left_side / out.a_over_k;
  out.formula_k = std::sqrt(2.0 * (r + eps) / eps);
  out.left_matches = std::abs(out.left_side - 2.0 * eps) <= 1e-10 * 2.0 * eps;
  return out;
}

// ---------------------------------------------------------------------------
// Weak implies strong.

struct WeakStrongTerms {
  double lhs = 0.0;
  double bound = 0.0;
  double residual() const { return lhs - bound; }
};

// Empty when b(q,m) or b(p,m) vanishes (the draw lies outside the punctured space).
inline std::optional<WeakStrongTerms> weak_implies_strong_terms(const QuadrupleStructure& st, const MetricSpace& s,
                                                                double xi, const SpacePoint& m, const SpacePoint& y,
                                                                const SpacePoint& z, const SpacePoint& q,
                                                                const SpacePoint& p) {
  require(xi >= 0.0 && xi <= 1.0, ErrorKind::InvalidArgument, "xi must lie in [0, 1]");
  const double bq = descriptor_distance(st, s, q, m);
  const double bp = descriptor_distance(st, s, p, m);
  if (!(bq > 0.0) || !(bp > 0.0)) return std::nullopt;
  const double cym = structure_cost(st, s, y, m);
  const double czm = structure_cost(st, s, z, m);
  const double tq = (structure_cost(st, s, y, q) - cym - structure_cost(st, s, z, q) + czm) / std::pow(bq, xi);
  const double tp = (structure_cost(st, s, y, p) - cym - structure_cost(st, s, z, p) + czm) / std::pow(bp, xi);
  const double bound =
      std::pow(2.0, xi) * data_distance(st, s, y, z) * std::pow(descriptor_distance(st, s, q, p), 1.0 - xi);
  return WeakStrongTerms{tq - tp, bound};
}

inline ViolationReport weak_implies_strong_check(const MetricSpace& s, const QuadrupleStructure& st, double xi,
                                                 const SpacePoint& m, std::uint64_t trials, std::uint64_t seed,
                                                 double rel_tol = kDefaultRelTol, const SweepOptions& opt = {}) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  validate_structure(st, s);
  require_in_space(s, m);
  return chunked_sweep(
      trials, seed,
      [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
        ViolationReport rep;
        std::uint64_t done = 0;
        while (done < count) {
          const auto y = sample_data(st, s, rng, opt.box);
          const auto z = sample_data(st, s, rng, opt.box);
          const auto q = sample_point(s, rng, opt.box);
          const auto p = sample_point(s, rng, opt.box);
          const auto t = weak_implies_strong_terms(st, s, xi, m, y, z, q, p);
          if (!t) {
            ++rep.rejected;
            continue;
          }
          const bool bad = exceeds(t->residual(), t->lhs, rel_tol);
          if (bad)
            rep.record(first + done, t->residual(), true, {y, z, q, p});
          else
            rep.record(first + done, t->residual(), false);
          ++done;
        }
        return rep;
      },
      opt.workers);
}

// ---------------------------------------------------------------------------
// Quadrilateral cosine.

inline double quadrilateral_cosine(const MetricSpace& s, const SpacePoint& y, const SpacePoint& z,
                                   const SpacePoint& q, const SpacePoint& p) {
  const double yz = base_distance(s, y, z);
  const double qp = base_distance(s, q, p);
  require(yz > 0.0 && qp > 0.0, ErrorKind::InvalidArgument, "quadrilateral cosine needs y != z and q != p");
  const auto sq = [&](const SpacePoint& a, const SpacePoint& b) {
    const double d = base_distance(s, a, b);
    return d * d;
  };
  return (sq(y, q) - sq(y, p) - sq(z, q) + sq(z, p)) / (-2.0 * yz * qp);
}

// Residual per draw is cosq - 1.
inline ViolationReport quadrilateral_cosine_sweep(const MetricSpace& s, std::uint64_t trials, std::uint64_t seed,
                                                  double tol = kDefaultRelTol, const SweepOptions& opt = {}) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  return chunked_sweep(
      trials, seed,
      [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
        ViolationReport rep;
        std::uint64_t done = 0;
        while (done < count) {
          const auto y = sample_point(s, rng, opt.box);
          const auto z = sample_point(s, rng, opt.box);
          const auto q = sample_point(s, rng, opt.box);
          const auto p = sample_point(s, rng, opt.box);
          if (!(base_distance(s, y, z) > 1e-12) || !(base_distance(s, q, p) > 1e-12)) {
            ++rep.rejected;
            continue;
          }
          const double r = quadrilateral_cosine(s, y, z, q, p) - 1.0;
          if (r > tol)
            rep.record(first + done, r, true, {y, z, q, p});
          else
            rep.record(first + done, r, false);
          ++done;
        }
        return rep;
      },
      opt.workers);
}

}  // namespace frechet
