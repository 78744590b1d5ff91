#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frechet/cost.hpp"
#include "frechet/error.hpp"
#include "frechet/point.hpp"
#include "frechet/space.hpp"
#include "frechet/stats.hpp"

namespace frechet {

enum class MeanMethod { Auto, ClosedForm, Weiszfeld, Subgradient, EdgeScan, Grid };
enum class MeanStatus { Converged, MaxIter, Degenerate };

inline std::string method_name(MeanMethod m) {
  static const char* names[] = {"auto", "closed_form", "weiszfeld", "subgradient", "edge_scan", "grid"};
  return names[static_cast<int>(m)];
}

inline MeanMethod parse_method(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(MeanMethod::Grid); ++i)
    if (method_name(static_cast<MeanMethod>(i)) == s) return static_cast<MeanMethod>(i);
  fail(ErrorKind::InvalidArgument, "unknown estimator method '" + s + "'");
}

inline std::string status_name(MeanStatus s) {
  static const char* names[] = {"converged", "max_iter", "degenerate"};
  return names[static_cast<int>(s)];
}

// Ties between candidates always go to the lowest index (vertices, then edges;
// samples in input order; grid points in lexicographic order).
struct EstimatorConfig {
  MeanMethod method = MeanMethod::Auto;
  double tol = 1e-10;
  int max_iter = 1000;
  double grid_step = 1e-3;
  std::optional<Box> box;
  bool trace = false;
};

struct MeanResult {
  SpacePoint point;
  double objective = 0.0;
  int iterations = 0;
  MeanStatus status = MeanStatus::Converged;
  std::vector<double> trace;  // objective after each accepted iterate
};

inline void validate_config(const EstimatorConfig& c) {
  require(std::isfinite(c.tol) && c.tol > 0.0, ErrorKind::InvalidArgument, "estimator tol must be positive");
  require(c.max_iter >= 1, ErrorKind::InvalidArgument, "estimator max_iter must be at least 1");
  require(std::isfinite(c.grid_step) && c.grid_step > 0.0, ErrorKind::InvalidArgument, "grid_step must be positive");
  if (c.box) require(c.box->lo < c.box->hi, ErrorKind::InvalidArgument, "box needs lo < hi");
}

namespace estimator_detail {

// Exponent p of a cost of the form d^p (+ const in q).
inline double cost_exponent(const CostDescriptor& c) {
  if (std::holds_alternative<cost::SquaredDistance>(c)) return 2.0;
  if (const auto* p = std::get_if<cost::Power>(&c)) return p->two_alpha;
  if (const auto* a = std::get_if<cost::AnchoredPower>(&c)) return a->two_alpha;
  fail(ErrorKind::IncompatibleSpace, "cost " + cost_name(c) + " is not a power of the distance");
}

inline void check_samples(const MetricSpace& s, std::span<const SpacePoint> samples) {
  require(!samples.empty(), ErrorKind::EmptySample, "Frechet mean needs at least one sample");
  for (const auto& y : samples) require_in_space(s, y);
}

inline VectorPoint arithmetic_mean(std::span<const SpacePoint> samples) {
  auto m = vec::zeros(as_vector(samples[0]).dim());
  for (const auto& y : samples) {
    const auto& v = std::get<VectorPoint>(y);
    for (std::size_t k = 0; k < m.dim(); ++k) m[k] += v[k];
  }
  return vec::scale(m, 1.0 / static_cast<double>(samples.size()));
}

// sum_i d_i^p / n for raw vectors, skipping the variant plumbing in hot loops.
inline double power_objective(const std::vector<std::vector<double>>& ys, const std::vector<double>& q, double p) {
  double sum = 0.0;
  for (const auto& y : ys) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) d2 += (y[k] - q[k]) * (y[k] - q[k]);
    sum += p == 2.0 ? d2 : std::pow(d2, 0.5 * p);
  }
  return sum / static_cast<double>(ys.size());
}

// Replaces the result by the best sample point if one beats it (first such sample on ties).
inline void compare_with_samples(const CostDescriptor& c, const MetricSpace& s, std::span<const SpacePoint> samples,
                                 const std::vector<std::vector<double>>& ys, double p, MeanResult& r) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double f = power_objective(ys, ys[i], p);
    if (f < best) {
      best = f;
      arg = i;
    }
  }
  const double f = empirical_objective(c, s, samples, samples[arg]);
  if (f < r.objective) {
    r.objective = f;
    r.point = samples[arg];
  }
}

inline double weighted_median(std::vector<std::pair<double, double>> xw) {
  std::sort(xw.begin(), xw.end());
  double total = 0.0;
  for (const auto& [x, w] : xw) total += w;
  double acc = 0.0;
  for (const auto& [x, w] : xw) {
    acc += w;
    if (acc >= 0.5 * total) return x;
  }
  return xw.back().first;
}

// Majorize-minimize iteration for sum d_i^p, p in [1, 2): reweighted averages with
// w_i = d_i^(p-2). For p = 1 the Vardi-Zhang step handles iterates sitting on a sample;
// otherwise distances are clamped to tol. A step that fails to decrease the
// objective is halved, so the accepted objectives are monotone.
inline MeanResult weiszfeld(const std::vector<std::vector<double>>& ys, double p, const EstimatorConfig& cfg) {
  const std::size_t dim = ys[0].size();
  std::vector<double> q(dim, 0.0);
  for (const auto& y : ys)
    for (std::size_t k = 0; k < dim; ++k) q[k] += y[k] / static_cast<double>(ys.size());
  double f = power_objective(ys, q, p);
  MeanResult r;
  if (cfg.trace) r.trace.push_back(f);
  r.status = MeanStatus::MaxIter;
  std::vector<double> next(dim), pull(dim);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    r.iterations = it;
    std::fill(next.begin(), next.end(), 0.0);
    std::fill(pull.begin(), pull.end(), 0.0);
    double wsum = 0.0;
    double coincident = 0.0;
    for (const auto& y : ys) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (y[k] - q[k]) * (y[k] - q[k]);
      double d = std::sqrt(d2);
      if (p == 1.0 && d <= cfg.tol) {
        coincident += 1.0;
        continue;
      }
      d = std::max(d, cfg.tol);
      const double w = std::pow(d, p - 2.0);
      wsum += w;
      for (std::size_t k = 0; k < dim; ++k) {
        next[k] += w * y[k];
        pull[k] += w * (y[k] - q[k]);
      }
    }
    if (wsum == 0.0) {
      r.status = MeanStatus::Converged;
      break;
    }
    for (std::size_t k = 0; k < dim; ++k) next[k] /= wsum;
    if (coincident > 0.0) {
      double pn = 0.0;
      for (double v : pull) pn += v * v;
      pn = std::sqrt(pn);
      const double lam = pn > 0.0 ? std::min(1.0, coincident / pn) : 1.0;
      for (std::size_t k = 0; k < dim; ++k) next[k] = (1.0 - lam) * next[k] + lam * q[k];
    }
    double step = 0.0, qn = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      step += (next[k] - q[k]) * (next[k] - q[k]);
      qn += q[k] * q[k];
    }
    step = std::sqrt(step);
    double fn = power_objective(ys, next, p);
    // Backtrack towards q until the objective does not increase.
    for (int h = 0; h < 40 && fn > f; ++h) {
      for (std::size_t k = 0; k < dim; ++k) next[k] = 0.5 * (next[k] + q[k]);
      fn = power_objective(ys, next, p);
      step *= 0.5;
    }
    if (fn > f) {
      r.status = MeanStatus::Converged;
      break;
    }
    q = next;
    f = fn;
    if (cfg.trace) r.trace.push_back(f);
    if (step <= cfg.tol * (1.0 + std::sqrt(qn))) {
      r.status = MeanStatus::Converged;
      break;
    }
  }
  r.point = VectorPoint(q);
  r.objective = f;
  return r;
}

// Plain subgradient descent with step size scale / sqrt(k); keeps the best iterate.
inline MeanResult subgradient(const std::vector<std::vector<double>>& ys, double p, const EstimatorConfig& cfg) {
  const std::size_t dim = ys[0].size();
  std::vector<double> q(dim, 0.0);
  for (const auto& y : ys)
    for (std::size_t k = 0; k < dim; ++k) q[k] += y[k] / static_cast<double>(ys.size());
  double spread = 0.0;
  for (const auto& y : ys) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) d2 += (y[k] - q[k]) * (y[k] - q[k]);
    spread = std::max(spread, std::sqrt(d2));
  }
  const double scale = spread > 0.0 ? spread : 1.0;
  MeanResult r;
  r.status = MeanStatus::MaxIter;
  auto best = q;
  double fbest = power_objective(ys, q, p);
  if (cfg.trace) r.trace.push_back(fbest);
  std::vector<double> g(dim);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    r.iterations = it;
    std::fill(g.begin(), g.end(), 0.0);
    for (const auto& y : ys) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (q[k] - y[k]) * (q[k] - y[k]);
      const double d = std::sqrt(d2);
      if (d == 0.0) continue;
      const double w = p * std::pow(d, p - 2.0) / static_cast<double>(ys.size());
      for (std::size_t k = 0; k < dim; ++k) g[k] += w * (q[k] - y[k]);
    }
    double gn = 0.0;
    for (double v : g) gn += v * v;
    gn = std::sqrt(gn);
    if (gn <= cfg.tol) {
      r.status = MeanStatus::Converged;
      break;
    }
    const double eta = scale / std::sqrt(static_cast<double>(it)) / std::max(1.0, gn);
    for (std::size_t k = 0; k < dim; ++k) q[k] -= eta * g[k];
    const double f = power_objective(ys, q, p);
    if (f < fbest) {
      fbest = f;
      best = q;
    }
    if (cfg.trace) r.trace.push_back(fbest);
  }
  r.point = VectorPoint(best);
  r.objective = fbest;
  return r;
}

}  // namespace estimator_detail

// Mean on R^d or a (truncated) weighted sequence space.
inline MeanResult frechet_mean_vector(const CostDescriptor& c, const MetricSpace& s, std::span<const SpacePoint> samples,
                                      const EstimatorConfig& cfg = {}) {
  using namespace estimator_detail;
  validate_config(cfg);
  require(std::holds_alternative<Euclidean>(s) || std::holds_alternative<WeightedSequence>(s),
          ErrorKind::IncompatibleSpace, "frechet_mean_vector needs a Euclidean or weighted sequence space");
  validate_cost(c, s);
  check_samples(s, samples);

  MeanResult r;
  const bool mean_is_closed = std::holds_alternative<cost::SquaredDistance>(c) || std::holds_alternative<cost::Bregman>(c);
  if (mean_is_closed || (cost_exponent(c) == 2.0 && cfg.method == MeanMethod::Auto)) {
    // Bregman: argmin_q sum D(y_i, q) is the arithmetic mean for every psi.
    r.point = arithmetic_mean(samples);
    r.objective = empirical_objective(c, s, samples, r.point);
    if (cfg.trace) r.trace.push_back(r.objective);
    return r;
  }

  const double p = cost_exponent(c);
  std::vector<std::vector<double>> ys;
  ys.reserve(samples.size());
  for (const auto& y : samples) ys.push_back(std::get<VectorPoint>(y).coords);

  auto method = cfg.method;
  if (method == MeanMethod::Auto) method = (p == 1.0 && ys[0].size() == 1) ? MeanMethod::ClosedForm : MeanMethod::Weiszfeld;
  if (method == MeanMethod::ClosedForm) {
    require(p == 1.0 && ys[0].size() == 1, ErrorKind::InvalidArgument,
            "closed form is only available for squared distance or the median on the line");
    std::vector<std::pair<double, double>> xw;
    for (const auto& y : ys) xw.emplace_back(y[0], 1.0);
    r.point = VectorPoint{weighted_median(std::move(xw))};
  } else if (method == MeanMethod::Weiszfeld) {
    r = weiszfeld(ys, p, cfg);
  } else if (method == MeanMethod::Subgradient) {
    r = subgradient(ys, p, cfg);
  } else {
    fail(ErrorKind::InvalidArgument, "method " + method_name(method) + " does not apply to vector spaces");
  }
  r.objective = empirical_objective(c, s, samples, r.point);
  // The line median is exact; iterative answers are checked against the data.
  if (method != MeanMethod::ClosedForm) compare_with_samples(c, s, samples, ys, p, r);
  return r;
}

// Mean on a metric tree. Along an edge of length L every sample sits at a signed
// position c_i (its offset if on the edge, -d(y, from) or L + d(y, to) otherwise),
// so the edge objective is sum w_i |t - c_i|^p: exact weighted mean for p = 2,
// golden section plus the neighbouring kinks otherwise. Vertices are candidates too.
inline MeanResult frechet_mean_tree(const CostDescriptor& c, const MetricTree& tree, std::span<const SpacePoint> samples,
                                    const EstimatorConfig& cfg = {}, std::span<const double> weights = {}) {
  using namespace estimator_detail;
  validate_config(cfg);
  const MetricSpace s = tree;
  validate_cost(c, s);
  check_samples(s, samples);
  require(weights.empty() || weights.size() == samples.size(), ErrorKind::InvalidArgument, "one weight per sample");
  const double p = cost_exponent(c);
  const std::size_t n = samples.size();
  std::vector<double> w(n, 1.0);
  if (!weights.empty()) w.assign(weights.begin(), weights.end());

  std::vector<TreePoint> locs;
  for (const auto& y : samples) locs.push_back(tree.canonical(std::get<TreePoint>(y)));
  auto dist_to_vertex = [&](std::size_t i, std::size_t v) {
    const auto& e = tree.edge(locs[i].edge);
    return std::min(locs[i].offset + tree.vertex_distance(e.from, v),
                    e.length - locs[i].offset + tree.vertex_distance(e.to, v));
  };

  // Signed positions along every edge.
  const std::size_t E = tree.num_edges();
  std::vector<std::vector<double>> pos(E, std::vector<double>(n));
  for (std::size_t e = 0; e < E; ++e) {
    const auto& edge = tree.edge(e);
    for (std::size_t i = 0; i < n; ++i) {
      if (locs[i].edge == e) {
        pos[e][i] = locs[i].offset;
        continue;
      }
      const double a = dist_to_vertex(i, edge.from);
      const double b = dist_to_vertex(i, edge.to);
      pos[e][i] = a <= b ? -a : edge.length + b;
    }
  }
  auto f = [&](std::size_t e, double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::abs(t - pos[e][i]);
      sum += w[i] * (p == 2.0 ? d * d : std::pow(d, p));
    }
    return sum;
  };

  double best_f = std::numeric_limits<double>::infinity();
  TreePoint best_q;
  auto consider = [&](std::size_t e, double t) {
    const double v = f(e, t);
    if (v < best_f) {
      best_f = v;
      best_q = tree.canonical({e, t});
    }
  };
  for (std::size_t v = 0; v < tree.num_vertices(); ++v) {
    const auto q = tree.vertex_point(v);
    consider(q.edge, q.offset);
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  bool capped = false;
  int total_iter = 0;
  for (std::size_t e = 0; e < E; ++e) {
    const double len = tree.edge(e).length;
    if (p == 2.0) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        num += w[i] * pos[e][i];
        den += w[i];
      }
      consider(e, std::clamp(num / den, 0.0, len));
      ++total_iter;
      continue;
    }
    double a = 0.0, b = len;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(e, x1), f2 = f(e, x2);
    int it = 0;
    while (b - a > cfg.tol * (1.0 + len)) {
      if (++it > cfg.max_iter) {
        capped = true;
        break;
      }
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = f(e, x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = f(e, x2);
      }
    }
    total_iter += it;
    const double t = std::clamp(0.5 * (a + b), 0.0, len);
    consider(e, t);
    // Kinks of the edge objective on either side of t (exact minima for p = 1).
    double below = -1.0, above = len + 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (locs[i].edge != e) continue;
      const double o = locs[i].offset;
      if (o <= t && o > below) below = o;
      if (o >= t && o < above) above = o;
    }
    if (below >= 0.0) consider(e, below);
    if (above <= len) consider(e, above);
  }
  MeanResult best;
  best.point = best_q;
  best.iterations = total_iter;
  best.status = capped ? MeanStatus::MaxIter : MeanStatus::Converged;
  best.objective = weights.empty() ? empirical_objective(c, s, samples, best.point)
                                   : weighted_objective(c, s, samples, w, best.point);
  if (cfg.trace) best.trace.push_back(best.objective);
  return best;
}

// Squared-distance mean on the plane with a hole: project the Euclidean mean.
inline MeanResult frechet_mean_constrained_plane(std::span<const SpacePoint> samples, const PlaneWithHole& plane,
                                                 const EstimatorConfig& cfg = {}) {
  validate_config(cfg);
  const MetricSpace s = plane;
  estimator_detail::check_samples(s, samples);
  const auto mu = estimator_detail::arithmetic_mean(samples);
  const auto proj = plane.project_any(mu);
  MeanResult r;
  r.point = proj.point;
  r.objective = empirical_objective(cost::SquaredDistance{}, s, samples, r.point);
  r.status = proj.unique ? MeanStatus::Converged : MeanStatus::Degenerate;
  if (cfg.trace) r.trace.push_back(r.objective);
  return r;
}

// Exhaustive argmin over a grid: lo + k step per axis inside the box, or k step
// (plus the far endpoint) along every tree edge.
inline MeanResult brute_force_mean(const CostDescriptor& c, const MetricSpace& s, std::span<const SpacePoint> samples,
                                   double grid_step, const std::optional<Box>& box = std::nullopt) {
  require(std::isfinite(grid_step) && grid_step > 0.0, ErrorKind::InvalidArgument, "grid_step must be positive");
  validate_cost(c, s);
  estimator_detail::check_samples(s, samples);
  MeanResult best;
  best.objective = std::numeric_limits<double>::infinity();
  auto consider = [&](const SpacePoint& q) {
    const double f = empirical_objective(c, s, samples, q);
    ++best.iterations;
    if (f < best.objective) {
      best.objective = f;
      best.point = q;
    }
  };
  if (const auto* t = std::get_if<MetricTree>(&s)) {
    for (std::size_t e = 0; e < t->num_edges(); ++e) {
      const double len = t->edge(e).length;
      const auto steps = static_cast<std::size_t>(std::floor(len / grid_step));
      for (std::size_t k = 0; k <= steps; ++k) consider(t->canonical({e, std::min(len, static_cast<double>(k) * grid_step)}));
      consider(t->canonical({e, len}));
    }
    return best;
  }
  if (!box) fail(ErrorKind::UnboundedRegion, "brute_force_mean on " + space_name(s) + " needs a bounding box");
  require(box->lo < box->hi, ErrorKind::InvalidArgument, "box needs lo < hi");
  const auto dim = vector_dim(s);
  const auto per_axis = static_cast<std::size_t>(std::floor((box->hi - box->lo) / grid_step)) + 1;
  require(std::pow(static_cast<double>(per_axis), static_cast<double>(dim)) <= 5e7, ErrorKind::InvalidArgument,
          "grid too large for brute force");
  std::vector<std::size_t> idx(dim, 0);
  const auto* hole = std::get_if<PlaneWithHole>(&s);
  while (true) {
    auto q = vec::zeros(dim);
    for (std::size_t k = 0; k < dim; ++k) q[k] = box->lo + static_cast<double>(idx[k]) * grid_step;
    if (hole == nullptr || hole->contains(q)) consider(q);
    std::size_t k = dim;
    while (k > 0 && ++idx[k - 1] == per_axis) idx[--k] = 0;
    if (k == 0) break;
  }
  require(std::isfinite(best.objective), ErrorKind::EmptyRegion, "no grid point lies in the space");
  return best;
}

// Dispatch on the space (and on cfg.method == Grid).
inline MeanResult frechet_mean(const CostDescriptor& c, const MetricSpace& s, std::span<const SpacePoint> samples,
                               const EstimatorConfig& cfg = {}) {
  if (cfg.method == MeanMethod::Grid) return brute_force_mean(c, s, samples, cfg.grid_step, cfg.box);
  if (const auto* t = std::get_if<MetricTree>(&s)) return frechet_mean_tree(c, *t, samples, cfg);
  if (const auto* h = std::get_if<PlaneWithHole>(&s)) {
    require(std::holds_alternative<cost::SquaredDistance>(c), ErrorKind::IncompatibleSpace,
            "the plane with a hole supports the squared distance cost only");
    return frechet_mean_constrained_plane(samples, *h, cfg);
  }
  return frechet_mean_vector(c, s, samples, cfg);
}

struct GrowthFit {
  double gamma_hat = 0.0;
  double cg_hat = 0.0;
  double r_squared = 0.0;
};

// Fit excess = c l^gamma in log-log; c is the smallest ratio excess / l^gamma_hat.
inline GrowthFit growth_fit(std::span<const double> loss, std::span<const double> excess) {
  require(loss.size() == excess.size(), ErrorKind::InvalidArgument, "growth fit needs paired data");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < loss.size(); ++i) {
    require(std::isfinite(loss[i]) && loss[i] > 0.0, ErrorKind::InvalidArgument, "probe coincides with the center");
    if (!(excess[i] > 0.0))
      fail(ErrorKind::InvalidCenter, "F(q) - F(m) = " + std::to_string(excess[i]) + " is not positive at a probe");
    lx.push_back(std::log(loss[i]));
    ly.push_back(std::log(excess[i]));
  }
  const auto fit = ols(lx, ly);
  GrowthFit g;
  g.gamma_hat = fit.slope;
  g.r_squared = fit.r_squared;
  g.cg_hat = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < loss.size(); ++i) g.cg_hat = std::min(g.cg_hat, excess[i] / std::pow(loss[i], g.gamma_hat));
  require(g.gamma_hat > 0.0, ErrorKind::InvalidCenter, "excess does not grow with the loss");
  return g;
}

using Objective = std::function<double(const SpacePoint&)>;
using LossFn = std::function<double(const SpacePoint&, const SpacePoint&)>;

inline GrowthFit growth_fit(const Objective& F, const LossFn& loss, const SpacePoint& m,
                            std::span<const SpacePoint> probes) {
  require(!probes.empty(), ErrorKind::NothingToFit, "growth fit needs probe points");
  const double fm = F(m);
  std::vector<double> l, ex;
  for (const auto& q : probes) {
    l.push_back(loss(m, q));
    ex.push_back(F(q) - fm);
  }
  return growth_fit(l, ex);
}

// min over probes of (F(q) - F(m)) / l(m, q)^gamma, the Growth constant at a fixed gamma.
inline double growth_scan(const Objective& F, const LossFn& loss, const SpacePoint& m,
                          std::span<const SpacePoint> probes, double gamma) {
  require(!probes.empty(), ErrorKind::NothingToFit, "growth scan needs probe points");
  const double fm = F(m);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& q : probes) {
    const double l = loss(m, q);
    if (l <= 0.0) continue;
    worst = std::min(worst, (F(q) - fm) / std::pow(l, gamma));
  }
  return worst;
}

}  // namespace frechet
