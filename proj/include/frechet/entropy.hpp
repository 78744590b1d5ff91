#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/point.hpp"
#include "frechet/space.hpp"
#include "frechet/stats.hpp"

namespace frechet {

using Metric = std::function<double(const SpacePoint&, const SpacePoint&)>;

inline Metric euclidean_metric() {
  return [](const SpacePoint& a, const SpacePoint& b) { return vec::dist(as_vector(a), as_vector(b)); };
}

inline Metric space_metric(const MetricSpace& s, const DistanceKind& k = kind::Base{}) {
  return [s, k](const SpacePoint& a, const SpacePoint& b) { return distance(s, k, a, b); };
}

// A region stands in as a dense finite sample. `line` marks points on R^1 under
// |x - y|, where covers are computed exactly by a sweep.
struct Region {
  std::vector<SpacePoint> points;
  Metric metric = euclidean_metric();
  bool line = false;
};

inline Region singleton_region(const SpacePoint& p, Metric metric = euclidean_metric()) {
  return Region{{p}, std::move(metric), false};
}

// [lo, hi] at the given spacing (endpoints included).
inline Region interval_region(double lo, double hi, double spacing) {
  require(lo <= hi, ErrorKind::EmptyRegion, "interval needs lo <= hi");
  require(spacing > 0.0, ErrorKind::InvalidArgument, "spacing must be positive");
  Region r;
  r.line = true;
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / spacing - 1e-9));
  for (std::size_t k = 0; k <= steps; ++k)
    r.points.push_back(VectorPoint{std::min(hi, lo + static_cast<double>(k) * spacing)});
  return r;
}

// Closed Euclidean ball: the center first, then the cubic grid points inside.
inline Region ball_region(std::size_t dim, double radius, double spacing) {
  require(dim >= 1, ErrorKind::InvalidArgument, "ball dimension must be at least 1");
  require(radius >= 0.0 && spacing > 0.0, ErrorKind::InvalidArgument, "ball needs radius >= 0 and spacing > 0");
  Region r;
  r.line = dim == 1;
  r.points.push_back(vec::zeros(dim));
  const auto half = static_cast<long>(std::floor(radius / spacing + 1e-9));
  std::vector<long> idx(dim, -half);
  if (half == 0) return r;
  while (true) {
    auto p = vec::zeros(dim);
    bool origin = true;
    for (std::size_t k = 0; k < dim; ++k) {
      p[k] = static_cast<double>(idx[k]) * spacing;
      origin = origin && idx[k] == 0;
    }
    if (!origin && vec::norm(p) <= radius * (1.0 + 1e-12)) r.points.push_back(std::move(p));
    std::size_t k = dim;
    while (k > 0 && ++idx[k - 1] > half) idx[--k] = -half;
    if (k == 0) break;
  }
  return r;
}

// Points along every edge at the given spacing (vertices included once).
inline Region tree_region(const MetricTree& t, double spacing, DistanceKind k = kind::Base{}) {
  require(spacing > 0.0, ErrorKind::InvalidArgument, "spacing must be positive");
  Region r;
  r.metric = space_metric(t, std::move(k));
  for (std::size_t v = 0; v < t.num_vertices(); ++v) r.points.push_back(t.vertex_point(v));
  for (std::size_t e = 0; e < t.num_edges(); ++e) {
    const double len = t.edge(e).length;
    const auto steps = static_cast<std::size_t>(std::ceil(len / spacing));
    for (std::size_t j = 1; j < steps; ++j) r.points.push_back(TreePoint{e, len * static_cast<double>(j) / static_cast<double>(steps)});
  }
  return r;
}

// Upper bound on N(region, metric, r) with centers drawn from the region: an exact
// sweep on the line, greedy farthest-point otherwise (starting from the first point).
inline std::size_t covering_number(const Region& region, double r) {
  require(std::isfinite(r) && r > 0.0, ErrorKind::InvalidArgument, "covering radius must be positive");
  const auto& pts = region.points;
  if (pts.empty()) fail(ErrorKind::EmptyRegion, "cannot cover an empty region");
  if (region.line) {
    std::vector<double> xs;
    for (const auto& p : pts) xs.push_back(as_vector(p)[0]);
    std::sort(xs.begin(), xs.end());
    std::size_t count = 0;
    std::size_t i = 0;
    const double slack = 1e-12 * (1.0 + r);
    while (i < xs.size()) {
      // Rightmost point within r of the leftmost uncovered one becomes the center.
      const double left = xs[i];
      std::size_t c = i;
      while (c + 1 < xs.size() && xs[c + 1] <= left + r + slack) ++c;
      const double reach = xs[c] + r + slack;
      while (i < xs.size() && xs[i] <= reach) ++i;
      ++count;
    }
    return count;
  }
  std::vector<double> nearest(pts.size(), std::numeric_limits<double>::infinity());
  std::size_t center = 0;
  std::size_t count = 0;
  while (true) {
    ++count;
    double far = -1.0;
    std::size_t far_i = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      nearest[i] = std::min(nearest[i], region.metric(pts[i], pts[center]));
      if (nearest[i] > far) {
        far = nearest[i];
        far_i = i;
      }
    }
    if (far <= r) return count;
    center = far_i;
  }
}

// Upper bound on the diameter: twice the eccentricity of the first point.
inline double diameter_bound(const Region& region) {
  if (region.points.empty()) fail(ErrorKind::EmptyRegion, "empty region has no diameter");
  double e = 0.0;
  for (const auto& p : region.points) e = std::max(e, region.metric(region.points[0], p));
  return 2.0 * e;
}

// Geometric r grid r_min * 10^(k / per_decade) up to the first value >= r_max.
inline std::vector<double> log_grid(double r_min, double r_max, int per_decade) {
  require(r_min > 0.0 && per_decade >= 1, ErrorKind::InvalidArgument, "log grid needs r_min > 0");
  std::vector<double> g;
  for (int k = 0;; ++k) {
    g.push_back(r_min * std::pow(10.0, static_cast<double>(k) / per_decade));
    if (g.back() >= r_max) break;
  }
  return g;
}

struct EntrnResult {
  double value = 0.0;
  double epsilon = 0.0;
  double integral_from_zero = 0.0;  // the eps = 0 relaxation
};

// inf over eps in {0} U grid of eps sqrt(n) + int_eps^D sqrt(log N(r)) dr on the grid
// r_min 10^(k / per_decade). Left-endpoint sums (N is non-increasing, so these are
// upper sums); [0, r_min] contributes r_min sqrt(log N(r_min)).
inline EntrnResult entrn_detail(const Region& region, std::size_t n, double r_min, int per_decade = 8) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  require(r_min > 0.0, ErrorKind::InvalidArgument, "r_min must be positive");
  const double D = diameter_bound(region);
  if (D == 0.0) return {};
  const auto grid = log_grid(r_min, D, per_decade);
  std::vector<double> h(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    h[k] = std::sqrt(std::log(static_cast<double>(covering_number(region, grid[k]))));
  // tail[k] = int_{grid[k]}^{D} on the grid.
  std::vector<double> tail(grid.size() + 1, 0.0);
  for (std::size_t k = grid.size(); k-- > 0;) {
    const double right = k + 1 < grid.size() ? grid[k + 1] : grid[k];
    tail[k] = tail[k + 1] + h[k] * (right - grid[k]);
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  EntrnResult out;
  out.integral_from_zero = r_min * h[0] + tail[0];
  out.value = out.integral_from_zero;
  out.epsilon = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = grid[k] * root_n + tail[k];
    if (v < out.value) {
      out.value = v;
      out.epsilon = grid[k];
    }
  }
  return out;
}

inline double entrn_estimate(const Region& region, std::size_t n, double r_min, int per_decade = 8) {
  return entrn_detail(region, n, r_min, per_decade).value;
}

// eta_{beta,n}: n^(-1/2), n^(-1/2) log(n+1) at beta = 1, n^(-1/(2 beta)) above.
inline double eta(double beta, std::size_t n) {
  require(std::isfinite(beta) && beta > 0.0, ErrorKind::InvalidArgument, "beta must be positive");
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  const double dn = static_cast<double>(n);
  if (beta < 1.0) return 1.0 / std::sqrt(dn);
  if (beta == 1.0) return std::log(dn + 1.0) / std::sqrt(dn);
  return std::pow(dn, -1.0 / (2.0 * beta));
}

enum class EntropyModel { Power, LogPower };

inline std::string model_name(EntropyModel m) { return m == EntropyModel::Power ? "power" : "log_power"; }

inline EntropyModel parse_model(const std::string& s) {
  if (s == "power") return EntropyModel::Power;
  if (s == "log_power") return EntropyModel::LogPower;
  fail(ErrorKind::InvalidArgument, "unknown entropy model '" + s + "'");
}

struct EntropyFit {
  EntropyModel model = EntropyModel::Power;
  double c_e_hat = 0.0;
  double beta_hat = 0.0;
  double max_residual = 0.0;
};

struct CoveringCell {
  double delta = 0.0;
  double r = 0.0;
  double N = 1.0;
};

// Fit sqrt(log N) = c_e (delta / r)^beta, or c_e log(delta / r)^beta, in log space.
// Cells with N = 1 carry no information and are dropped.
inline EntropyFit entropy_fit(const std::vector<CoveringCell>& cells, EntropyModel model) {
  std::vector<double> x, y;
  std::vector<CoveringCell> used;
  for (const auto& c : cells) {
    if (!(c.N > 1.0)) continue;
    const double ratio = c.delta / c.r;
    double feature = std::log(ratio);
    if (model == EntropyModel::LogPower) {
      if (!(ratio > 1.0)) continue;
      feature = std::log(std::log(ratio));
    }
    x.push_back(feature);
    y.push_back(std::log(std::sqrt(std::log(c.N))));
    used.push_back(c);
  }
  if (used.size() < 2) fail(ErrorKind::NothingToFit, "covering numbers are (almost) all one; nothing to fit");
  const auto f = ols(x, y);
  EntropyFit out;
  out.model = model;
  out.beta_hat = f.slope;
  out.c_e_hat = std::exp(f.intercept);
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double pred = out.c_e_hat * std::exp(out.beta_hat * x[i]);
    out.max_residual = std::max(out.max_residual, std::abs(std::sqrt(std::log(used[i].N)) - pred));
  }
  return out;
}

// Covering numbers of region_for(delta) over the grids, then the fit above.
inline std::vector<CoveringCell> covering_table(const std::function<Region(double)>& region_for,
                                                const std::vector<double>& delta_grid,
                                                const std::vector<double>& r_grid) {
  require(!delta_grid.empty() && !r_grid.empty(), ErrorKind::InvalidArgument, "entropy grids must be nonempty");
  std::vector<CoveringCell> cells;
  for (double d : delta_grid) {
    const auto region = region_for(d);
    for (double r : r_grid) cells.push_back({d, r, static_cast<double>(covering_number(region, r))});
  }
  return cells;
}

inline EntropyFit entropy_fit(const std::function<Region(double)>& region_for, const std::vector<double>& delta_grid,
                              const std::vector<double>& r_grid, EntropyModel model) {
  return entropy_fit(covering_table(region_for, delta_grid, r_grid), model);
}

struct Schedule {
  double R_n = 0.0;
  double xi_n = 0.0;
};

struct RatePrediction {
  double eta_value = 0.0;
  double loss_exponent = 0.0;
  double predicted_rate = 0.0;
  std::optional<Schedule> schedule;
};

struct EntropyRate {};
struct LogSchedule {
  double kappa = 1.0;
};
using RateMode = std::variant<EntropyRate, LogSchedule>;

// entropy rate: eta_{beta,n}^(1 / (gamma - alpha/beta)).
// log schedule: (n^(-1/2) log(n)^beta)^(kappa / (gamma - 1)), R_n = n, xi_n = 1 - 1/log n;
// loss_exponent then holds kappa / (gamma - 1).
inline RatePrediction rate_prediction(double gamma, double alpha_ent, double beta_ent, std::size_t n,
                                      const RateMode& mode = EntropyRate{}) {
  require(gamma > 0.0 && alpha_ent >= 0.0 && beta_ent > 0.0, ErrorKind::InvalidArgument,
          "need gamma > 0, alpha >= 0, beta > 0");
  if (!(alpha_ent / beta_ent < gamma))
    fail(ErrorKind::InvalidArgument, "entropy condition needs alpha/beta < gamma (alpha/beta = " +
                                         std::to_string(alpha_ent / beta_ent) + ", gamma = " + std::to_string(gamma) + ")");
  RatePrediction out;
  if (std::holds_alternative<EntropyRate>(mode)) {
    out.eta_value = eta(beta_ent, n);
    out.loss_exponent = 1.0 / (gamma - alpha_ent / beta_ent);
    out.predicted_rate = std::pow(out.eta_value, out.loss_exponent);
    return out;
  }
  const double kappa = std::get<LogSchedule>(mode).kappa;
  require(gamma > 1.0, ErrorKind::InvalidArgument, "log schedule needs gamma > 1");
  require(kappa > gamma - 1.0, ErrorKind::InvalidArgument, "log schedule needs kappa > gamma - 1");
  require(n >= 3, ErrorKind::InvalidArgument, "log schedule needs n >= 3 so that xi_n > 0");
  const double dn = static_cast<double>(n);
  const double ln = std::log(dn);
  out.eta_value = std::pow(ln, beta_ent) / std::sqrt(dn);
  out.loss_exponent = kappa / (gamma - 1.0);
  out.predicted_rate = std::pow(out.eta_value, out.loss_exponent);
  out.schedule = Schedule{dn, 1.0 - 1.0 / ln};
  return out;
}

}  // namespace frechet
