#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frechet/cost.hpp"
#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/estimator.hpp"
#include "frechet/parallel.hpp"
#include "frechet/population.hpp"
#include "frechet/random.hpp"
#include "frechet/stats.hpp"
#include "frechet/structure.hpp"

namespace frechet {

struct ExperimentConfig {
  MetricSpace space = Euclidean{1};
  CostDescriptor cost = cost::SquaredDistance{};
  DistanceKind loss = kind::Base{};
  DistributionSpec distribution = dist::PointMass{VectorPoint{0.0}};
  std::vector<std::size_t> n_grid;
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  EstimatorConfig estimator;
  std::optional<SpacePoint> known_m;
  double kappa = 1.0;  // rows record l(m, m_n)^kappa
  unsigned workers = 0;
};

struct LossRow {
  std::size_t n = 0;
  std::size_t rep = 0;
  double loss = 0.0;  // NaN when the estimator failed
  std::string status;
  double runtime_s = 0.0;
};

struct LossTable {
  std::vector<LossRow> rows;
};

inline void validate_experiment(const ExperimentConfig& c) {
  require(!c.n_grid.empty(), ErrorKind::InvalidArgument, "n_grid must not be empty");
  require(c.n_grid.front() >= 1, ErrorKind::InvalidArgument, "sample sizes must be positive");
  for (std::size_t i = 1; i < c.n_grid.size(); ++i)
    require(c.n_grid[i] > c.n_grid[i - 1], ErrorKind::InvalidArgument, "n_grid must be strictly increasing");
  require(c.replications >= 1, ErrorKind::InvalidArgument, "replications must be at least 1");
  require(std::isfinite(c.kappa) && c.kappa >= 1.0, ErrorKind::InvalidArgument, "kappa must be at least 1");
  validate_config(c.estimator);
  validate_cost(c.cost, c.space);
  validate_distribution(c.distribution, c.space);
}

inline SpacePoint experiment_center(const ExperimentConfig& c) {
  if (c.known_m) return canonical(c.space, *c.known_m);
  return known_minimizer(c.distribution, c.cost, c.space);
}

// Sample of size n for replication rep; shared by every harness operation.
inline std::vector<SpacePoint> experiment_sample(const ExperimentConfig& c, std::size_t n, std::size_t rep) {
  Rng rng = substream(c.seed, {n, rep});
  return sample_distribution(c.distribution, rng, n);
}

inline LossTable run_experiment(const ExperimentConfig& c) {
  validate_experiment(c);
  const auto m = experiment_center(c);
  LossTable table;
  table.rows.resize(c.n_grid.size() * c.replications);
  parallel_for(
      table.rows.size(),
      [&](std::size_t job) {
        const auto n = c.n_grid[job / c.replications];
        const auto rep = job % c.replications;
        auto& row = table.rows[job];
        row.n = n;
        row.rep = rep;
        const auto start = std::chrono::steady_clock::now();
        try {
          const auto sample = experiment_sample(c, n, rep);
          const auto r = frechet_mean(c.cost, c.space, sample, c.estimator);
          row.loss = std::pow(distance(c.space, c.loss, m, r.point), c.kappa);
          row.status = status_name(r.status);
        } catch (const Error& e) {
          row.loss = std::numeric_limits<double>::quiet_NaN();
          row.status = "failed:" + std::string(to_string(e.kind()));
        }
        row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      },
      c.workers);
  return table;
}

struct Statistic {
  enum Kind { Mean, Median, Quantile } kind = Median;
  double p = 0.5;
};

inline std::string statistic_name(const Statistic& s) {
  if (s.kind == Statistic::Mean) return "mean";
  if (s.kind == Statistic::Median) return "median";
  return "q" + std::to_string(s.p);
}

inline double apply_statistic(const Statistic& s, std::vector<double> v) {
  if (s.kind == Statistic::Mean) return mean_of(v);
  if (s.kind == Statistic::Median) return median_of(std::move(v));
  return quantile_of(std::move(v), s.p);
}

// Finite losses grouped by n, in increasing n.
inline std::map<std::size_t, std::vector<double>> losses_by_n(const LossTable& t) {
  std::map<std::size_t, std::vector<double>> out;
  for (const auto& r : t.rows)
    if (std::isfinite(r.loss)) out[r.n].push_back(r.loss);
  return out;
}

using RateFit = LinearFit;

struct RatePoint {
  std::size_t n;
  double value;
};

inline std::vector<RatePoint> aggregate(const LossTable& t, const Statistic& s) {
  std::vector<RatePoint> out;
  for (auto& [n, v] : losses_by_n(t)) out.push_back({n, apply_statistic(s, v)});
  return out;
}

// OLS of log(statistic) on log(n).
inline RateFit fit_rate(const LossTable& t, const Statistic& s = {}) {
  const auto pts = aggregate(t, s);
  require(pts.size() >= 3, ErrorKind::InvalidArgument, "rate fit needs at least three distinct n");
  std::vector<double> x, y;
  for (const auto& p : pts) {
    if (!(p.value > 0.0)) fail(ErrorKind::AllZeroLoss, "statistic is zero at n = " + std::to_string(p.n));
    x.push_back(std::log(static_cast<double>(p.n)));
    y.push_back(std::log(p.value));
  }
  return ols(x, y);
}

struct TailFit {
  double fitted_slope = 0.0;
  double theoretical_slope = 0.0;  // -zeta * gamma_minus
  double r_squared = 0.0;
  std::size_t points = 0;
};

// Log-log slope of the empirical survival function over its upper decade.
// S at the i-th smallest of N values is (N - i) / N.
inline TailFit tail_slope(std::vector<double> values) {
  std::erase_if(values, [](double v) { return !(std::isfinite(v) && v > 0.0); });
  if (values.empty()) fail(ErrorKind::AllZeroLoss, "no positive losses to fit a tail to");
  std::sort(values.begin(), values.end());
  const auto N = values.size();
  std::vector<double> x, y;
  for (std::size_t i = 0; i < N; ++i) {
    const double S = static_cast<double>(N - i) / static_cast<double>(N);
    if (S > 0.1) continue;
    x.push_back(std::log(values[i]));
    y.push_back(std::log(S));
  }
  const auto f = ols(x, y);
  return {f.slope, 0.0, f.r_squared, x.size()};
}

inline constexpr std::size_t kMinTailReplications = 500;

// Losses at n normalized by eta^loss_exponent; eta uses n^(-1/2) unless eta_value is given.
inline TailFit tail_check(const LossTable& t, std::size_t n, double loss_exponent, double zeta, double gamma_minus,
                          std::optional<double> eta_value = std::nullopt) {
  std::vector<double> v;
  std::size_t reps = 0;
  for (const auto& r : t.rows)
    if (r.n == n) {
      ++reps;
      v.push_back(r.loss);
    }
  if (reps < kMinTailReplications)
    fail(ErrorKind::TooFewReplications,
         "tail check needs " + std::to_string(kMinTailReplications) + " replications at n = " + std::to_string(n) +
             ", table has " + std::to_string(reps));
  const double eta = eta_value.value_or(1.0 / std::sqrt(static_cast<double>(n)));
  const double norm = std::pow(eta, loss_exponent);
  for (auto& x : v) x /= norm;
  auto f = tail_slope(std::move(v));
  f.theoretical_slope = -zeta * gamma_minus;
  return f;
}

// M(zeta): E a(Y', Y)^zeta for zeta >= 2, else (E a(Y', Y)^2)^(zeta/2).
inline double moment_estimate(const DistributionSpec& d, const MetricSpace& s, const QuadrupleStructure& st, double zeta,
                              std::size_t draws, std::uint64_t seed) {
  require(draws >= 1, ErrorKind::InvalidArgument, "moment estimate needs at least one draw");
  require(std::isfinite(zeta) && zeta >= 1.0, ErrorKind::InvalidArgument, "zeta must be at least 1");
  validate_distribution(d, s);
  Rng rng = substream(seed, {0x4d4f});
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto y = draw(d, rng);
    const auto y2 = draw(d, rng);
    const double a = data_distance(st, s, y2, y);
    sum += zeta >= 2.0 ? std::pow(a, zeta) : a * a;
  }
  const double m = sum / static_cast<double>(draws);
  return zeta >= 2.0 ? m : std::pow(m, zeta / 2.0);
}

// sup over grid points with l(m, q) <= delta of F(q) - F(m) - F_n(q) + F_n(m), for
// the (n, rep) sample of the experiment.
inline double empirical_process_sup(const ExperimentConfig& c, std::size_t n, double delta,
                                    std::span<const SpacePoint> q_grid, std::size_t rep,
                                    const PopulationObjective* F = nullptr) {
  require(delta > 0.0, ErrorKind::InvalidArgument, "delta must be positive");
  const auto m = experiment_center(c);
  std::vector<SpacePoint> grid;
  for (const auto& q : q_grid)
    if (distance(c.space, c.loss, m, q) <= delta) grid.push_back(q);
  if (grid.empty()) fail(ErrorKind::EmptyRegion, "no grid point within delta of the minimizer");
  std::optional<PopulationObjective> own;
  if (F == nullptr) {
    own = population_objective(c.distribution, c.cost, c.space);
    F = &*own;
  }
  const auto sample = experiment_sample(c, n, rep);
  const double Fm = F->F(m);
  const double Fnm = empirical_objective(c.cost, c.space, sample, m);
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& q : grid)
    sup = std::max(sup, F->F(q) - Fm - empirical_objective(c.cost, c.space, sample, q) + Fnm);
  return sup;
}

}  // namespace frechet
