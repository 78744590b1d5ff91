#pragma once

// Reference values computed without the library, by hand formulas or brute force.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Star with unit-free arm lengths: same arm -> |s - t|, different arms -> s + t.
inline double star_distance(int arm_a, double s, int arm_b, double t) {
  return arm_a == arm_b ? std::abs(s - t) : s + t;
}

// sqrt((d(q,p)^2 - (d(q,m) - d(p,m))^2) / (d(q,m) d(p,m)))
inline double proj_distance(double qp, double qm, double pm) {
  return std::sqrt(std::max(0.0, (qp * qp - (qm - pm) * (qm - pm)) / (qm * pm)));
}

// Euclidean distance between (q - m)/|q - m| and (p - m)/|p - m|.
inline double sphere_distance(const std::vector<double>& m, const std::vector<double>& q, const std::vector<double>& p) {
  const double nq = euclid(q, m), np = euclid(p, m);
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double d = (q[i] - m[i]) / nq - (p[i] - m[i]) / np;
    s += d * d;
  }
  return std::sqrt(s);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// E|Y - q| - E|Y| for standard Cauchy Y.
inline double cauchy_excess(double q) {
  return 2.0 / std::numbers::pi * (q * std::atan(q) - 0.5 * std::log1p(q * q));
}

inline double tripod_k(double r, double eps) { return std::sqrt(2.0 * (r + eps) / eps); }

inline double pollard(double delta, double r, int b) { return std::pow(3.0 * delta / r, b); }

inline double eta(double beta, double n) {
  if (beta < 1.0) return 1.0 / std::sqrt(n);
  if (beta == 1.0) return std::log(n + 1.0) / std::sqrt(n);
  return std::pow(n, -1.0 / (2.0 * beta));
}

// Brute-force minimum of (1/n) sum |x - y_i|^p over a fine grid on [lo, hi].
inline double grid_argmin_line(const std::vector<double>& ys, double p, double lo, double hi, double step) {
  double best = lo, best_val = INFINITY;
  for (double x = lo; x <= hi + 1e-12; x += step) {
    double v = 0.0;
    for (double y : ys) v += std::pow(std::abs(x - y), p);
    if (v < best_val) {
      best_val = v;
      best = x;
    }
  }
  return best;
}

}  // namespace oracle
