#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/inequality.hpp"
#include "frechet/parallel.hpp"
#include "frechet/random.hpp"
#include "frechet/report.hpp"

namespace frechet {

enum class LemmaId {
  ArithmeticForm,
  TightPowerI,
  TightPowerII,
  TightPowerIII,
  SimpleMerging,
  RascMerging,
  AscMerging,
  FractionBound,
  BetaBound,
  AlphaBinom,
  Slogs,
  Abxfrac,
};

inline constexpr std::array<LemmaId, 12> kAllLemmas = {
    LemmaId::ArithmeticForm, LemmaId::TightPowerI,   LemmaId::TightPowerII,  LemmaId::TightPowerIII,
    LemmaId::SimpleMerging,  LemmaId::RascMerging,   LemmaId::AscMerging,    LemmaId::FractionBound,
    LemmaId::BetaBound,      LemmaId::AlphaBinom,    LemmaId::Slogs,         LemmaId::Abxfrac,
};

inline std::string_view lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::ArithmeticForm: return "arithmetic_form";
    case LemmaId::TightPowerI: return "tight_power_i";
    case LemmaId::TightPowerII: return "tight_power_ii";
    case LemmaId::TightPowerIII: return "tight_power_iii";
    case LemmaId::SimpleMerging: return "simple_merging";
    case LemmaId::RascMerging: return "rasc_merging";
    case LemmaId::AscMerging: return "asc_merging";
    case LemmaId::FractionBound: return "fraction_bound";
    case LemmaId::BetaBound: return "beta_bound";
    case LemmaId::AlphaBinom: return "alpha_binom";
    case LemmaId::Slogs: return "slogs";
    case LemmaId::Abxfrac: return "abxfrac";
  }
  return "unknown";
}

inline LemmaId parse_lemma(std::string_view name) {
  for (auto id : kAllLemmas)
    if (lemma_name(id) == name) return id;
  fail(ErrorKind::UnknownLemma, "unknown lemma id '" + std::string(name) + "'");
}

// One evaluated draw: the largest (lhs - rhs) over the lemma's inequalities and
// the magnitude used to scale the tolerance.
struct LemmaEval {
  double residual = 0.0;
  double scale = 0.0;
};

struct TightPowerTerms {
  double lower, middle, upper;
};

// Form (i): 2^a x^{a-1} y <= (x+y)^a - (x-y)^a <= 2a x^{a-1} y, for x >= y.
inline TightPowerTerms tight_power_i(double x, double y, double a) {
  return {std::pow(2.0, a) * std::pow(x, a - 1.0) * y, std::pow(x + y, a) - std::pow(x - y, a),
          2.0 * a * std::pow(x, a - 1.0) * y};
}

// Form (ii): (x+y)^a - |x-y|^a <= 2a min(x y^{a-1}, x^{a-1} y).
inline TightPowerTerms tight_power_ii(double x, double y, double a) {
  const double mid = std::pow(x + y, a) - std::pow(std::abs(x - y), a);
  return {-std::numeric_limits<double>::infinity(), mid,
          2.0 * a * std::min(x * std::pow(y, a - 1.0), std::pow(x, a - 1.0) * y)};
}

// Form (iii): (x+y)^{a-1}(x-y) <= x^a - y^a <= a(x-y)((x+y)/2)^{a-1}, for x >= y.
inline TightPowerTerms tight_power_iii(double x, double y, double a) {
  return {std::pow(x + y, a - 1.0) * (x - y), std::pow(x, a) - std::pow(y, a),
          a * (x - y) * std::pow((x + y) / 2.0, a - 1.0)};
}

namespace lemma_detail {

inline LemmaEval two_sided(const TightPowerTerms& t) {
  const double r = std::max(t.lower - t.middle, t.middle - t.upper);
  double scale = std::max(std::abs(t.middle), std::abs(t.upper));
  if (std::isfinite(t.lower)) scale = std::max(scale, std::abs(t.lower));
  return {r, scale};
}

inline LemmaEval one_sided(double lhs, double rhs) { return {lhs - rhs, std::max(std::abs(lhs), std::abs(rhs))}; }

inline double real(Rng& rng) { return coin(rng, 0.5) ? uniform(rng, 0.0, 10.0) : log_uniform(rng, 1e-3, 10.0); }
inline double unit_interval(Rng& rng) { return uniform(rng, -1.0, 1.0); }
inline double alpha(Rng& rng) {
  return coin(rng, 0.1) ? (coin(rng, 0.5) ? 0.5 : 1.0) : uniform(rng, 0.5, 1.0);
}
inline double exponent(Rng& rng) { return coin(rng, 0.1) ? (coin(rng, 0.5) ? 1.0 : 2.0) : uniform(rng, 1.0, 2.0); }
inline double sign(Rng& rng) { return coin(rng, 0.5) ? 1.0 : -1.0; }

inline double merge_rhs(double u, double b, double alpha) {
  if (!(u > 0.0)) return 0.0;
  return std::pow(2.0, 1.0 - 2.0 * alpha) * (std::pow(u + b, 2.0 * alpha) - std::pow(std::abs(u - b), 2.0 * alpha));
}

struct AscDraw {
  double a, b, c, s, alpha;
};

inline AscDraw draw_asc(Rng& rng) {
  AscDraw d{};
  d.alpha = alpha(rng);
  d.s = uniform(rng, 0.0, 1.0);
  d.c = real(rng);
  const double sc = d.s * d.c;
  d.b = uniform(rng, 0.0, 2.0 * sc);
  d.a = sc + d.b + (coin(rng, 0.1) ? 0.0 : real(rng));
  return d;
}

inline LemmaEval asc_eval(const AscDraw& d) {
  const double sc = d.s * d.c;
  const double e = 2.0 * d.alpha;
  const double lhs = std::pow(d.a, e) - std::pow(d.c, e) - std::pow(d.a - d.b, e) +
                     std::pow(std::max(0.0, d.c * d.c - 2.0 * sc * d.b + d.b * d.b), d.alpha);
  const double rhs =
      std::pow(2.0, 1.0 - e) * (std::pow(d.a - sc + d.b, e) - std::pow(std::max(0.0, d.a - sc - d.b), e));
  return one_sided(lhs, rhs);
}

inline double rasc_lhs(double a, double b, double c, double r, double s, double alpha) {
  const double t1 = std::max(0.0, a * a - 2.0 * r * a * b + b * b);
  const double t2 = std::max(0.0, c * c - 2.0 * s * c * b + b * b);
  return std::pow(a, 2.0 * alpha) - std::pow(c, 2.0 * alpha) - std::pow(t1, alpha) + std::pow(t2, alpha);
}

// Draws a precondition-satisfying input and evaluates it, or returns false to
// ask for another attempt.
inline bool draw(LemmaId id, Rng& rng, LemmaEval& out, std::vector<double>& inputs) {
  switch (id) {
    case LemmaId::ArithmeticForm: {
      const auto q = sample_arithmetic(rng);
      const auto t = arithmetic_form_terms(q);
      out = one_sided(t.lhs, t.rhs);
      inputs = {q.a, q.b, q.c, q.r, q.s, q.alpha};
      return true;
    }
    case LemmaId::TightPowerI:
    case LemmaId::TightPowerIII: {
      double x = real(rng), y = coin(rng, 0.05) ? x : real(rng);
      if (x < y) std::swap(x, y);
      const double a = exponent(rng);
      out = two_sided(id == LemmaId::TightPowerI ? tight_power_i(x, y, a) : tight_power_iii(x, y, a));
      inputs = {x, y, a};
      return true;
    }
    case LemmaId::TightPowerII: {
      const double x = real(rng), y = real(rng), a = exponent(rng);
      out = two_sided(tight_power_ii(x, y, a));
      inputs = {x, y, a};
      return true;
    }
    case LemmaId::SimpleMerging: {
      const double al = alpha(rng);
      const double b = real(rng);
      const double a = sign(rng) * real(rng);
      const double c = sign(rng) * real(rng);
      const double e = 2.0 * al;
      const double lhs =
          std::pow(std::abs(a), e) - std::pow(std::abs(c), e) - std::pow(std::abs(a - b), e) + std::pow(std::abs(c - b), e);
      out = one_sided(lhs, merge_rhs(a - c, b, al));
      inputs = {a, b, c, al};
      return true;
    }
    case LemmaId::RascMerging: {
      const double al = alpha(rng);
      double a = real(rng), c = real(rng), r = unit_interval(rng), s = unit_interval(rng), b = 0.0;
      const int variant = static_cast<int>(std::uniform_int_distribution<int>(0, 2)(rng));
      if (variant == 0) {  // 2ra >= b, s = +-1
        s = sign(rng);
        if (r < 0.0) r = -r;
        b = uniform(rng, 0.0, 2.0 * r * a);
      } else if (variant == 1) {  // b >= 2sc, r = +-1
        r = sign(rng);
        b = std::max(0.0, 2.0 * s * c) + real(rng);
      } else {  // 2ra >= b >= 2sc
        const double lo = std::max(0.0, 2.0 * s * c);
        const double hi = 2.0 * r * a;
        if (hi < lo) return false;
        b = uniform(rng, lo, hi);
      }
      out = one_sided(rasc_lhs(a, b, c, r, s, al), merge_rhs(r * a - s * c, b, al));
      inputs = {a, b, c, r, s, al, static_cast<double>(variant)};
      return true;
    }
    case LemmaId::AscMerging: {
      // b/2 <= sc <= a - b, inside the case a - sc >= |a - c| where the lemma is applied
      const auto d = draw_asc(rng);
      if (d.a - d.s * d.c < std::abs(d.a - d.c)) return false;
      out = asc_eval(d);
      inputs = {d.a, d.b, d.c, d.s, d.alpha};
      return true;
    }
    case LemmaId::FractionBound: {
      const double a = real(rng), b = real(rng), r = real(rng);
      double s = log_uniform(rng, 1e-2, 10.0), t = log_uniform(rng, 1e-2, 10.0);
      // t >= s exactly when b >= a.
      if ((b >= a) != (t >= s)) std::swap(s, t);
      if ((b >= a) != (t >= s)) return false;
      const double A = uniform(rng, -r * a, r * a);
      const double B = uniform(rng, -r * b, r * b);
      const double c = std::abs(A - B) / r + (coin(rng, 0.2) ? 0.0 : real(rng));
      const double lhs = std::abs(A / s - B / t);
      const double rhs = r * (std::min(s, t) * c + std::abs(s - t) * std::min(a, b)) / (s * t);
      out = one_sided(lhs, rhs);
      inputs = {A, B, a, b, c, r, s, t};
      return true;
    }
    case LemmaId::BetaBound: {
      const double a = log_uniform(rng, 1e-3, 10.0);
      const double c = log_uniform(rng, 1e-3, 10.0);
      const double lo = std::max(a, c - a);
      const double b = uniform(rng, lo, a + c);
      if (!(b > 0.0) || b < a || b > a + c || c > a + b) return false;
      const double be = coin(rng, 0.1) ? (coin(rng, 0.5) ? 0.0 : 1.0) : uniform(rng, 0.0, 1.0);
      const double ab = std::pow(a, be), bb = std::pow(b, be);
      const double lhs = (c * ab + (bb - ab) * a) / (ab * bb);
      out = one_sided(lhs, std::pow(2.0, be) * std::pow(c, 1.0 - be));
      inputs = {a, b, c, be};
      return true;
    }
    case LemmaId::AlphaBinom: {
      const double al = alpha(rng), x = real(rng), y = real(rng);
      const double d = std::pow(x, al) - std::pow(y, al);
      out = one_sided(std::pow(x + y, 2.0 * al) - d * d, std::pow(4.0 * x * y, al));
      inputs = {x, y, al};
      return true;
    }
    case LemmaId::Slogs: {
      const double s = coin(rng, 0.5) ? uniform(rng, 0.0, 0.5) : log_uniform(rng, 1e-8, 0.5);
      if (!(s > 0.0)) return false;
      out = one_sided((1.0 - s) / s, std::log(s) / std::log1p(-s));
      inputs = {s};
      return true;
    }
    case LemmaId::Abxfrac: {
      double a = real(rng), b = coin(rng, 0.05) ? 0.0 : real(rng);
      if (a < b) std::swap(a, b);
      if (!(a + b > 0.0)) return false;
      const auto f = [&](double x) { return (std::pow(a, x) - std::pow(b, x)) / std::pow(a + b, x); };
      const double x = uniform(rng, 1.0, 2.0);
      const double x1 = uniform(rng, 1.0, 2.0), x2 = uniform(rng, 1.0, 2.0);
      const double inf = (a - b) / (a + b);
      // infimum at the endpoints, f(1) = f(2), and midpoint concavity
      double r = inf - f(x);
      r = std::max(r, std::abs(f(1.0) - f(2.0)));
      r = std::max(r, 0.5 * (f(x1) + f(x2)) - f(0.5 * (x1 + x2)));
      out = {r, 1.0};
      inputs = {a, b, x, x1, x2};
      return true;
    }
  }
  return false;
}

}  // namespace lemma_detail

inline constexpr int kMaxLemmaAttempts = 100;

inline ViolationReport lemma_battery(LemmaId id, std::uint64_t trials, std::uint64_t seed,
                                     double rel_tol = kDefaultRelTol, unsigned workers = 0) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  return chunked_sweep(
      trials, mix_seed(seed, {static_cast<std::uint64_t>(id)}),
      [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
        ViolationReport rep;
        LemmaEval ev;
        std::vector<double> inputs;
        for (std::uint64_t i = 0; i < count; ++i) {
          int attempts = 0;
          while (!lemma_detail::draw(id, rng, ev, inputs)) {
            ++rep.rejected;
            if (++attempts >= kMaxLemmaAttempts)
              fail(ErrorKind::InvalidArgument,
                   "precondition sampler for " + std::string(lemma_name(id)) + " exhausted its attempts");
          }
          const bool bad = ev.residual > rel_tol * (1.0 + ev.scale);
          if (bad)
            rep.record(first + i, ev.residual, true, {}, inputs);
          else
            rep.record(first + i, ev.residual, false);
        }
        return rep;
      },
      workers);
}

// The a-sc merging inequality under its displayed hypotheses only (b/2 <= sc <= a - b),
// without the case assumption a - sc >= |a - c|. This form has counterexamples.
inline ViolationReport asc_merging_bare_sweep(std::uint64_t trials, std::uint64_t seed,
                                              double rel_tol = kDefaultRelTol, unsigned workers = 0) {
  require(trials > 0, ErrorKind::InvalidArgument, "trials must be positive");
  return chunked_sweep(
      trials, mix_seed(seed, {0xa5cULL}),
      [&](Rng& rng, std::uint64_t first, std::uint64_t count) {
        ViolationReport rep;
        for (std::uint64_t i = 0; i < count; ++i) {
          const auto d = lemma_detail::draw_asc(rng);
          const auto ev = lemma_detail::asc_eval(d);
          if (ev.residual > rel_tol * (1.0 + ev.scale))
            rep.record(first + i, ev.residual, true, {}, {d.a, d.b, d.c, d.s, d.alpha});
          else
            rep.record(first + i, ev.residual, false);
        }
        return rep;
      },
      workers);
}

inline ViolationReport lemma_battery(std::string_view name, std::uint64_t trials, std::uint64_t seed,
                                     double rel_tol = kDefaultRelTol, unsigned workers = 0) {
  return lemma_battery(parse_lemma(name), trials, seed, rel_tol, workers);
}

}  // namespace frechet
