#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "frechet/point.hpp"

namespace frechet {

struct Witness {
  std::uint64_t trial = 0;
  double residual = 0.0;
  std::vector<SpacePoint> points;  // y, z, q, p (or whatever the check draws)
  std::vector<double> scalars;     // scalar inputs for arithmetic checks
};

// Outcome of a randomized sweep. Only the worst violating draw is kept.
struct ViolationReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::uint64_t rejected = 0;  // draws discarded by a precondition, not counted in trials
  double worst_residual = -std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;

  bool ok() const { return violations == 0; }

  void record(std::uint64_t trial, double residual, bool violated, const std::vector<SpacePoint>& points = {},
              const std::vector<double>& scalars = {}) {
    ++trials;
    if (residual > worst_residual) worst_residual = residual;
    if (!violated) return;
    ++violations;
    if (!witness || residual > witness->residual || (residual == witness->residual && trial < witness->trial))
      witness = Witness{trial, residual, points, scalars};
  }

  // Associative and commutative up to the witness tie rule (lower trial wins).
  ViolationReport& merge(const ViolationReport& o) {
    trials += o.trials;
    violations += o.violations;
    rejected += o.rejected;
    if (o.worst_residual > worst_residual) worst_residual = o.worst_residual;
    if (o.witness && (!witness || o.witness->residual > witness->residual ||
                      (o.witness->residual == witness->residual && o.witness->trial < witness->trial)))
      witness = o.witness;
    return *this;
  }
};

}  // namespace frechet
