#pragma once

// Independent reference computations used to check library results.

#include <algorithm>
#include <cmath>
#include <limits>

#include "bco/types.hpp"

namespace bco::testing {

/// Nearest point of the corner triangle {x >= 0, x1 + x2 <= 1} to p, by
/// repeated grid search that zooms in around the best lattice point.
inline Vector brute_force_triangle_projection(const Vector& p) {
  auto feasible = [](double a, double b) { return a >= 0.0 && b >= 0.0 && a + b <= 1.0; };
  double lo_a = 0.0, lo_b = 0.0, span = 1.0;
  Vector best(2);
  for (int level = 0; level < 12; ++level) {
    const int k = 200;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) {
        const double a = lo_a + span * i / k;
        const double b = lo_b + span * j / k;
        if (!feasible(a, b)) continue;
        const double dist = std::hypot(a - p[0], b - p[1]);
        if (dist < best_dist) {
          best_dist = dist;
          best << a, b;
        }
      }
    }
    span /= 20.0;
    lo_a = std::max(0.0, best[0] - span / 2);
    lo_b = std::max(0.0, best[1] - span / 2);
  }
  return best;
}

}  // namespace bco::testing
