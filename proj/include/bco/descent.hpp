#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/types.hpp"

namespace bco {

/// Relative slack on the gradient-norm contract, absorbing the rounding of
/// |u| = 1 in estimates that sit exactly on the bound.
inline constexpr double kGradientBoundSlack = 1e-12;

struct DescentConfig {
  double eta;
  double gradient_bound;
  ConvexBody body;
  std::size_t horizon;

  /// The step R / (G sqrt(n)) that balances R^2 / (2 eta) against n eta G^2 / 2.
  static DescentConfig with_default_step(ConvexBody body, double gradient_bound, std::size_t horizon) {
    if (!(gradient_bound > 0.0)) throw InputError("descent: G must be positive");
    if (horizon < 1) throw InputError("descent: horizon must be positive");
    const double eta = body.radii().outer / (gradient_bound * std::sqrt(static_cast<double>(horizon)));
    return {eta, gradient_bound, std::move(body), horizon};
  }

  /// R G sqrt(n), the regret guarantee for this configuration's default step.
  double regret_bound() const {
    return body.radii().outer * gradient_bound * std::sqrt(static_cast<double>(horizon));
  }
};

/// x_{t+1} = P_S(x_t - eta g_t). Gradients above G abort: the regret analysis
/// needs the bound, and clipping would hide the breach.
inline Vector ogd_step(const Vector& x, const Vector& g, const DescentConfig& config) {
  if (!(config.eta > 0.0) || !(config.gradient_bound > 0.0)) {
    throw InputError("ogd_step: eta and G must be positive");
  }
  detail::require_dimension(x, config.body.dimension(), "ogd_step point");
  detail::require_dimension(g, config.body.dimension(), "ogd_step gradient");
  if (!config.body.contains(x)) throw ContractViolation("ogd_step: current point is outside the body");
  const double norm = g.norm();
  if (norm > config.gradient_bound * (1.0 + kGradientBoundSlack)) {
    throw ContractViolation("ogd_step: |g| = " + std::to_string(norm) + " exceeds G = " +
                            std::to_string(config.gradient_bound));
  }
  return config.body.project(x - config.eta * g);
}

struct DescentRun {
  /// x_1..x_n, the points charged.
  std::vector<Vector> iterates;
  std::vector<double> costs;
  double total = 0.0;
};

/// Projected descent from x_1 = 0 with gradients supplied by
/// `gradient(t, x_t)` (zero-based t). Exact gradients give Zinkevich's online
/// gradient descent; unbiased estimates give its expected version.
template <typename GradientSource>
DescentRun run_descent(const CostSequence& costs, const DescentConfig& config, GradientSource&& gradient) {
  const std::size_t n = std::min(config.horizon, costs.horizon());
  DescentRun run;
  run.iterates.reserve(n);
  run.costs.reserve(n);
  Vector x = Vector::Zero(config.body.dimension());
  for (std::size_t t = 0; t < n; ++t) {
    const double cost = costs[t](x);
    run.iterates.push_back(x);
    run.costs.push_back(cost);
    run.total += cost;
    const Vector g = gradient(t, static_cast<const Vector&>(x));
    x = ogd_step(x, g, config);
  }
  return run;
}

/// Full-information online gradient descent using each cost's exact gradient.
inline DescentRun run_full_information(const CostSequence& costs, const DescentConfig& config) {
  if (!costs.has_gradients()) throw InputError("run_full_information: costs need analytic gradients");
  return run_descent(costs, config, [&](std::size_t t, const Vector& x) { return costs[t].gradient(x); });
}

}  // namespace bco
