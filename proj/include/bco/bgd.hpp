#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/descent.hpp"
#include "bco/random_stream.hpp"
#include "bco/types.hpp"

namespace bco {

enum class Schedule { General, Lipschitz, Custom };

inline const char* to_string(Schedule s) {
  switch (s) {
    case Schedule::General: return "general";
    case Schedule::Lipschitz: return "lipschitz";
    case Schedule::Custom: return "custom";
  }
  return "?";
}

/// Parameters of bandit gradient descent: step factor nu, perturbation radius
/// delta and shrink fraction alpha, plus the problem constants they came from.
struct BgdParams {
  double nu = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  std::size_t horizon = 0;
  Eigen::Index dimension = 0;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  double cost_bound = 0.0;
  std::optional<double> lipschitz;
  Schedule schedule = Schedule::Custom;

  /// Step of the equivalent expected-gradient descent, nu delta / d.
  double eta() const { return nu * delta / static_cast<double>(dimension); }

  /// Norm bound on the one-point estimates, d C / delta.
  double gradient_bound() const { return static_cast<double>(dimension) * cost_bound / delta; }
};

namespace detail {

inline void require_positive_constants(std::size_t n, Eigen::Index d, double r, double R, double C) {
  if (n < 1 || d < 1) throw InputError("schedule: n and d must be positive");
  if (!(r > 0.0) || !(R > 0.0) || !(C > 0.0)) throw InputError("schedule: r, R and C must be positive");
  if (r > R) throw InputError("schedule: inner radius exceeds outer radius");
}

}  // namespace detail

/// The schedule for bounded costs:
///   nu = R / (C sqrt n), delta = (r R^2 d^2 / (12 n))^(1/3), alpha = (3 R d / (2 r sqrt n))^(1/3),
/// admissible once n >= (3 R d / (2 r))^2.
inline BgdParams params_general(std::size_t n, Eigen::Index d, double r, double R, double C) {
  detail::require_positive_constants(n, d, r, R, C);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double threshold = std::pow(3.0 * R * dd / (2.0 * r), 2);
  if (nd < threshold) {
    throw HorizonTooSmall("horizon too small for the general schedule",
                          static_cast<std::size_t>(std::ceil(threshold)));
  }
  BgdParams p;
  p.nu = R / (C * std::sqrt(nd));
  p.delta = std::cbrt(r * R * R * dd * dd / (12.0 * nd));
  p.alpha = std::min(1.0, std::cbrt(3.0 * R * dd / (2.0 * r * std::sqrt(nd))));
  p.horizon = n;
  p.dimension = d;
  p.inner_radius = r;
  p.outer_radius = R;
  p.cost_bound = C;
  p.schedule = Schedule::General;
  return p;
}

/// The schedule for L-Lipschitz costs:
///   nu = R / (C sqrt n), delta = n^(-1/4) sqrt(R d C r / (3 (L r + C))), alpha = delta / r,
/// admissible while alpha < 1.
inline BgdParams params_lipschitz(std::size_t n, Eigen::Index d, double r, double R, double C, double L) {
  detail::require_positive_constants(n, d, r, R, C);
  if (!(L > 0.0)) throw InputError("schedule: L must be positive");
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double scale = std::sqrt(R * dd * C * r / (3.0 * (L * r + C)));
  BgdParams p;
  p.nu = R / (C * std::sqrt(nd));
  p.delta = scale * std::pow(nd, -0.25);
  p.alpha = p.delta / r;
  if (p.alpha >= 1.0) {
    throw HorizonTooSmall("horizon too small for the Lipschitz schedule (alpha >= 1)",
                          static_cast<std::size_t>(std::floor(std::pow(scale / r, 4))) + 1);
  }
  p.horizon = n;
  p.dimension = d;
  p.inner_radius = r;
  p.outer_radius = R;
  p.cost_bound = C;
  p.lipschitz = L;
  p.schedule = Schedule::Lipschitz;
  return p;
}

/// Distribution of the exploration direction u_t.
enum class Perturbation {
  /// Uniform on the unit sphere.
  Sphere,
  /// Uniform over normalized hypercube vertices p / sqrt(d), p in {-1, 1}^d.
  /// The resulting step is Spall's simultaneous-perturbation estimate taken
  /// at radius delta / sqrt(d), which has the same norm bound d C / delta.
  CubeVertex,
};

struct BgdState {
  /// Center y_t, kept in (1 - alpha) S.
  Vector y;
  /// Completed rounds.
  std::size_t round = 0;
  /// Perturbation and query of the pending round.
  Vector u;
  Vector x;
  bool awaiting_feedback = false;
};

/// Bandit gradient descent as a query/update state machine:
///   x_t = y_t + delta u_t,  y_{t+1} = P_{(1-alpha)S}(y_t - nu c_t(x_t) u_t),  y_1 = 0.
/// Only the scalar c_t(x_t) flows back in.
class BanditGradientDescent {
 public:
  BanditGradientDescent(ConvexBody body, BgdParams params, Perturbation perturbation = Perturbation::Sphere)
      : body_(std::move(body)), params_(std::move(params)), perturbation_(perturbation) {
    if (params_.dimension != body_.dimension()) throw InputError("bgd: parameter dimension differs from body");
    if (!(params_.delta >= 0.0) || !(params_.nu >= 0.0)) throw InputError("bgd: nu and delta must be non-negative");
    if (!(params_.alpha >= 0.0 && params_.alpha <= 1.0)) throw InputError("bgd: alpha must lie in [0, 1]");
    if (!(params_.cost_bound > 0.0)) throw InputError("bgd: C must be positive");
    // Queries stay feasible when every point of (1 - alpha) S has its
    // alpha r-ball inside S, which needs delta <= alpha r.
    const double r = body_.radii().inner;
    if (params_.delta > params_.alpha * r * (1.0 + 1e-12)) {
      throw ContractViolation("bgd: delta exceeds alpha * r, queries could leave the body");
    }
    if (params_.alpha < 1.0) shrunk_ = body_.shrink(params_.alpha);
    state_.y = Vector::Zero(body_.dimension());
    state_.u = Vector::Zero(body_.dimension());
    state_.x = state_.y;
  }

  const BgdState& state() const noexcept { return state_; }
  const BgdParams& params() const noexcept { return params_; }
  const ConvexBody& body() const noexcept { return body_; }

  /// (1 - alpha) S, or nullopt when alpha = 1 and the set is the origin alone.
  const std::optional<ConvexBody>& shrunk_body() const noexcept { return shrunk_; }

  /// Draws u_t and returns the point to play.
  const Vector& query(RandomStream& stream) {
    const Eigen::Index d = body_.dimension();
    return query_along(perturbation_ == Perturbation::Sphere ? stream.unit_sphere(d)
                                                             : stream.unit_cube_vertex(d));
  }

  /// Plays y_t + delta u with a caller-chosen unit vector u.
  const Vector& query_along(const Vector& u) {
    detail::require_dimension(u, body_.dimension(), "bgd query direction");
    if (std::abs(u.norm() - 1.0) > 1e-12) throw InputError("bgd: perturbation must be a unit vector");
    state_.u = u;
    state_.x = state_.y + params_.delta * u;
    state_.awaiting_feedback = true;
    return state_.x;
  }

  /// Consumes c_t(x_t) and moves the center.
  void update(double observed) {
    if (!state_.awaiting_feedback) throw ContractViolation("bgd: update without a pending query");
    if (!(std::abs(observed) <= params_.cost_bound)) {
      throw ContractViolation("bgd: observed cost " + std::to_string(observed) + " outside [-C, C] with C = " +
                              std::to_string(params_.cost_bound));
    }
    const Vector moved = state_.y - params_.nu * observed * state_.u;
    state_.y = shrunk_ ? shrunk_->project(moved) : Vector::Zero(body_.dimension());
    state_.awaiting_feedback = false;
    ++state_.round;
  }

  /// The expected-gradient descent this update is an instance of: step
  /// nu delta / d, bound d C / delta, over (1 - alpha) S.
  DescentConfig descent_config() const {
    if (!shrunk_) throw InputError("bgd: alpha = 1 has no descent view");
    return {params_.eta(), params_.gradient_bound(), *shrunk_, params_.horizon};
  }

 private:
  ConvexBody body_;
  BgdParams params_;
  Perturbation perturbation_;
  std::optional<ConvexBody> shrunk_;
  BgdState state_;
};

struct BanditRun {
  std::vector<Vector> queries;
  std::vector<Vector> centers;
  /// c_t(x_t), the charged costs.
  std::vector<double> costs;
  /// c_t(y_t), diagnostic only.
  std::vector<double> center_costs;
  double total = 0.0;
  double center_total = 0.0;
};

/// Runs all rounds of `costs` against a fresh learner starting at y_1 = 0.
inline BanditRun run_bgd(const CostSequence& costs, const BgdParams& params, RandomStream& stream,
                         Perturbation perturbation = Perturbation::Sphere) {
  BanditGradientDescent learner(costs.body(), params, perturbation);
  const std::size_t n = costs.horizon();
  BanditRun run;
  run.queries.reserve(n);
  run.centers.reserve(n);
  run.costs.reserve(n);
  run.center_costs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector y = learner.state().y;
    const Vector x = learner.query(stream);
    const double value = costs[t](x);
    const double center_value = costs[t](y);
    learner.update(value);
    run.queries.push_back(x);
    run.centers.push_back(y);
    run.costs.push_back(value);
    run.center_costs.push_back(center_value);
    run.total += value;
    run.center_total += center_value;
  }
  return run;
}

}  // namespace bco
