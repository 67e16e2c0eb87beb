#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bco/body_sampling.hpp"
#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/random_stream.hpp"
#include "bco/types.hpp"

namespace bco {

// Oblivious adversaries. Every constructor takes only the body, the horizon
// and its own parameters; the resulting sequence is fixed before any play.

/// Scale s for which s (R + |target|)^2 equals the requested bound C.
inline double quadratic_scale_for_bound(const ConvexBody& body, const Vector& target, double bound) {
  const double reach = body.radii().outer + target.norm();
  return bound / (reach * reach);
}

/// c_t(x) = s |x - x*|^2 for every t, with C = s (R + |x*|)^2 and L = 2 s (R + |x*|).
inline CostSequence make_fixed_quadratic(const ConvexBody& body, std::size_t horizon, const Vector& target,
                                         double scale) {
  detail::require_dimension(target, body.dimension(), "fixed quadratic target");
  if (!body.contains(target)) throw InputError("fixed quadratic: target lies outside the body");
  if (!(scale > 0.0)) throw InputError("fixed quadratic: scale must be positive");
  if (horizon < 1) throw InputError("fixed quadratic: horizon must be positive");
  const double reach = body.radii().outer + target.norm();
  std::vector<CostFunction> rounds(horizon, CostFunction(QuadraticForm::isotropic(scale, target)));
  return CostSequence(body, std::move(rounds), scale * reach * reach, 2.0 * scale * reach, "fixed-quadratic");
}

/// c_t(x) = a w_t . x with C = a R and L = a.
inline CostSequence make_drifting_linear(const ConvexBody& body, const std::vector<Vector>& directions,
                                         double magnitude) {
  if (!(magnitude > 0.0)) throw InputError("drifting linear: magnitude must be positive");
  if (directions.empty()) throw InputError("drifting linear: empty direction schedule");
  std::vector<CostFunction> rounds;
  rounds.reserve(directions.size());
  for (const auto& w : directions) {
    detail::require_dimension(w, body.dimension(), "drifting linear direction");
    if (std::abs(w.norm() - 1.0) > 1e-12) throw InputError("drifting linear: directions must be unit vectors");
    rounds.emplace_back(QuadraticForm::linear(magnitude * w));
  }
  return CostSequence(body, std::move(rounds), magnitude * body.radii().outer, magnitude, "drifting-linear");
}

/// Quadratic pulled toward `early` on rounds t < switch_round (zero-based) and
/// toward `late` afterwards. C and L are the larger of the two phases.
inline CostSequence make_abrupt_switch(const ConvexBody& body, std::size_t horizon, const Vector& early,
                                       const Vector& late, std::size_t switch_round, double scale) {
  detail::require_dimension(early, body.dimension(), "abrupt switch early target");
  detail::require_dimension(late, body.dimension(), "abrupt switch late target");
  if (!body.contains(early) || !body.contains(late)) throw InputError("abrupt switch: target outside the body");
  if (!(scale > 0.0)) throw InputError("abrupt switch: scale must be positive");
  if (horizon < 1) throw InputError("abrupt switch: horizon must be positive");
  const double reach = body.radii().outer + std::max(early.norm(), late.norm());
  const CostFunction before(QuadraticForm::isotropic(scale, early));
  const CostFunction after(QuadraticForm::isotropic(scale, late));
  std::vector<CostFunction> rounds;
  rounds.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) rounds.push_back(t < switch_round ? before : after);
  return CostSequence(body, std::move(rounds), scale * reach * reach, 2.0 * scale * reach, "abrupt-switch");
}

// Direction schedules for make_drifting_linear.

inline std::vector<Vector> constant_directions(const Vector& w, std::size_t horizon) {
  return std::vector<Vector>(horizon, w.normalized());
}

/// +w, -w, +w, ...
inline std::vector<Vector> alternating_directions(const Vector& w, std::size_t horizon) {
  const Vector unit = w.normalized();
  std::vector<Vector> out;
  out.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) out.push_back(t % 2 == 0 ? unit : Vector(-unit));
  return out;
}

/// Rotates in the plane of the first two coordinates, one turn per `period` rounds.
inline std::vector<Vector> rotating_directions(Eigen::Index d, std::size_t horizon, double period) {
  if (d < 2) throw InputError("rotating directions need d >= 2");
  if (!(period > 0.0)) throw InputError("rotating directions: period must be positive");
  std::vector<Vector> out;
  out.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / period;
    Vector w = Vector::Zero(d);
    w[0] = std::cos(angle);
    w[1] = std::sin(angle);
    out.push_back(w);
  }
  return out;
}

/// Independent uniform directions drawn from their own seeded stream.
inline std::vector<Vector> random_directions(Eigen::Index d, std::size_t horizon, std::uint64_t seed) {
  RandomStream stream(seed, 0xd1f7);
  std::vector<Vector> out;
  out.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) out.push_back(stream.unit_sphere(d));
  return out;
}

struct ValidationReport {
  bool passed = true;
  /// "bound", "lipschitz" or "convexity" when a check failed.
  std::string violation;
  std::size_t round = 0;
  std::optional<Vector> witness;
  std::optional<Vector> witness_other;
  /// Left and right sides of the violated inequality.
  double observed = 0.0;
  double limit = 0.0;
  std::size_t checks = 0;
};

/// Samples m (round, x, y) triples with x, y uniform in the body and checks
/// |c_t| <= C, the declared Lipschitz bound and midpoint convexity. Stops at
/// the first violation and reports it with its witness.
inline ValidationReport validate(const CostSequence& costs, RandomStream& stream, std::size_t m,
                                 double slack = kMembershipTolerance) {
  ValidationReport report;
  const double C = costs.bound();
  const auto L = costs.lipschitz();
  auto fail = [&](const char* what, std::size_t t, const Vector& x, std::optional<Vector> y, double lhs,
                  double rhs) {
    report.passed = false;
    report.violation = what;
    report.round = t;
    report.witness = x;
    report.witness_other = std::move(y);
    report.observed = lhs;
    report.limit = rhs;
  };
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t t = stream.index(costs.horizon());
    const Vector x = sample_uniform(costs.body(), stream);
    const Vector y = sample_uniform(costs.body(), stream);
    const CostFunction& c = costs[t];
    const double cx = c(x);
    const double cy = c(y);
    report.checks = i + 1;
    if (std::abs(cx) > C + slack) {
      fail("bound", t, x, std::nullopt, std::abs(cx), C);
      return report;
    }
    if (L) {
      const double lhs = std::abs(cx - cy);
      const double rhs = *L * (x - y).norm() + slack;
      if (lhs > rhs) {
        fail("lipschitz", t, x, y, lhs, rhs);
        return report;
      }
    }
    const double mid = c(Vector(0.5 * (x + y)));
    const double chord = 0.5 * (cx + cy) + slack;
    if (mid > chord) {
      fail("convexity", t, x, y, mid, chord);
      return report;
    }
  }
  return report;
}

}  // namespace bco
