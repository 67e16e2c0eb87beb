#pragma once

#include <cmath>
#include <utility>

#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/random_stream.hpp"
#include "bco/statistics.hpp"
#include "bco/types.hpp"

namespace bco {

/// A single-evaluation gradient estimate g = (d / delta) f(x + delta u) u.
struct GradientEstimate {
  Vector g;
  Vector x;
  Vector u;
  double delta;
  /// f(x + delta u), the only value the estimate consumed.
  double value;
};

struct VectorMeanEstimate {
  Vector mean;
  Vector standard_error;
  std::size_t samples;
};

/// One-point estimate of the gradient of the delta-smoothed f at x.
///
/// Averaged over u uniform on the unit sphere this is exactly the gradient of
/// f_hat(x) = E_{v in B}[f(x + delta v)], for any f.
template <typename F>
GradientEstimate one_point_gradient(F&& f, const Vector& x, double delta, const Vector& u) {
  if (!(delta > 0.0)) throw InputError("one_point_gradient: delta must be positive");
  detail::require_dimension(u, x.size(), "one_point_gradient perturbation");
  const double value = f(Vector(x + delta * u));
  const double d = static_cast<double>(x.size());
  return {(d / delta) * value * u, x, u, delta, value};
}

/// Mean and standard error of m one-point estimates with fresh uniform u.
template <typename F>
VectorMeanEstimate mean_one_point_gradient(F&& f, const Vector& x, double delta, RandomStream& stream,
                                           std::size_t m) {
  VectorMoments moments(x.size());
  for (std::size_t i = 0; i < m; ++i) {
    moments.add(one_point_gradient(f, x, delta, stream.unit_sphere(x.size())).g);
  }
  return {moments.mean(), moments.standard_error(), m};
}

/// Monte Carlo estimate of f_hat(x) with the ball directions supplied by
/// `next_v` (a callable returning a vector in the unit ball). When `domain`
/// is given every evaluation point must lie in it.
template <typename F, typename BallSource>
MeanEstimate smoothed_value_with(F&& f, const Vector& x, double delta, std::size_t m,
                                 BallSource&& next_v, const ConvexBody* domain = nullptr) {
  if (!(delta > 0.0)) throw InputError("smoothed_value: delta must be positive");
  if (m < 1) throw InputError("smoothed_value: need at least one sample");
  if (domain != nullptr) detail::require_dimension(x, domain->dimension(), "smoothed_value");
  RunningMoments moments;
  for (std::size_t i = 0; i < m; ++i) {
    const Vector v = next_v();
    const Vector point = x + delta * v;
    if (domain != nullptr && !domain->contains(point)) {
      throw DomainError("smoothed_value: the delta-ball around x leaves the domain");
    }
    moments.add(f(point));
  }
  return {moments.mean(), moments.standard_error(), m};
}

template <typename F>
MeanEstimate smoothed_value(F&& f, const Vector& x, double delta, RandomStream& stream, std::size_t m,
                            const ConvexBody* domain = nullptr) {
  return smoothed_value_with(std::forward<F>(f), x, delta, m,
                             [&] { return stream.unit_ball(x.size()); }, domain);
}

namespace detail {

inline const QuadraticForm& require_quadratic(const CostFunction& f, const char* what) {
  const QuadraticForm* q = f.quadratic();
  if (q == nullptr) {
    throw InputError(std::string(what) + ": closed form known only for linear and quadratic costs");
  }
  return *q;
}

}  // namespace detail

/// Exact gradient of the smoothed function for linear or quadratic f.
/// Smoothing adds the constant delta^2 tr(Q) / (d + 2), so the gradient is
/// unchanged: (Q + Q^T) x + g.
inline Vector smoothed_gradient_reference(const CostFunction& f, const Vector& x, double delta) {
  if (!(delta > 0.0)) throw InputError("smoothed_gradient_reference: delta must be positive");
  const QuadraticForm& q = detail::require_quadratic(f, "smoothed_gradient_reference");
  detail::require_dimension(x, q.dimension(), "smoothed_gradient_reference");
  return q.gradient(x);
}

/// Exact f_hat(x) for linear or quadratic f: f(x) + delta^2 tr(Q) / (d + 2).
inline double smoothed_value_reference(const CostFunction& f, const Vector& x, double delta) {
  const QuadraticForm& q = detail::require_quadratic(f, "smoothed_value_reference");
  detail::require_dimension(x, q.dimension(), "smoothed_value_reference");
  const double d = static_cast<double>(q.dimension());
  return q(x) + delta * delta * q.Q.trace() / (d + 2.0);
}

/// Simultaneous-perturbation estimate f(x + delta p) / delta * [1/p_1, ..., 1/p_d].
template <typename F>
Vector spall_gradient(F&& f, const Vector& x, double delta, const Vector& p) {
  if (!(delta > 0.0)) throw InputError("spall_gradient: delta must be positive");
  detail::require_dimension(p, x.size(), "spall_gradient perturbation");
  if ((p.array() == 0.0).any()) throw InputError("spall_gradient: perturbation has a zero entry");
  const double value = f(Vector(x + delta * p));
  return (value / delta) * p.cwiseInverse();
}

}  // namespace bco
