#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bco/body_sampling.hpp"
#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/random_stream.hpp"
#include "bco/types.hpp"

namespace bco {

/// u = M x + offset, with M invertible.
class AffineTransform {
 public:
  AffineTransform(Matrix M, Vector offset) : M_(std::move(M)), offset_(std::move(offset)) {
    if (M_.rows() != M_.cols() || M_.rows() != offset_.size()) throw InputError("affine transform: shape mismatch");
    Eigen::JacobiSVD<Matrix> svd(M_);
    const Vector sv = svd.singularValues();
    if (!(sv.minCoeff() > 1e-12 * sv.maxCoeff())) throw InputError("affine transform: matrix is singular");
    condition_ = sv.maxCoeff() / sv.minCoeff();
    inverse_ = M_.inverse();
  }

  static AffineTransform identity(Eigen::Index d) {
    return AffineTransform(Matrix::Identity(d, d), Vector::Zero(d));
  }

  const Matrix& matrix() const noexcept { return M_; }
  const Vector& offset() const noexcept { return offset_; }
  const Matrix& inverse_matrix() const noexcept { return inverse_; }
  double condition_number() const noexcept { return condition_; }
  Eigen::Index dimension() const noexcept { return offset_.size(); }

  Vector apply(const Vector& x) const { return M_ * x + offset_; }
  Vector pull_back(const Vector& u) const { return inverse_ * (u - offset_); }

  ConvexBody image(const ConvexBody& body) const { return ConvexBody::affine_image(M_, offset_, body); }

  AffineTransform scaled(double factor) const { return AffineTransform(factor * M_, factor * offset_); }

 private:
  Matrix M_;
  Vector offset_;
  Matrix inverse_;
  double condition_ = 1.0;
};

/// Outcome of whitening a body: the map, and what it achieved, measured.
struct IsotropicRounding {
  AffineTransform transform;
  /// Achieved slack: T(S) lies in the ball of radius 1.01 d kappa. At least 1.
  double kappa;
  /// Smallest boundary distance of T(S) found over probe directions.
  double inner_radius;
  /// Largest |T x| found over samples and probe directions.
  double outer_radius;
  std::size_t samples;

  /// (r', R') = (1, 1.01 d kappa).
  Radii declared_radii() const {
    return {1.0, 1.01 * static_cast<double>(transform.dimension()) * kappa};
  }
};

namespace detail {

/// Distance from the origin to the boundary of `body` along unit w, by bisection on membership.
inline double boundary_distance(const ConvexBody& body, const Vector& w) {
  double lo = 0.0;
  double hi = 1.0;
  while (body.contains(hi * w)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw InputError("boundary search: body appears unbounded");
  }
  for (int i = 0; i < 80 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (body.contains(mid * w) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

/// Puts a body in near-isotropic position from m uniform samples.
///
/// T = Sigma^(-1/2) (x - mean) with Sigma the sample covariance. The achieved
/// radii of T(S) are then measured: if the inner radius falls below 1 the map
/// is rescaled so it is exactly 1, and kappa records how far the outer radius
/// exceeds 1.01 d.
inline IsotropicRounding isotropic_transform(const ConvexBody& body, RandomStream& stream, std::size_t m,
                                             std::size_t probe_samples = 100000,
                                             std::size_t probe_directions = 2000) {
  const Eigen::Index d = body.dimension();
  const auto dd = static_cast<std::size_t>(d);
  if (m < 1000 * dd * dd) throw InputError("isotropic_transform: need m >= 1000 d^2 samples");

  Matrix samples(d, static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) samples.col(static_cast<Eigen::Index>(i)) = sample_uniform(body, stream);
  const Vector mean = samples.rowwise().mean();
  const Matrix centered = samples.colwise() - mean;
  const Matrix covariance = centered * centered.transpose() / static_cast<double>(m - 1);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(covariance);
  const Vector lambda = eig.eigenvalues();
  if (eig.info() != Eigen::Success || !(lambda.minCoeff() > 1e-12 * lambda.maxCoeff())) {
    throw SingularCovariance("isotropic_transform: sample covariance is singular");
  }
  const Matrix whitening = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                           eig.eigenvectors().transpose();
  AffineTransform transform(whitening, -whitening * mean);

  const ConvexBody image = transform.image(body);
  double inner = std::numeric_limits<double>::infinity();
  double outer = 0.0;
  auto probe = [&](const Vector& w) {
    const double dist = detail::boundary_distance(image, w);
    inner = std::min(inner, dist);
    outer = std::max(outer, dist);
  };
  for (Eigen::Index i = 0; i < d; ++i) {
    probe(Vector::Unit(d, i));
    probe(-Vector::Unit(d, i));
  }
  for (std::size_t i = 0; i < probe_directions; ++i) probe(stream.unit_sphere(d));
  for (std::size_t i = 0; i < probe_samples; ++i) {
    outer = std::max(outer, transform.apply(sample_uniform(body, stream)).norm());
  }

  if (inner < 1.0) {
    transform = transform.scaled(1.0 / inner);
    outer /= inner;
    inner = 1.0;
  }
  const double kappa = std::max(1.0, outer / (1.01 * static_cast<double>(d)));
  return {std::move(transform), kappa, inner, outer, m};
}

/// c'_t(u) = c_t(T^{-1} u) over T(S), declared with radii `radii`, C' = C and
/// L' = L R (R the outer radius of the original body).
inline CostSequence transform_costs(const CostSequence& costs, const AffineTransform& transform, Radii radii) {
  const Matrix& P = transform.inverse_matrix();
  const Vector q = -P * transform.offset();
  std::vector<CostFunction> rounds;
  rounds.reserve(costs.horizon());
  for (const auto& c : costs.rounds()) {
    if (const QuadraticForm* form = c.quadratic()) {
      rounds.emplace_back(form->composed(P, q));
    } else if (c.has_gradient()) {
      rounds.push_back(CostFunction::opaque([c, transform](const Vector& u) { return c(transform.pull_back(u)); },
                                            [c, transform](const Vector& u) -> Vector {
                                              return transform.inverse_matrix().transpose() *
                                                     c.gradient(transform.pull_back(u));
                                            }));
    } else {
      rounds.push_back(CostFunction::opaque([c, transform](const Vector& u) { return c(transform.pull_back(u)); }));
    }
  }
  std::optional<double> lipschitz;
  if (costs.lipschitz()) lipschitz = *costs.lipschitz() * costs.body().radii().outer;
  ConvexBody image = transform.image(costs.body()).with_declared_radii(radii);
  return CostSequence(std::move(image), std::move(rounds), costs.bound(), lipschitz, costs.name());
}

inline CostSequence transform_costs(const CostSequence& costs, const IsotropicRounding& rounding) {
  return transform_costs(costs, rounding.transform, rounding.declared_radii());
}

}  // namespace bco
