#pragma once

#include <cmath>
#include <cstdint>
#include <variant>

#include "bco/convex_body.hpp"
#include "bco/random_stream.hpp"

namespace bco {

/// Rejection sampling gives up below this acceptance rate.
inline constexpr double kMinAcceptanceRate = 1e-6;

namespace detail {

/// vol(simplex) / vol(bounding box) = 1 / d!, the box being the unit cube
/// around the corner simplex.
inline double simplex_acceptance_rate(Eigen::Index d) {
  return std::exp(-std::lgamma(static_cast<double>(d) + 1.0));
}

}  // namespace detail

/// A point drawn uniformly from the body.
///
/// Balls, boxes and ellipsoids are sampled directly, affine images push a
/// base sample through the map, and the simplex rejects from its axis-aligned
/// bounding box.
inline Vector sample_uniform(const ConvexBody& body, RandomStream& stream) {
  const Eigen::Index d = body.dimension();
  const Vector sample = std::visit(
      [&](const auto& s) -> Vector {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, shapes::Ball>) {
          return s.radius * stream.unit_ball(d);
        } else if constexpr (std::is_same_v<S, shapes::Box>) {
          Vector x(d);
          for (Eigen::Index i = 0; i < d; ++i) x[i] = (2.0 * stream.uniform() - 1.0) * s.half_widths[i];
          return x;
        } else if constexpr (std::is_same_v<S, shapes::Ellipsoid>) {
          const Vector z = stream.unit_ball(d);
          return s.eigenvectors * (s.eigenvalues.array().rsqrt() * (s.eigenvectors.transpose() * z).array()).matrix();
        } else if constexpr (std::is_same_v<S, shapes::AffineImage>) {
          return s.M * sample_uniform(*s.base, stream) + s.offset;
        } else {
          if (detail::simplex_acceptance_rate(d) < kMinAcceptanceRate) {
            throw DimensionTooHigh("dimension too high for rejection sampling (d = " +
                                   std::to_string(d) + ")");
          }
          constexpr std::uint64_t kMaxAttempts = 100'000'000;
          Vector x(d);
          for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
            for (Eigen::Index i = 0; i < d; ++i) x[i] = stream.uniform();
            if (x.sum() <= 1.0) return x - s.centroid;
          }
          throw DimensionTooHigh("rejection sampling exhausted its attempt budget");
        }
      },
      body.shape());
  return body.scale() * sample;
}

}  // namespace bco
