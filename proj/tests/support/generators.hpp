#pragma once

// Hand-rolled generators for property tests. Every generator draws from a
// caller-owned RandomStream so failures replay from the seed alone.

#include <string>
#include <vector>

#include "bco/bco.hpp"

namespace bco::testing {

inline double uniform_in(RandomStream& s, double lo, double hi) { return lo + (hi - lo) * s.uniform(); }

/// Gaussian point with per-coordinate spread `scale`.
inline Vector random_point(RandomStream& s, Eigen::Index d, double scale) {
  Vector x(d);
  for (Eigen::Index i = 0; i < d; ++i) x[i] = scale * s.normal();
  return x;
}

/// Symmetric positive definite matrix with eigenvalues in [lo, hi].
inline Matrix random_spd(RandomStream& s, Eigen::Index d, double lo, double hi) {
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = s.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ();
  Vector lambda(d);
  for (Eigen::Index i = 0; i < d; ++i) lambda[i] = uniform_in(s, lo, hi);
  return q * lambda.asDiagonal() * q.transpose();
}

/// Invertible matrix with singular values in [lo, hi], not diagonal.
inline Matrix random_invertible(RandomStream& s, Eigen::Index d, double lo, double hi) {
  const Matrix a = random_spd(s, d, lo, hi);
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = s.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  return Matrix(qr.householderQ()) * a;
}

struct NamedBody {
  std::string name;
  ConvexBody body;
};

/// One body of every shape in dimension d, including a generic affine image
/// that is projected iteratively.
inline std::vector<NamedBody> body_zoo(Eigen::Index d, std::uint64_t seed = 17) {
  RandomStream s(seed, static_cast<std::uint64_t>(d));
  Vector half(d);
  for (Eigen::Index i = 0; i < d; ++i) half[i] = uniform_in(s, 0.3, 2.0);
  std::vector<NamedBody> zoo = {
      {"ball", ConvexBody::ball(d, uniform_in(s, 0.5, 2.0))},
      {"box", ConvexBody::box(half)},
      {"simplex", ConvexBody::simplex(d)},
      {"ellipsoid", ConvexBody::ellipsoid(random_spd(s, d, 0.3, 4.0))},
  };
  if (d >= 2) {
    Vector offset = random_point(s, d, 0.05);
    zoo.push_back({"affine-box", ConvexBody::affine_image(random_invertible(s, d, 0.5, 2.0), offset,
                                                          ConvexBody::cube(d, 1.0))});
    zoo.push_back({"affine-simplex", ConvexBody::affine_image(random_invertible(s, d, 0.7, 1.5),
                                                              Vector::Zero(d), ConvexBody::simplex(d))});
  }
  return zoo;
}

/// Convex quadratic x'Qx + g'x + k with Q positive semidefinite.
inline QuadraticForm random_convex_quadratic(RandomStream& s, Eigen::Index d) {
  Matrix b(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) b(i, j) = s.normal() / std::sqrt(static_cast<double>(d));
  }
  return {b.transpose() * b, random_point(s, d, 1.0), s.normal()};
}

}  // namespace bco::testing
