#include <gtest/gtest.h>

#include <cmath>

#include "../support/generators.hpp"
#include "bco/bco.hpp"

using bco::ConvexBody;
using bco::RandomStream;
using bco::Vector;

TEST(UnitSphere, OneDimensionIsAFairSign) {
  RandomStream s(1, 0);
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const Vector u = s.unit_sphere(1);
    ASSERT_TRUE(u[0] == 1.0 || u[0] == -1.0);
    plus += u[0] > 0 ? 1 : 0;
  }
  EXPECT_NEAR(plus / 10000.0, 0.5, 0.01);
}

TEST(UnitSphere, NormIsOne) {
  RandomStream s(2, 0);
  for (Eigen::Index d : {1, 2, 3, 7, 20}) {
    for (int i = 0; i < 1000; ++i) ASSERT_NEAR(s.unit_sphere(d).norm(), 1.0, 1e-12);
  }
}

TEST(UnitSphere, SecondMomentIsIdentityOverD) {
  RandomStream s(3, 0);
  bco::Matrix m = bco::Matrix::Zero(3, 3);
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const Vector u = s.unit_sphere(3);
    m.noalias() += u * u.transpose();
  }
  m /= n;
  EXPECT_LE((m - bco::Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff(), 3e-3);
}

// |mean| of n uniform unit vectors has RMS 1/sqrt(n); allow 3 times that.
TEST(UnitSphere, MeanIsNearZero) {
  RandomStream s(4, 0);
  const int n = 1000000;
  for (Eigen::Index d : {2, 5}) {
    Vector sum = Vector::Zero(d);
    for (int i = 0; i < n; ++i) sum += s.unit_sphere(d);
    EXPECT_LE((sum / n).norm(), 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST(UnitSphere, ZeroDimensionIsRejected) {
  RandomStream s(5, 0);
  EXPECT_THROW(s.unit_sphere(0), bco::InputError);
  EXPECT_THROW(s.unit_ball(0), bco::InputError);
}

TEST(UnitBall, StaysInside) {
  RandomStream s(6, 0);
  for (Eigen::Index d : {1, 2, 4, 9}) {
    for (int i = 0; i < 10000; ++i) ASSERT_LE(s.unit_ball(d).norm(), 1.0);
  }
}

TEST(UnitBall, SquaredNormMoment) {
  RandomStream s(7, 0);
  bco::RunningMoments m;
  for (int i = 0; i < 100000; ++i) m.add(s.unit_ball(2).squaredNorm());
  EXPECT_NEAR(m.mean(), 0.5, 0.01);
}

TEST(UnitBall, OneDimensionalMeanIsZero) {
  RandomStream s(8, 0);
  bco::RunningMoments m;
  for (int i = 0; i < 100000; ++i) m.add(s.unit_ball(1)[0]);
  EXPECT_NEAR(m.mean(), 0.0, 0.01);
}

TEST(RandomStream, SameSeedAndStreamReplayExactly) {
  RandomStream a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.unit_sphere(4), b.unit_sphere(4));
    ASSERT_EQ(a.unit_ball(2), b.unit_ball(2));
  }
}

TEST(RandomStream, DistinctStreamsDiffer) {
  RandomStream a(42, 3), b(42, 4), c(43, 3);
  const Vector x = a.unit_sphere(4);
  EXPECT_NE(x, b.unit_sphere(4));
  EXPECT_NE(x, c.unit_sphere(4));
}

// Streams with neighbouring ids are uncorrelated.
TEST(RandomStream, NeighbouringStreamsAreUncorrelated) {
  RandomStream a(9, 0), b(9, 1);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += a.normal() * b.normal();
  EXPECT_LE(std::abs(sum / n), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(RandomStream, CubeVertexIsNormalized) {
  RandomStream s(10, 0);
  for (int i = 0; i < 100; ++i) {
    const Vector p = s.unit_cube_vertex(4);
    EXPECT_NEAR(p.norm(), 1.0, 1e-15);
    for (Eigen::Index j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(std::abs(p[j]), 0.5);
  }
}

TEST(SampleUniform, BallMoment) {
  RandomStream s(11, 0);
  for (Eigen::Index d : {2, 5}) {
    bco::RunningMoments m;
    const auto ball = ConvexBody::ball(d);
    for (int i = 0; i < 100000; ++i) m.add(bco::sample_uniform(ball, s).squaredNorm());
    const double dd = static_cast<double>(d);
    EXPECT_NEAR(m.mean(), dd / (dd + 2.0), 3.0 * m.standard_error());
  }
}

TEST(SampleUniform, BoxCoordinateVariance) {
  RandomStream s(12, 0);
  const auto box = ConvexBody::cube(2, 1.0);
  bco::RunningMoments m0, m1;
  for (int i = 0; i < 100000; ++i) {
    const Vector x = bco::sample_uniform(box, s);
    m0.add(x[0] * x[0]);
    m1.add(x[1] * x[1]);
  }
  EXPECT_NEAR(m0.mean(), 1.0 / 3.0, 3.0 * m0.standard_error());
  EXPECT_NEAR(m1.mean(), 1.0 / 3.0, 3.0 * m1.standard_error());
}

// The centroid of a uniform sample of the recentered simplex is the origin,
// and each barycentric coordinate has mean 1/(d+1).
TEST(SampleUniform, SimplexIsCentered) {
  RandomStream s(13, 0);
  const Eigen::Index d = 3;
  const auto simplex = ConvexBody::simplex(d);
  bco::VectorMoments m(d);
  for (int i = 0; i < 50000; ++i) m.add(bco::sample_uniform(simplex, s));
  for (Eigen::Index j = 0; j < d; ++j) EXPECT_NEAR(m.mean()[j], 0.0, 3.0 * m.standard_error()[j]);
}

TEST(SampleUniform, EllipsoidMatchesAnalyticCovariance) {
  RandomStream s(14, 0);
  const bco::Matrix A = bco::testing::random_spd(s, 2, 0.5, 4.0);
  const auto body = ConvexBody::ellipsoid(A);
  // Uniform on {x'Ax <= 1} has covariance A^{-1} / (d + 2).
  const bco::Matrix expected = A.inverse() / 4.0;
  bco::Matrix cov = bco::Matrix::Zero(2, 2);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Vector x = bco::sample_uniform(body, s);
    cov.noalias() += x * x.transpose();
  }
  cov /= n;
  EXPECT_LE((cov - expected).cwiseAbs().maxCoeff(), 0.01 * expected.cwiseAbs().maxCoeff() + 1e-3);
}

TEST(SampleUniform, EverySampleIsAMember) {
  RandomStream s(15, 0);
  for (Eigen::Index d : {1, 2, 3, 6}) {
    for (const auto& [name, body] : bco::testing::body_zoo(d)) {
      for (int i = 0; i < 2000; ++i) ASSERT_TRUE(body.contains(bco::sample_uniform(body, s))) << name;
    }
  }
}

TEST(SampleUniform, SimplexRejectionRefusesHighDimension) {
  RandomStream s(16, 0);
  // Acceptance is 1/d!: 1/9! is above one in a million, 1/10! is not.
  EXPECT_NO_THROW(bco::sample_uniform(ConvexBody::simplex(9), s));
  EXPECT_THROW(bco::sample_uniform(ConvexBody::simplex(10), s), bco::DimensionTooHigh);
}
