#include <gtest/gtest.h>

#include <cmath>

#include "../support/generators.hpp"
#include "bco/bco.hpp"

using bco::AffineTransform;
using bco::ConvexBody;
using bco::Matrix;
using bco::RandomStream;
using bco::Vector;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

}  // namespace

TEST(AffineTransform, InverseIsCached) {
  RandomStream s(1, 0);
  for (int i = 0; i < 50; ++i) {
    const AffineTransform t(bco::testing::random_invertible(s, 4, 0.2, 5.0), bco::testing::random_point(s, 4, 1.0));
    EXPECT_LE((t.matrix() * t.inverse_matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-9);
    const Vector x = bco::testing::random_point(s, 4, 1.0);
    EXPECT_LE((t.pull_back(t.apply(x)) - x).norm(), 1e-12);
    EXPECT_NEAR(t.condition_number(), 25.0, 25.0);
  }
}

TEST(AffineTransform, SingularIsRejected) {
  Matrix m(2, 2);
  m << 1, 2, 2, 4;
  EXPECT_THROW(AffineTransform(m, Vector::Zero(2)), bco::InputError);
}

TEST(AffineTransform, ImageIsAValidBody) {
  RandomStream s(2, 0);
  const AffineTransform t(bco::testing::random_invertible(s, 3, 0.5, 2.0), vec({0.05, -0.05, 0.0}));
  const ConvexBody image = t.image(ConvexBody::cube(3));
  EXPECT_TRUE(image.contains(Vector::Zero(3)));
  for (int i = 0; i < 1000; ++i) {
    const Vector x = bco::sample_uniform(ConvexBody::cube(3), s);
    ASSERT_TRUE(image.contains(t.apply(x)));
  }
}

TEST(Isotropic, UnitBallBecomesTwoI) {
  RandomStream s(3, 0);
  const auto rounding = bco::isotropic_transform(ConvexBody::ball(2), s, 100000);
  EXPECT_LE((rounding.transform.matrix() - 2.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);
  EXPECT_LE(rounding.transform.offset().norm(), 0.05);
}

TEST(Isotropic, BoxBecomesRootThreeI) {
  RandomStream s(4, 0);
  const auto rounding = bco::isotropic_transform(ConvexBody::cube(2, 1.0), s, 100000);
  EXPECT_LE((rounding.transform.matrix() - std::sqrt(3.0) * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Isotropic, SecondApplicationIsNearIdentity) {
  RandomStream s(5, 0);
  const ConvexBody body = ConvexBody::box(vec({5.0, 0.2}));
  const auto first = bco::isotropic_transform(body, s, 100000);
  const auto second = bco::isotropic_transform(first.transform.image(body), s, 100000);
  // The first pass may rescale so that the inner radius is 1; undo that factor.
  const Matrix m = second.transform.matrix();
  const double scale = std::sqrt(std::abs(m.determinant()));
  EXPECT_LE((m / scale - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Isotropic, MeasuredRadiiHold) {
  RandomStream s(6, 0);
  for (const auto& body : {ConvexBody::box(vec({5.0, 0.2})), ConvexBody::simplex(3), ConvexBody::ball(2)}) {
    const auto rounding = bco::isotropic_transform(body, s, 1000 * 9 * 12);
    EXPECT_GE(rounding.kappa, 1.0);
    EXPECT_GE(rounding.inner_radius, 1.0);
    const ConvexBody image = rounding.transform.image(body);
    const auto declared = rounding.declared_radii();
    const Eigen::Index d = body.dimension();
    EXPECT_EQ(declared.inner, 1.0);
    EXPECT_DOUBLE_EQ(declared.outer, 1.01 * static_cast<double>(d) * rounding.kappa);
    for (int i = 0; i < 5000; ++i) {
      ASSERT_TRUE(image.contains(declared.inner * s.unit_sphere(d) * (1.0 - 1e-6))) << body.describe();
      ASSERT_LE(rounding.transform.apply(bco::sample_uniform(body, s)).norm(), declared.outer) << body.describe();
    }
  }
}

TEST(Isotropic, TooFewSamplesIsRejected) {
  RandomStream s(7, 0);
  EXPECT_THROW(bco::isotropic_transform(ConvexBody::ball(3), s, 8999), bco::InputError);
}

TEST(Isotropic, DegenerateBodyIsSingular) {
  RandomStream s(8, 0);
  EXPECT_THROW(bco::isotropic_transform(ConvexBody::box(vec({1.0, 1e-8})), s, 4000), bco::SingularCovariance);
}

TEST(TransformCosts, IdentityKeepsValuesAndDeclaresLR) {
  const auto body = ConvexBody::cube(2, 1.0);
  const auto costs = bco::make_fixed_quadratic(body, 10, vec({0.5, 0.5}), 1.0);
  const auto moved = bco::transform_costs(costs, AffineTransform::identity(2), {1.0, 2.02});
  RandomStream s(9, 0);
  for (int i = 0; i < 100; ++i) {
    const Vector x = bco::sample_uniform(body, s);
    EXPECT_NEAR(moved[3](x), costs[3](x), 1e-14);
  }
  EXPECT_DOUBLE_EQ(*moved.lipschitz(), *costs.lipschitz() * std::sqrt(2.0));
  EXPECT_EQ(moved.bound(), costs.bound());
  EXPECT_EQ(moved.body().radii().outer, 2.02);
}

TEST(TransformCosts, ValuesArePreservedThroughTheMap) {
  RandomStream s(10, 0);
  const auto body = ConvexBody::box(vec({5.0, 0.2}));
  const auto rounding = bco::isotropic_transform(body, s, 100000);
  const auto costs = bco::make_drifting_linear(body, bco::random_directions(2, 50, 1), 0.2);
  const auto moved = bco::transform_costs(costs, rounding);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = bco::sample_uniform(body, s);
    const std::size_t t = s.index(50);
    ASSERT_NEAR(moved[t](rounding.transform.apply(x)), costs[t](x), 1e-12);
  }
}

// |c'(u1) - c'(u2)| <= L R |u1 - u2| on T(S).
TEST(TransformCosts, LRLipschitz) {
  RandomStream s(11, 0);
  for (const auto& body : {ConvexBody::box(vec({5.0, 0.2})), ConvexBody::simplex(2), ConvexBody::cube(3, 1.0)}) {
    const auto rounding = bco::isotropic_transform(body, s, 100000);
    const Eigen::Index d = body.dimension();
    Vector target = Vector::Zero(d);
    const auto quad = bco::make_fixed_quadratic(body, 10, target, 1.0);
    const auto lin = bco::make_drifting_linear(body, bco::random_directions(d, 10, 2), 1.0);
    for (const auto& costs : {quad, lin}) {
      const auto moved = bco::transform_costs(costs, rounding);
      for (int i = 0; i < 10000; ++i) {
        const Vector u1 = rounding.transform.apply(bco::sample_uniform(body, s));
        const Vector u2 = rounding.transform.apply(bco::sample_uniform(body, s));
        const auto& c = moved[s.index(10)];
        ASSERT_LE(std::abs(c(u1) - c(u2)), *moved.lipschitz() * (u1 - u2).norm() + 1e-9) << costs.name();
      }
    }
  }
}

TEST(TransformCosts, OpaqueCostsAreWrapped) {
  const auto body = ConvexBody::ball(2);
  const bco::CostSequence costs(body, {bco::CostFunction::opaque([](const Vector& x) { return x.norm(); })}, 1.0,
                                1.0, "norm");
  const AffineTransform t(2.0 * Matrix::Identity(2, 2), vec({0.1, 0.0}));
  const auto moved = bco::transform_costs(costs, t, {1.0, 2.02});
  EXPECT_NEAR(moved[0](t.apply(vec({0.3, 0.4}))), 0.5, 1e-14);
  EXPECT_FALSE(moved[0].has_gradient());
}

// Regret of BGD played in transformed coordinates equals the regret of the
// pulled-back trajectory on the original costs.
TEST(TransformCosts, RegretRoundTrip) {
  RandomStream s(12, 0);
  const auto body = ConvexBody::box(vec({5.0, 0.2}));
  const auto rounding = bco::isotropic_transform(body, s, 100000);
  const std::size_t n = 3000;
  const auto costs = bco::make_fixed_quadratic(body, n, vec({1.0, 0.1}), 0.02);
  const auto moved = bco::transform_costs(costs, rounding);
  const auto radii = moved.body().radii();
  const auto p = bco::params_general(n, 2, radii.inner, radii.outer, moved.bound());
  RandomStream play(13, 0);
  const auto run = bco::run_bgd(moved, p, play);
  double original_total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const Vector x = rounding.transform.pull_back(run.queries[t]);
    ASSERT_TRUE(body.contains(x));
    original_total += costs[t](x);
  }
  EXPECT_NEAR(original_total, run.total, 1e-9 * std::abs(run.total) + 1e-9);
}
