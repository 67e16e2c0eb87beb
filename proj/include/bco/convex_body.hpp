#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bco/types.hpp"

namespace bco {

/// Radii of origin-centered balls with inner * B inside S and S inside outer * B.
struct Radii {
  double inner;
  double outer;
};

class ConvexBody;

namespace shapes {

struct Ball {
  double radius;
};

struct Box {
  Vector half_widths;
};

/// The corner simplex conv{0, e_1, ..., e_d} translated so its centroid sits
/// at the origin. Stored coordinates are original coordinates minus `centroid`.
struct Simplex {
  Vector centroid;
};

/// {x : x^T A x <= 1} for symmetric positive-definite A.
struct Ellipsoid {
  Matrix A;
  Matrix eigenvectors;
  Vector eigenvalues;
};

/// {M y + offset : y in base}, M invertible.
struct AffineImage {
  Matrix M;
  Vector offset;
  Matrix M_inverse;
  double sigma_min;
  double sigma_max;
  std::shared_ptr<const ConvexBody> base;
};

}  // namespace shapes

/// Settings of the iterative projection used for affine images.
inline constexpr double kAffineProjectionTolerance = 1e-10;
inline constexpr int kAffineProjectionMaxIterations = 10000;

/// A compact convex set with the origin in its interior.
///
/// A body is a shape (ball, box, recentered simplex, ellipsoid, affine image of
/// another body) times a positive scale factor. Values are immutable; copies
/// share the affine base through a `shared_ptr<const>`.
class ConvexBody {
 public:
  using Shape = std::variant<shapes::Ball, shapes::Box, shapes::Simplex, shapes::Ellipsoid,
                             shapes::AffineImage>;

  static ConvexBody ball(Eigen::Index d, double radius = 1.0) {
    if (d < 1) throw InputError("ball: dimension must be positive");
    if (!(radius > 0.0)) throw InputError("ball: radius must be positive");
    return ConvexBody(d, shapes::Ball{radius});
  }

  static ConvexBody box(Vector half_widths) {
    if (half_widths.size() < 1) throw InputError("box: dimension must be positive");
    if (!(half_widths.array() > 0.0).all()) throw InputError("box: half-widths must be positive");
    const auto d = half_widths.size();
    return ConvexBody(d, shapes::Box{std::move(half_widths)});
  }

  static ConvexBody cube(Eigen::Index d, double half_width = 1.0) {
    return box(Vector::Constant(d, half_width));
  }

  static ConvexBody simplex(Eigen::Index d) {
    if (d < 1) throw InputError("simplex: dimension must be positive");
    return ConvexBody(d, shapes::Simplex{Vector::Constant(d, 1.0 / static_cast<double>(d + 1))});
  }

  static ConvexBody ellipsoid(const Matrix& A) {
    if (A.rows() < 1 || A.rows() != A.cols()) throw InputError("ellipsoid: matrix must be square");
    if (!A.isApprox(A.transpose(), 1e-12)) throw InputError("ellipsoid: matrix must be symmetric");
    Matrix sym = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().array() > 0.0).all()) {
      throw InputError("ellipsoid: matrix must be positive definite");
    }
    const auto d = A.rows();
    return ConvexBody(d, shapes::Ellipsoid{sym, eig.eigenvectors(), eig.eigenvalues()});
  }

  /// The image {M y + offset : y in base}. Exact rewrites are applied where a
  /// closed-form shape exists (diagonal maps of boxes, linear maps of balls and
  /// ellipsoids, nested images); everything else projects iteratively.
  static ConvexBody affine_image(const Matrix& M, const Vector& offset, const ConvexBody& base) {
    const auto d = base.dimension();
    if (M.rows() != d || M.cols() != d) throw InputError("affine_image: matrix must be d x d");
    detail::require_dimension(offset, d, "affine_image offset");

    Matrix map = M * base.scale_;
    const bool linear = offset.isZero(0.0);

    if (const auto* inner = std::get_if<shapes::AffineImage>(&base.shape_)) {
      return affine_image(map * inner->M, M * (base.scale_ * inner->offset) + offset, *inner->base);
    }
    if (linear) {
      if (const auto* b = std::get_if<shapes::Box>(&base.shape_);
          b != nullptr && map.isDiagonal(0.0) && (map.diagonal().array() != 0.0).all()) {
        return box(map.diagonal().cwiseAbs().cwiseProduct(b->half_widths));
      }
      if (const auto* b = std::get_if<shapes::Ball>(&base.shape_)) {
        Eigen::FullPivLU<Matrix> lu(map);
        if (!lu.isInvertible()) throw InputError("affine_image: matrix must be invertible");
        const Matrix inv = lu.inverse();
        return ellipsoid(inv.transpose() * inv / (b->radius * b->radius));
      }
      if (const auto* e = std::get_if<shapes::Ellipsoid>(&base.shape_)) {
        Eigen::FullPivLU<Matrix> lu(map);
        if (!lu.isInvertible()) throw InputError("affine_image: matrix must be invertible");
        const Matrix inv = lu.inverse();
        Matrix A = inv.transpose() * e->A * inv;
        return ellipsoid(0.5 * (A + A.transpose()));
      }
    }

    Eigen::JacobiSVD<Matrix> svd(map);
    const Vector sv = svd.singularValues();
    const double smax = sv.maxCoeff();
    const double smin = sv.minCoeff();
    if (!(smin > 1e-12 * smax)) throw InputError("affine_image: matrix must be invertible");

    ConvexBody unscaled_base = base;
    unscaled_base.scale_ = 1.0;
    unscaled_base.declared_.reset();
    const Radii base_radii = unscaled_base.radii();
    if (!(smin * base_radii.inner - offset.norm() > 0.0)) {
      throw InputError("affine_image: origin is not certifiably interior to the image");
    }
    return ConvexBody(d, shapes::AffineImage{map, offset, map.inverse(), smin, smax,
                                             std::make_shared<const ConvexBody>(unscaled_base)});
  }

  Eigen::Index dimension() const noexcept { return dimension_; }
  double scale() const noexcept { return scale_; }
  const Shape& shape() const noexcept { return shape_; }

  /// Tightest radii known in closed form, or the declared pair if one was set.
  /// Affine images get the conservative singular-value bounds.
  Radii radii() const {
    if (declared_) return *declared_;
    const Radii base = shape_radii();
    return {scale_ * base.inner, scale_ * base.outer};
  }

  /// Diameter, exact for the primitive shapes and bounded by sigma_max * D for images.
  double diameter() const {
    return scale_ * std::visit(
                        [&](const auto& s) -> double {
                          using S = std::decay_t<decltype(s)>;
                          if constexpr (std::is_same_v<S, shapes::Ball>) {
                            return 2.0 * s.radius;
                          } else if constexpr (std::is_same_v<S, shapes::Box>) {
                            return 2.0 * s.half_widths.norm();
                          } else if constexpr (std::is_same_v<S, shapes::Simplex>) {
                            return dimension_ == 1 ? 1.0 : std::sqrt(2.0);
                          } else if constexpr (std::is_same_v<S, shapes::Ellipsoid>) {
                            return 2.0 / std::sqrt(s.eigenvalues.minCoeff());
                          } else {
                            return s.sigma_max * s.base->diameter();
                          }
                        },
                        shape_);
  }

  bool contains(const Vector& x) const {
    detail::require_dimension(x, dimension_, "membership");
    return shape_contains(x / scale_, kMembershipTolerance / scale_);
  }

  /// Euclidean projection onto the body.
  Vector project(const Vector& x) const {
    detail::require_dimension(x, dimension_, "project");
    if (contains(x)) return x;
    return scale_ * shape_project(x / scale_);
  }

  /// The body (1 - alpha) S, scaled about the origin.
  ConvexBody shrink(double alpha) const {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("shrink: alpha must lie in [0, 1)");
    return scaled(1.0 - alpha);
  }

  ConvexBody scaled(double factor) const {
    if (!(factor > 0.0)) throw InputError("scaled: factor must be positive");
    ConvexBody out = *this;
    out.scale_ *= factor;
    if (out.declared_) out.declared_ = Radii{declared_->inner * factor, declared_->outer * factor};
    return out;
  }

  /// Copy with radii overridden by externally established values.
  ConvexBody with_declared_radii(Radii radii) const {
    if (!(radii.inner > 0.0 && radii.inner <= radii.outer)) {
      throw InputError("declared radii must satisfy 0 < r <= R");
    }
    ConvexBody out = *this;
    out.declared_ = radii;
    return out;
  }

  bool has_declared_radii() const noexcept { return declared_.has_value(); }

  /// Translation mapping stored coordinates back to the coordinates the user
  /// described the body in (nonzero only for the recentered simplex).
  Vector origin_shift() const {
    if (const auto* s = std::get_if<shapes::Simplex>(&shape_)) return scale_ * s->centroid;
    return Vector::Zero(dimension_);
  }

  std::string describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, shapes::Ball>) {
            os << "ball(d=" << dimension_ << ", radius=" << s.radius << ")";
          } else if constexpr (std::is_same_v<S, shapes::Box>) {
            os << "box(half_widths=[" << s.half_widths.transpose() << "])";
          } else if constexpr (std::is_same_v<S, shapes::Simplex>) {
            os << "simplex(d=" << dimension_ << ", recentered)";
          } else if constexpr (std::is_same_v<S, shapes::Ellipsoid>) {
            os << "ellipsoid(d=" << dimension_ << ")";
          } else {
            os << "affine_image(" << s.base->describe() << ")";
          }
        },
        shape_);
    if (scale_ != 1.0) os << " * " << scale_;
    return os.str();
  }

 private:
  ConvexBody(Eigen::Index d, Shape shape) : dimension_(d), shape_(std::move(shape)) {}

  Radii shape_radii() const {
    return std::visit(
        [&](const auto& s) -> Radii {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, shapes::Ball>) {
            return {s.radius, s.radius};
          } else if constexpr (std::is_same_v<S, shapes::Box>) {
            return {s.half_widths.minCoeff(), s.half_widths.norm()};
          } else if constexpr (std::is_same_v<S, shapes::Simplex>) {
            // Nearest facet is the slanted one; farthest vertex is any e_i.
            const double d = static_cast<double>(dimension_);
            return {1.0 / ((d + 1.0) * std::sqrt(d)), std::sqrt(d * d + d - 1.0) / (d + 1.0)};
          } else if constexpr (std::is_same_v<S, shapes::Ellipsoid>) {
            return {1.0 / std::sqrt(s.eigenvalues.maxCoeff()),
                    1.0 / std::sqrt(s.eigenvalues.minCoeff())};
          } else {
            const Radii b = s.base->radii();
            const double shift = s.offset.norm();
            return {s.sigma_min * b.inner - shift, s.sigma_max * b.outer + shift};
          }
        },
        shape_);
  }

  bool shape_contains(const Vector& x, double tol) const {
    return std::visit(
        [&](const auto& s) -> bool {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, shapes::Ball>) {
            return x.norm() <= s.radius + tol;
          } else if constexpr (std::is_same_v<S, shapes::Box>) {
            return (x.array().abs() <= s.half_widths.array() + tol).all();
          } else if constexpr (std::is_same_v<S, shapes::Simplex>) {
            const Vector z = x + s.centroid;
            return (z.array() >= -tol).all() && z.sum() <= 1.0 + tol;
          } else if constexpr (std::is_same_v<S, shapes::Ellipsoid>) {
            return x.dot(s.A * x) <= 1.0 + tol;
          } else {
            return s.base->contains(s.M_inverse * (x - s.offset));
          }
        },
        shape_);
  }

  Vector shape_project(const Vector& x) const {
    return std::visit(
        [&](const auto& s) -> Vector {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, shapes::Ball>) {
            const double n = x.norm();
            return n <= s.radius ? x : Vector(x * (s.radius / n));
          } else if constexpr (std::is_same_v<S, shapes::Box>) {
            return x.cwiseMax(-s.half_widths).cwiseMin(s.half_widths);
          } else if constexpr (std::is_same_v<S, shapes::Simplex>) {
            return project_corner_simplex(x + s.centroid) - s.centroid;
          } else if constexpr (std::is_same_v<S, shapes::Ellipsoid>) {
            return project_ellipsoid(s, x);
          } else {
            return project_affine(s, x);
          }
        },
        shape_);
  }

  /// Projection onto {w >= 0, sum w <= 1}. When clamping alone violates the
  /// sum constraint, the constraint is active and the answer is the projection
  /// onto the probability simplex (sort-and-threshold).
  static Vector project_corner_simplex(const Vector& z) {
    const Vector clamped = z.cwiseMax(0.0);
    if (clamped.sum() <= 1.0) return clamped;

    std::vector<double> sorted(z.data(), z.data() + z.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prefix = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      prefix += sorted[j];
      const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
      if (sorted[j] - candidate > 0.0) theta = candidate;
    }
    return (z.array() - theta).cwiseMax(0.0).matrix();
  }

  /// Solves sum_i a_i x_i^2 / (1 + lambda a_i)^2 = 1 for lambda > 0 in the
  /// eigenbasis. The left side is convex and decreasing in lambda, so Newton
  /// from lambda = 0 climbs monotonically to the root.
  static Vector project_ellipsoid(const shapes::Ellipsoid& e, const Vector& x) {
    const Vector xt = e.eigenvectors.transpose() * x;
    const Vector& a = e.eigenvalues;
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
      const Eigen::ArrayXd denom = 1.0 + lambda * a.array();
      const Eigen::ArrayXd w = a.array() * xt.array().square();
      const double phi = (w / denom.square()).sum() - 1.0;
      const double dphi = (-2.0 * w * a.array() / denom.cube()).sum();
      const double next = lambda - phi / dphi;
      if (!(next > lambda) || next - lambda <= 1e-15 * std::max(1.0, lambda)) {
        lambda = std::max(lambda, next);
        break;
      }
      lambda = next;
    }
    Vector z = e.eigenvectors * (xt.array() / (1.0 + lambda * a.array())).matrix();
    const double q = z.dot(e.A * z);
    if (q > 1.0) z /= std::sqrt(q);
    return z;
  }

  /// Minimizes |M y + b - x|^2 over the base body by accelerated projected
  /// gradient (FISTA with adaptive restart), then maps the minimizer forward.
  static Vector project_affine(const shapes::AffineImage& s, const Vector& x) {
    const ConvexBody& base = *s.base;
    const double step = 1.0 / (s.sigma_max * s.sigma_max);
    const Vector target = x - s.offset;
    auto gradient = [&](const Vector& y) -> Vector { return s.M.transpose() * (s.M * y - target); };

    Vector y = base.project(s.M_inverse * target);
    Vector z = y;
    double t = 1.0;
    for (int it = 0; it < kAffineProjectionMaxIterations; ++it) {
      Vector next = base.project(z - step * gradient(z));
      const double moved = (next - y).norm();
      if ((z - next).dot(next - y) > 0.0) {
        // Momentum is pointing uphill: restart from the current iterate.
        t = 1.0;
        z = y;
        continue;
      }
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      z = next + ((t - 1.0) / t_next) * (next - y);
      y = std::move(next);
      t = t_next;
      if (moved < kAffineProjectionTolerance) {
        const Vector residual = y - base.project(y - step * gradient(y));
        if (residual.norm() < kAffineProjectionTolerance) break;
      }
    }
    return s.M * y + s.offset;
  }

  Eigen::Index dimension_;
  double scale_ = 1.0;
  Shape shape_;
  std::optional<Radii> declared_;
};

}  // namespace bco
