#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bco/convex_body.hpp"
#include "bco/types.hpp"

namespace bco {

/// c(x) = x^T Q x + g^T x + k. Closed under sums and affine changes of variable.
struct QuadraticForm {
  Matrix Q;
  Vector g;
  double k = 0.0;

  static QuadraticForm zero(Eigen::Index d) { return {Matrix::Zero(d, d), Vector::Zero(d), 0.0}; }

  /// scale * |x - center|^2
  static QuadraticForm isotropic(double scale, const Vector& center) {
    const auto d = center.size();
    return {scale * Matrix::Identity(d, d), -2.0 * scale * center, scale * center.squaredNorm()};
  }

  static QuadraticForm linear(const Vector& w, double offset = 0.0) {
    const auto d = w.size();
    return {Matrix::Zero(d, d), w, offset};
  }

  Eigen::Index dimension() const { return g.size(); }

  double operator()(const Vector& x) const { return x.dot(Q * x) + g.dot(x) + k; }

  Vector gradient(const Vector& x) const { return (Q + Q.transpose()) * x + g; }

  QuadraticForm& operator+=(const QuadraticForm& other) {
    Q += other.Q;
    g += other.g;
    k += other.k;
    return *this;
  }

  QuadraticForm scaled(double s) const { return {s * Q, s * g, s * k}; }

  /// The form u -> c(P u + q).
  QuadraticForm composed(const Matrix& P, const Vector& q) const {
    const Matrix sym = 0.5 * (Q + Q.transpose());
    return {P.transpose() * sym * P, P.transpose() * (2.0 * sym * q + g), q.dot(sym * q) + g.dot(q) + k};
  }
};

/// One round's cost. Either a quadratic form (analytic gradient, exact
/// aggregation) or an opaque callable with an optional gradient.
///
/// A cost only ever sees the point it is evaluated at, so a sequence built
/// from these cannot react to the learner's history.
class CostFunction {
 public:
  using Function = std::function<double(const Vector&)>;
  using Gradient = std::function<Vector(const Vector&)>;

  CostFunction(QuadraticForm q)  // NOLINT(google-explicit-constructor)
      : impl_(std::make_shared<const Impl>(Impl{std::move(q), {}, {}})) {}

  static CostFunction opaque(Function f, Gradient grad = {}) {
    CostFunction c;
    c.impl_ = std::make_shared<const Impl>(Impl{std::nullopt, std::move(f), std::move(grad)});
    return c;
  }

  double operator()(const Vector& x) const {
    return impl_->quadratic ? (*impl_->quadratic)(x) : impl_->function(x);
  }

  bool has_gradient() const { return impl_->quadratic.has_value() || static_cast<bool>(impl_->gradient); }

  Vector gradient(const Vector& x) const {
    if (impl_->quadratic) return impl_->quadratic->gradient(x);
    if (!impl_->gradient) throw ContractViolation("cost has no analytic gradient");
    return impl_->gradient(x);
  }

  /// The quadratic form, or nullptr for opaque costs.
  const QuadraticForm* quadratic() const {
    return impl_->quadratic ? &*impl_->quadratic : nullptr;
  }

 private:
  struct Impl {
    std::optional<QuadraticForm> quadratic;
    Function function;
    Gradient gradient;
  };

  CostFunction() = default;

  std::shared_ptr<const Impl> impl_;
};

/// A fixed sequence c_1..c_n over a body, with the bound C (|c_t| <= C on S)
/// and optional Lipschitz constant L declared by whoever built it.
class CostSequence {
 public:
  CostSequence(ConvexBody body, std::vector<CostFunction> rounds, double bound,
               std::optional<double> lipschitz, std::string name)
      : body_(std::move(body)),
        rounds_(std::make_shared<const std::vector<CostFunction>>(std::move(rounds))),
        bound_(bound),
        lipschitz_(lipschitz),
        name_(std::move(name)) {
    if (rounds_->empty()) throw InputError("cost sequence must have at least one round");
    if (!(bound_ > 0.0)) throw InputError("cost bound C must be positive");
    if (lipschitz_ && !(*lipschitz_ > 0.0)) throw InputError("Lipschitz constant must be positive");
    QuadraticForm sum = QuadraticForm::zero(body_.dimension());
    bool all_quadratic = true;
    for (const auto& c : *rounds_) {
      const QuadraticForm* q = c.quadratic();
      if (q == nullptr) {
        all_quadratic = false;
        break;
      }
      if (q->dimension() != body_.dimension()) throw InputError("cost dimension differs from body");
      sum += *q;
    }
    if (all_quadratic) aggregate_ = std::move(sum);
  }

  const ConvexBody& body() const noexcept { return body_; }
  std::size_t horizon() const noexcept { return rounds_->size(); }
  Eigen::Index dimension() const noexcept { return body_.dimension(); }
  double bound() const noexcept { return bound_; }
  std::optional<double> lipschitz() const noexcept { return lipschitz_; }
  const std::string& name() const noexcept { return name_; }

  /// Round t, zero-based.
  const CostFunction& operator[](std::size_t t) const { return (*rounds_)[t]; }
  const std::vector<CostFunction>& rounds() const noexcept { return *rounds_; }

  bool has_gradients() const {
    for (const auto& c : *rounds_) {
      if (!c.has_gradient()) return false;
    }
    return true;
  }

  /// Sum over all rounds as one quadratic form, when every round is quadratic.
  const std::optional<QuadraticForm>& aggregate() const noexcept { return aggregate_; }

  /// sum_t c_t(x)
  double total(const Vector& x) const {
    if (aggregate_) return (*aggregate_)(x);
    double sum = 0.0;
    double carry = 0.0;
    for (const auto& c : *rounds_) {
      const double y = c(x) - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
    return sum;
  }

  /// Same sequence over a different body with different declared constants.
  CostSequence rebound(ConvexBody body, double bound, std::optional<double> lipschitz) const {
    CostSequence out = *this;
    out.body_ = std::move(body);
    out.bound_ = bound;
    out.lipschitz_ = lipschitz;
    return out;
  }

 private:
  ConvexBody body_;
  std::shared_ptr<const std::vector<CostFunction>> rounds_;
  double bound_;
  std::optional<double> lipschitz_;
  std::string name_;
  std::optional<QuadraticForm> aggregate_;
};

}  // namespace bco
