#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bco/body_sampling.hpp"
#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/random_stream.hpp"
#include "bco/types.hpp"

namespace bco {

struct OracleOptions {
  int restarts = 16;
  /// Stop once an iterate moves less than this.
  double tolerance = 1e-8;
  /// Central-difference step for costs without analytic gradients.
  double fd_step = 1e-6;
  std::size_t max_iterations = 100000;
  /// Bodies of dimension <= grid_max_dimension are also scanned on a grid
  /// with at least grid_points members.
  Eigen::Index grid_max_dimension = 3;
  std::size_t grid_points = 1'000'000;
  /// Disagreement threshold, as a fraction of C n.
  double disagreement_fraction = 1e-4;
  std::uint64_t seed = 0x0c0ffee;
};

/// Hindsight optimum min_{x in S} sum_t c_t(x) and how it was found.
struct OptimumReport {
  Vector x;
  double total = 0.0;
  /// Best value found by restarted projected gradient descent.
  double descent_total = 0.0;
  std::optional<double> grid_total;
  std::optional<Vector> grid_x;
  std::size_t grid_size = 0;
  /// The grid beat descent by more than disagreement_fraction * C * n.
  bool disagreement = false;
  double disagreement_threshold = 0.0;
};

namespace detail {

class AverageCost {
 public:
  AverageCost(const CostSequence& costs, double fd_step)
      : costs_(costs), inv_n_(1.0 / static_cast<double>(costs.horizon())), fd_step_(fd_step) {}

  double operator()(const Vector& x) const { return costs_.total(x) * inv_n_; }

  Vector gradient(const Vector& x) const {
    if (const auto& q = costs_.aggregate()) return q->gradient(x) * inv_n_;
    if (costs_.has_gradients()) {
      Vector g = Vector::Zero(x.size());
      for (const auto& c : costs_.rounds()) g += c.gradient(x);
      return g * inv_n_;
    }
    Vector g(x.size());
    Vector probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      probe[i] = x[i] + fd_step_;
      const double up = (*this)(probe);
      probe[i] = x[i] - fd_step_;
      const double down = (*this)(probe);
      probe[i] = x[i];
      g[i] = (up - down) / (2.0 * fd_step_);
    }
    return g;
  }

 private:
  const CostSequence& costs_;
  double inv_n_;
  double fd_step_;
};

/// Projected gradient descent with backtracking on the quadratic upper model.
inline Vector projected_descent(const AverageCost& f, const ConvexBody& body, Vector x, const OracleOptions& opt) {
  x = body.project(x);
  double step = 1.0;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    const double fx = f(x);
    const Vector g = f.gradient(x);
    Vector next;
    while (true) {
      next = body.project(x - step * g);
      const Vector diff = next - x;
      const double model = fx + g.dot(diff) + diff.squaredNorm() / (2.0 * step);
      if (f(next) <= model + 1e-15 * std::abs(fx) || step < 1e-20) break;
      step *= 0.5;
    }
    const double moved = (next - x).norm();
    x = std::move(next);
    if (moved < opt.tolerance) break;
    step *= 2.0;
  }
  return x;
}

/// Visits a lattice over [-extent, extent]^d with k points per axis and calls
/// visit(point) for every member of the body. Returns the member count.
template <typename Visit>
std::size_t scan_grid(const ConvexBody& body, double extent, std::size_t k, Visit&& visit) {
  const Eigen::Index d = body.dimension();
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  Vector p(d);
  const double h = 2.0 * extent / static_cast<double>(k - 1);
  std::size_t members = 0;
  while (true) {
    for (Eigen::Index i = 0; i < d; ++i) p[i] = -extent + h * static_cast<double>(idx[static_cast<std::size_t>(i)]);
    if (body.contains(p)) {
      ++members;
      visit(p);
    }
    std::size_t axis = 0;
    while (axis < idx.size() && ++idx[axis] == k) idx[axis++] = 0;
    if (axis == idx.size()) break;
  }
  return members;
}

}  // namespace detail

/// Minimizes the average of the sequence over `body` (often the sequence's
/// own body, or a shrunk copy of it).
///
/// Runs projected gradient descent from the origin and restarts-1 uniform
/// starting points, using analytic gradients when every cost has one and
/// central differences otherwise. In low dimension a membership grid is
/// scanned as an independent check; the better value wins, and a grid result
/// that beats descent by more than the threshold is flagged.
inline OptimumReport offline_optimum(const CostSequence& costs, const ConvexBody& body,
                                     const OracleOptions& opt = {}) {
  detail::require_dimension(Vector::Zero(costs.dimension()), body.dimension(), "offline_optimum");
  const detail::AverageCost f(costs, opt.fd_step);
  const Eigen::Index d = body.dimension();
  RandomStream stream(opt.seed, 0);

  OptimumReport report;
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
    Vector start = Vector::Zero(d);
    if (restart > 0) {
      try {
        start = sample_uniform(body, stream);
      } catch (const DimensionTooHigh&) {
        start = body.radii().outer * stream.unit_ball(d);
      }
    }
    Vector x = detail::projected_descent(f, body, std::move(start), opt);
    const double value = f(x);
    if (value < best) {
      best = value;
      report.x = std::move(x);
    }
  }
  const double n = static_cast<double>(costs.horizon());
  report.descent_total = costs.total(report.x);
  report.total = report.descent_total;
  report.disagreement_threshold = opt.disagreement_fraction * costs.bound() * n;

  if (d <= opt.grid_max_dimension && opt.grid_points > 0) {
    // Declared radii are not guaranteed to enclose the body, so pad the box.
    const double extent = 1.1 * body.radii().outer;
    auto k = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(opt.grid_points), 1.0 / static_cast<double>(d))));
    k = std::max<std::size_t>(k, 3);
    while (true) {
      double grid_best = std::numeric_limits<double>::infinity();
      Vector grid_x;
      const std::size_t members = detail::scan_grid(body, extent, k, [&](const Vector& p) {
        const double v = f(p);
        if (v < grid_best) {
          grid_best = v;
          grid_x = p;
        }
      });
      if (members >= opt.grid_points || (members == 0 && k > 1'000'000)) {
        report.grid_size = members;
        if (members > 0) {
          report.grid_x = grid_x;
          report.grid_total = costs.total(grid_x);
        }
        break;
      }
      const double ratio = static_cast<double>(opt.grid_points) / static_cast<double>(std::max<std::size_t>(members, 1));
      k = static_cast<std::size_t>(std::ceil(static_cast<double>(k) * std::pow(ratio, 1.0 / static_cast<double>(d)) * 1.02)) + 1;
    }
    if (report.grid_total && *report.grid_total < report.total) {
      report.disagreement = report.descent_total - *report.grid_total > report.disagreement_threshold;
      report.total = *report.grid_total;
      report.x = *report.grid_x;
    }
  }
  return report;
}

inline OptimumReport offline_optimum(const CostSequence& costs, const OracleOptions& opt = {}) {
  return offline_optimum(costs, costs.body(), opt);
}

}  // namespace bco
