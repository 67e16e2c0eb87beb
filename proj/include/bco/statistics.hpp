#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "bco/types.hpp"

namespace bco {

/// Welford accumulator for a scalar stream.
class RunningMoments {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }

  /// Unbiased sample variance; zero with fewer than two samples.
  double variance() const noexcept {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }

  double standard_error() const noexcept {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Coordinatewise Welford accumulator.
class VectorMoments {
 public:
  explicit VectorMoments(Eigen::Index d) : mean_(Vector::Zero(d)), m2_(Vector::Zero(d)) {}

  void add(const Vector& x) {
    ++count_;
    const Vector delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta.cwiseProduct(x - mean_);
  }

  std::size_t count() const noexcept { return count_; }
  const Vector& mean() const noexcept { return mean_; }

  Vector standard_error() const {
    if (count_ < 2) return Vector::Zero(mean_.size());
    const double n = static_cast<double>(count_);
    return (m2_ / (n - 1.0) / n).cwiseSqrt();
  }

 private:
  std::size_t count_ = 0;
  Vector mean_;
  Vector m2_;
};

struct MeanEstimate {
  double mean;
  double standard_error;
  std::size_t samples;
};

inline MeanEstimate summarize(std::span<const double> values) {
  RunningMoments m;
  for (double v : values) m.add(v);
  return {m.mean(), m.standard_error(), m.count()};
}

}  // namespace bco
