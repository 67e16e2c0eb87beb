#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bco {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute slack applied to the defining inequalities of every body.
inline constexpr double kMembershipTolerance = 1e-9;

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, out-of-range fractions, bad shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a precondition the analysis depends on (gradient norm above G,
/// observed cost outside [-C, C], update without a query).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The horizon is too short for a parameter schedule. Carries the smallest
/// admissible horizon.
class HorizonTooSmall : public Error {
 public:
  HorizonTooSmall(const std::string& what, std::size_t min_horizon)
      : Error(what + " (minimal admissible n = " + std::to_string(min_horizon) + ")"),
        min_horizon_(min_horizon) {}

  std::size_t min_horizon() const noexcept { return min_horizon_; }

 private:
  std::size_t min_horizon_;
};

/// A point required to lie in a function's domain does not.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling acceptance collapsed.
class DimensionTooHigh : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_dimension(const Vector& x, Eigen::Index d, const char* what) {
  if (x.size() != d) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(d) +
                     ", got " + std::to_string(x.size()));
  }
}

}  // namespace detail

}  // namespace bco
