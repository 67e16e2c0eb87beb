#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bco/types.hpp"

namespace bco {

/// Reproducible random source keyed by (seed, stream id). Each trial owns one.
///
/// Sphere draws normalize d standard normals; ball draws scale a sphere draw
/// by U^(1/d). Neither path rejects, so the cost per draw is fixed.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x62636fu};
    engine_.seed(seq);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

  double normal() { return normal_(engine_); }

  /// +1 or -1 with equal probability.
  int rademacher() { return (engine_() >> 63) != 0 ? 1 : -1; }

  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  Vector unit_sphere(Eigen::Index d) {
    check_dimension(d);
    Vector u(d);
    double norm = 0.0;
    do {
      for (Eigen::Index i = 0; i < d; ++i) u[i] = normal();
      norm = u.norm();
    } while (norm == 0.0);
    return u / norm;
  }

  Vector unit_ball(Eigen::Index d) {
    Vector u = unit_sphere(d);
    return u * std::pow(uniform(), 1.0 / static_cast<double>(d));
  }

  /// Uniform vertex of the hypercube {-1, 1}^d, normalized to unit length.
  Vector unit_cube_vertex(Eigen::Index d) {
    check_dimension(d);
    Vector p(d);
    for (Eigen::Index i = 0; i < d; ++i) p[i] = rademacher();
    return p / std::sqrt(static_cast<double>(d));
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  static void check_dimension(Eigen::Index d) {
    if (d < 1) throw InputError("sampling dimension must be at least 1");
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace bco
