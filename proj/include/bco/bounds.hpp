#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "bco/types.hpp"

namespace bco {

enum class BoundKind {
  /// 3 C n^(5/6) (d R / r)^(1/3)
  General,
  /// 2 n^(3/4) sqrt(3 R d C (L + C / r))
  Lipschitz,
  /// 6 n^(5/6) d C, times kappa^(1/3) for measured rounding slack
  CorollaryGeneral,
  /// 6 n^(3/4) d (sqrt(C L R) + C), times sqrt(kappa) for measured rounding slack
  CorollaryLipschitz,
  /// D G sqrt(n)
  FullInformation,
};

inline const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::General: return "general";
    case BoundKind::Lipschitz: return "lipschitz";
    case BoundKind::CorollaryGeneral: return "corollary-general";
    case BoundKind::CorollaryLipschitz: return "corollary-lipschitz";
    case BoundKind::FullInformation: return "full-info";
  }
  return "?";
}

inline BoundKind parse_bound_kind(std::string_view name) {
  if (name == "general") return BoundKind::General;
  if (name == "lipschitz") return BoundKind::Lipschitz;
  if (name == "corollary-general") return BoundKind::CorollaryGeneral;
  if (name == "corollary-lipschitz") return BoundKind::CorollaryLipschitz;
  if (name == "full-info") return BoundKind::FullInformation;
  throw InputError("unknown bound kind '" + std::string(name) + "'");
}

struct BoundInputs {
  std::size_t n = 0;
  Eigen::Index d = 0;
  double r = 0.0;
  double R = 0.0;
  double C = 0.0;
  std::optional<double> L;
  /// Full-information kind only.
  double D = 0.0;
  double G = 0.0;
  /// Corollary kinds only: measured rounding slack, 1 for exact near-isotropy.
  double kappa = 1.0;
};

/// Closed-form expected-regret guarantee of the given kind.
///
/// The corollary forms assume r' = 1 and R' = 1.01 d; when rounding only
/// achieves R' = 1.01 d kappa they are multiplied by kappa^(1/3) (general)
/// or sqrt(kappa) (Lipschitz), which keeps them valid upper bounds.
inline double bound_value(BoundKind kind, const BoundInputs& in) {
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("bound_value: ") + what);
  };
  switch (kind) {
    case BoundKind::General:
      require(in.n > 0 && in.d > 0 && in.r > 0 && in.R > 0 && in.C > 0, "n, d, r, R, C must be positive");
      return 3.0 * in.C * std::pow(n, 5.0 / 6.0) * std::cbrt(d * in.R / in.r);
    case BoundKind::Lipschitz:
      require(in.L.has_value(), "Lipschitz bound needs L");
      require(in.n > 0 && in.d > 0 && in.r > 0 && in.R > 0 && in.C > 0 && *in.L > 0, "inputs must be positive");
      return 2.0 * std::pow(n, 0.75) * std::sqrt(3.0 * in.R * d * in.C * (*in.L + in.C / in.r));
    case BoundKind::CorollaryGeneral:
      require(in.n > 0 && in.d > 0 && in.C > 0 && in.kappa >= 1.0, "n, d, C must be positive and kappa >= 1");
      return 6.0 * std::pow(n, 5.0 / 6.0) * d * in.C * std::cbrt(in.kappa);
    case BoundKind::CorollaryLipschitz:
      require(in.L.has_value(), "Lipschitz bound needs L");
      require(in.n > 0 && in.d > 0 && in.C > 0 && in.R > 0 && *in.L > 0 && in.kappa >= 1.0,
              "inputs must be positive and kappa >= 1");
      return 6.0 * std::pow(n, 0.75) * d * (std::sqrt(in.C * *in.L * in.R) + in.C) * std::sqrt(in.kappa);
    case BoundKind::FullInformation:
      require(in.n > 0 && in.D > 0 && in.G > 0, "full-information bound needs n, D, G");
      return in.D * in.G * std::sqrt(n);
  }
  throw InputError("bound_value: unknown kind");
}

}  // namespace bco
