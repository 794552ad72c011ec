#pragma once

#include <optional>
#include <vector>

#include "envoff/curves.hpp"
#include "envoff/offsets.hpp"

namespace envoff {

enum class SingularKind { Cusp, Crunode };
enum class DetectionMethod { Derivative, Curvature, CrunodeSystem };

const char* to_string(SingularKind k) noexcept;
const char* to_string(DetectionMethod m) noexcept;

struct SingularPoint {
  SingularKind kind = SingularKind::Cusp;
  DetectionMethod method = DetectionMethod::Derivative;
  Side side = Side::Internal;
  /// One parameter for a cusp; (s, t) with s < t for a crunode.
  std::vector<double> params;
  Vec2 location;
  /// Largest absolute value of the defining equations at the solution.
  double residual = 0.0;
  double offset_distance = 0.0;
  /// Crunode between the `side` branch and the opposite branch.
  bool cross_branch = false;
  /// Offset curvature k / |1 + sign*d*k| a short step past a cusp; it blows
  /// up as the step shrinks.
  std::optional<double> offset_curvature_probe;
};

struct CuspSearchOptions {
  double tolerance = 1e-12;
  double dedup_tolerance = 1e-8;
  double exclusion_radius = 1e-6;
  /// Seed density used when no explicit seed count is given.
  int seeds_per_2pi = 2048;
};

/// g(u) = 1 + sign*d*k(u). The offset velocity is g(u) * d1(u), so offset
/// cusps at regular progenitor parameters are exactly the zeros of g.
double cusp_condition(const ParamCurve& c, const OffsetSpec& spec, double u);

/// Curvature of the offset curve at parameter u: k / |1 + sign*d*k|.
/// Throws ErrorCode::Pole where the denominator vanishes.
double offset_curvature(const ParamCurve& c, const OffsetSpec& spec, double u);

/// Cusps of one offset branch, where both components of d/du offset(u)
/// vanish. Found as the zeros of cusp_condition over `n_seeds` (>= 32) grid
/// seeds spread across the regular subintervals.
std::vector<SingularPoint> cusps_by_derivative(const ParamCurve& c, const OffsetSpec& spec, int n_seeds,
                                               const CuspSearchOptions& opts = {});

/// Cusps of both offset branches at distance d via k(u) = -1/d (internal)
/// and k(u) = +1/d (external).
std::vector<SingularPoint> cusps_by_curvature(const ParamCurve& c, double d,
                                              const CuspSearchOptions& opts = {});

/// Seed count for `c` at the option's density.
int default_seed_count(const ParamCurve& c, const CuspSearchOptions& opts = {});

}  // namespace envoff
