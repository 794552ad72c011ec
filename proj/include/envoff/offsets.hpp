#pragma once

#include <cstddef>
#include <vector>

#include "envoff/curves.hpp"

namespace envoff {

/// Distance and side selecting one offset branch.
struct OffsetSpec {
  double distance;
  Side side;

  /// Throws ErrorCode::InvalidArgument unless 0 < distance < inf.
  OffsetSpec(double distance, Side side);
};

/// Sampled curve split into maximal connected arcs. `params[i][j]` is the
/// source parameter of `segments[i][j]`.
struct Polyline {
  std::vector<std::vector<Vec2>> segments;
  std::vector<std::vector<double>> params;

  std::size_t point_count() const;
  bool empty() const { return segments.empty(); }
};

struct SamplingOptions {
  /// Radius of the open parameter neighbourhood dropped around each
  /// singular parameter of the progenitor.
  double exclusion_radius = 1e-6;
  /// When positive, consecutive points further apart than this are refined
  /// by parameter bisection (up to max_refine_depth levels).
  double max_gap = 0.0;
  int max_refine_depth = 12;
};

/// position(u) + d * unit_normal(u, side).
Vec2 offset_point(const ParamCurve& c, const OffsetSpec& spec, double u);

/// d/du of offset_point, which equals (1 + sign*d*k(u)) * d1(u).
Vec2 offset_velocity(const ParamCurve& c, const OffsetSpec& spec, double u);

/// Uniform parameter sampling of one offset branch, one segment per regular
/// subinterval. `n_samples` (>= 16) is spread over the subintervals in
/// proportion to their length.
Polyline offset_polyline(const ParamCurve& c, const OffsetSpec& spec, int n_samples,
                         const SamplingOptions& opts = {});

/// The progenitor itself as a single segment over the whole domain.
Polyline sample_curve(const ParamCurve& c, int n_samples);

namespace detail {
/// Splits `n_samples` over the intervals proportionally to length, at least
/// 16 per interval.
std::vector<int> distribute_samples(const std::vector<Interval>& parts, int n_samples);
std::vector<double> uniform_params(Interval iv, int n);
}  // namespace detail

}  // namespace envoff
