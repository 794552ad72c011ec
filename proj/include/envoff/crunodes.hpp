#pragma once

#include <vector>

#include "envoff/curves.hpp"
#include "envoff/offsets.hpp"
#include "envoff/singularities.hpp"

namespace envoff {

struct CrunodeSearchConfig {
  /// Coarse samples per branch used for seeding.
  int grid_n = 4096;
  /// Spatial hash cell width; <= 0 selects twice the mean sample spacing.
  double cell_size = 0.0;
  double newton_tol = 1e-12;
  int max_newton_iters = 60;
  /// Solutions with |s - t| at or below this are the trivial diagonal.
  double min_param_separation = 1e-3;
  double exclusion_radius = 1e-6;
  double dedup_tolerance = 1e-6;
  /// Minimum |sin| of the crossing angle at a solution. Tangential contacts
  /// (singular Jacobian at the root) are not crunodes.
  double min_crossing_sine = 1e-4;
  /// Also intersect the requested branch with the opposite one.
  bool cross_branch = false;

  /// Throws ErrorCode::InvalidArgument on a nonsensical configuration.
  void validate() const;
};

/// Self-intersections of one offset branch.
///
/// Dense samples of the branch are bucketed in a spatial hash; every pair of
/// samples in neighbouring cells whose parameters are far apart seeds a damped
/// Newton solve of offset(s) - offset(t) = 0. Seeds that fail to converge or
/// hit a singular Jacobian are dropped. Results are unique up to (s,t)<->(t,s)
/// and carry params = {min, max}.
std::vector<SingularPoint> find_crunodes(const ParamCurve& c, const OffsetSpec& spec,
                                         const CrunodeSearchConfig& cfg = {});

}  // namespace envoff
