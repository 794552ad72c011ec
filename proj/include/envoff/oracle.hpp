#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "envoff/curves.hpp"
#include "envoff/envelopes.hpp"
#include "envoff/offsets.hpp"

// Brute-force verifiers. Nothing here shares a code path with the solvers it
// is used to check.
namespace envoff::oracle {

using envoff::Rect;

/// Square-indexed occupancy raster over an axis-aligned rectangle.
class RasterGrid {
 public:
  /// Throws ErrorCode::InvalidArgument for resolution < 64 or empty bounds.
  RasterGrid(Rect bounds, int resolution);

  const Rect& bounds() const { return bounds_; }
  int resolution() const { return res_; }
  double cell_width() const { return bounds_.width() / res_; }
  double cell_height() const { return bounds_.height() / res_; }

  bool occupied(int i, int j) const;
  void set(int i, int j) { occ_[index(i, j)] = 1; }
  void clear();
  std::size_t occupied_count() const;
  Vec2 cell_center(int i, int j) const;

  /// Whether an occupied cell lies within `cells` cells (Chebyshev) of the
  /// cell containing p.
  bool occupied_near(Vec2 p, int cells) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(res_) + static_cast<std::size_t>(i);
  }

  Rect bounds_;
  int res_;
  std::vector<std::uint8_t> occ_;
};

/// Fills `grid` with the union of `n_family_samples` family members (cell
/// centres inside a circle) and returns the centres of occupied cells that
/// have an unoccupied 4-neighbour.
///
/// Throws ErrorCode::Bounds when a sampled circle leaves the grid.
std::vector<Vec2> raster_envelope_boundary(const CircleFamily& fam, RasterGrid& grid, int n_family_samples);

struct SampledPoint {
  Vec2 position;
  double param;
  int segment;
};

/// Flattens a polyline, tagging each point with its segment index.
std::vector<SampledPoint> flatten(const Polyline& line);

struct ProximityOptions {
  /// Pairs closer than this multiple of the larger local sample spacing.
  double threshold_factor = 2.0;
  double min_param_separation = 1e-3;
  /// Minimum |sin| of the angle between the local edge directions. Folded
  /// pairs across a cusp run (anti)parallel and are not crossings.
  double min_crossing_sine = 0.2;
  /// Period for parameter separation of closed curves; 0 for open curves.
  double period = 0.0;
};

/// A group of close sample pairs, i.e. one candidate self-intersection.
struct ProximityCluster {
  double param_a;  ///< smaller parameter of the closest pair
  double param_b;
  Vec2 location;   ///< midpoint of the closest pair
  double min_distance;
  std::size_t pair_count;
};

/// All-pairs scan of an ordered point list (segment by segment, increasing
/// parameter). Flagged pairs whose indices are within two samples of each
/// other on both sides are merged into one cluster.
std::vector<ProximityCluster> proximity_scan(std::span<const SampledPoint> points,
                                             const ProximityOptions& opts = {});

struct Bracket {
  double lo, hi;
};

/// Sign changes (and exact zeros) of f over n uniform samples.
std::vector<Bracket> sign_scan(const std::function<double(double)>& f, Interval iv, int n);

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace envoff::oracle
