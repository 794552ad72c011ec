#include "envoff/singularities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "envoff/errors.hpp"
#include "roots.hpp"

namespace envoff {

namespace {

constexpr double kProbeStep = 1e-6;

SingularPoint make_cusp(const ParamCurve& c, const OffsetSpec& spec, double u, double residual,
                        DetectionMethod method) {
  SingularPoint p;
  p.kind = SingularKind::Cusp;
  p.method = method;
  p.side = spec.side;
  p.params = {u};
  p.location = offset_point(c, spec, u);
  p.residual = residual;
  p.offset_distance = spec.distance;
  const double probe = u + kProbeStep;
  if (c.domain().contains(probe) && c.is_regular(probe))
    p.offset_curvature_probe = offset_curvature(c, spec, probe);
  return p;
}

void sort_points(std::vector<SingularPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const SingularPoint& a, const SingularPoint& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.params < b.params;
  });
}

}  // namespace

const char* to_string(SingularKind k) noexcept {
  return k == SingularKind::Cusp ? "cusp" : "crunode";
}

const char* to_string(DetectionMethod m) noexcept {
  switch (m) {
    case DetectionMethod::Derivative: return "derivative";
    case DetectionMethod::Curvature: return "curvature";
    case DetectionMethod::CrunodeSystem: return "crunode-system";
  }
  return "unknown";
}

double cusp_condition(const ParamCurve& c, const OffsetSpec& spec, double u) {
  return 1.0 + side_sign(spec.side) * spec.distance * curvature(c, u);
}

double offset_curvature(const ParamCurve& c, const OffsetSpec& spec, double u) {
  const double k = curvature(c, u);
  const double g = 1.0 + side_sign(spec.side) * spec.distance * k;
  if (g == 0.0) throw Error(ErrorCode::Pole, fmt::format("offset curvature is unbounded at u={} (offset cusp)", u));
  return k / std::abs(g);
}

int default_seed_count(const ParamCurve& c, const CuspSearchOptions& opts) {
  const double per_unit = opts.seeds_per_2pi / (2.0 * std::numbers::pi);
  return std::max(32, static_cast<int>(std::ceil(per_unit * c.domain().length())));
}

std::vector<SingularPoint> cusps_by_derivative(const ParamCurve& c, const OffsetSpec& spec, int n_seeds,
                                               const CuspSearchOptions& opts) {
  if (n_seeds < 32)
    throw Error(ErrorCode::InvalidArgument, fmt::format("need at least 32 seeds, got {}", n_seeds));
  const auto parts = regular_subintervals(c, opts.exclusion_radius);
  const auto counts = detail::distribute_samples(parts, n_seeds);
  const auto g = [&](double u) { return cusp_condition(c, spec, u); };

  std::vector<SingularPoint> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& r : detail::grid_roots(g, parts[i], counts[i], opts.tolerance, opts.dedup_tolerance)) {
      // residual of the two-component system d/du offset = g * d1 = 0
      const Vec2 v = c.d1(r.u);
      const double residual = r.residual * std::max(std::abs(v.x), std::abs(v.y));
      out.push_back(make_cusp(c, spec, r.u, residual, DetectionMethod::Derivative));
    }
  }
  sort_points(out);
  return out;
}

std::vector<SingularPoint> cusps_by_curvature(const ParamCurve& c, double d, const CuspSearchOptions& opts) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw Error(ErrorCode::InvalidArgument, fmt::format("offset distance must be positive, got {}", d));
  const auto parts = regular_subintervals(c, opts.exclusion_radius);
  const auto counts = detail::distribute_samples(parts, default_seed_count(c, opts));

  std::vector<SingularPoint> out;
  for (Side side : {Side::Internal, Side::External}) {
    const OffsetSpec spec(d, side);
    // 1 + sign*d*k = 0  <=>  k = -sign/d
    const double target = -side_sign(side) / d;
    const auto f = [&](double u) { return curvature(c, u) - target; };
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (const auto& r : detail::grid_roots(f, parts[i], counts[i], opts.tolerance, opts.dedup_tolerance))
        out.push_back(make_cusp(c, spec, r.u, r.residual, DetectionMethod::Curvature));
    }
  }
  sort_points(out);
  return out;
}

}  // namespace envoff
