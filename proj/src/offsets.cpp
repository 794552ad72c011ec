#include "envoff/offsets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <fmt/format.h>

#include "envoff/errors.hpp"

namespace envoff {

OffsetSpec::OffsetSpec(double distance_, Side side_) : distance(distance_), side(side_) {
  if (!(distance > 0.0) || !std::isfinite(distance))
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("offset distance must be positive and finite, got {}", distance));
}

std::size_t Polyline::point_count() const {
  return std::accumulate(segments.begin(), segments.end(), std::size_t{0},
                         [](std::size_t n, const auto& s) { return n + s.size(); });
}

Vec2 offset_point(const ParamCurve& c, const OffsetSpec& spec, double u) {
  return c.position(u) + spec.distance * unit_normal(c, u, spec.side);
}

Vec2 offset_velocity(const ParamCurve& c, const OffsetSpec& spec, double u) {
  const double g = 1.0 + side_sign(spec.side) * spec.distance * curvature(c, u);
  return g * c.d1(u);
}

namespace detail {

std::vector<int> distribute_samples(const std::vector<Interval>& parts, int n_samples) {
  if (n_samples < 16)
    throw Error(ErrorCode::InvalidArgument, fmt::format("need at least 16 samples, got {}", n_samples));
  double total = 0.0;
  for (const auto& p : parts) total += p.length();
  std::vector<int> counts;
  counts.reserve(parts.size());
  for (const auto& p : parts) {
    const int n = static_cast<int>(std::lround(n_samples * p.length() / total));
    counts.push_back(std::max(n, 16));
  }
  return counts;
}

std::vector<double> uniform_params(Interval iv, int n) {
  std::vector<double> u(static_cast<std::size_t>(n));
  const double h = iv.length() / (n - 1);
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = iv.lo + h * i;
  u.back() = iv.hi;
  return u;
}

}  // namespace detail

namespace {

// Appends the samples of `eval` on `params` to one segment, bisecting
// parameter gaps whose images are further apart than max_gap.
void sample_segment(const std::function<Vec2(double)>& eval, const std::vector<double>& params,
                    const SamplingOptions& opts, std::vector<Vec2>& pts, std::vector<double>& us) {
  std::function<void(double, Vec2, double, Vec2, int)> refine =
      [&](double u0, Vec2 p0, double u1, Vec2 p1, int depth) {
        if (depth >= opts.max_refine_depth || distance(p0, p1) <= opts.max_gap) return;
        const double um = 0.5 * (u0 + u1);
        const Vec2 pm = eval(um);
        refine(u0, p0, um, pm, depth + 1);
        pts.push_back(pm);
        us.push_back(um);
        refine(um, pm, u1, p1, depth + 1);
      };

  for (std::size_t i = 0; i < params.size(); ++i) {
    const Vec2 p = eval(params[i]);
    if (i > 0 && opts.max_gap > 0.0) refine(us.back(), pts.back(), params[i], p, 0);
    pts.push_back(p);
    us.push_back(params[i]);
  }
}

}  // namespace

Polyline offset_polyline(const ParamCurve& c, const OffsetSpec& spec, int n_samples,
                         const SamplingOptions& opts) {
  const auto parts = regular_subintervals(c, opts.exclusion_radius);
  const auto counts = detail::distribute_samples(parts, n_samples);
  const auto eval = [&](double u) { return offset_point(c, spec, u); };

  Polyline out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& pts = out.segments.emplace_back();
    auto& us = out.params.emplace_back();
    sample_segment(eval, detail::uniform_params(parts[i], counts[i]), opts, pts, us);
  }
  return out;
}

Polyline sample_curve(const ParamCurve& c, int n_samples) {
  if (n_samples < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least 2 samples");
  Polyline out;
  auto& pts = out.segments.emplace_back();
  auto& us = out.params.emplace_back(detail::uniform_params(c.domain(), n_samples));
  pts.reserve(us.size());
  for (double u : us) pts.push_back(c.position(u));
  return out;
}

}  // namespace envoff
