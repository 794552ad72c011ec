#include "envoff/envelopes.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "envoff/errors.hpp"

namespace envoff {

namespace {

void require_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw Error(ErrorCode::Domain, fmt::format("family radius must be positive, got {}", R));
}

struct Branches {
  std::array<Polyline, 2> lines;
  std::array<bool, 2> open{false, false};

  void close() { open = {false, false}; }

  void push(std::array<Vec2, 2> pts, double u) {
    if (open[0] && open[1]) {
      const Vec2 last0 = lines[0].segments.back().back();
      const Vec2 last1 = lines[1].segments.back().back();
      const double keep = distance(pts[0], last0) + distance(pts[1], last1);
      const double swap = distance(pts[1], last0) + distance(pts[0], last1);
      if (swap < keep) std::swap(pts[0], pts[1]);
    }
    for (int b = 0; b < 2; ++b) {
      auto& line = lines[static_cast<std::size_t>(b)];
      if (!open[static_cast<std::size_t>(b)]) {
        line.segments.emplace_back();
        line.params.emplace_back();
        open[static_cast<std::size_t>(b)] = true;
      }
      line.segments.back().push_back(pts[static_cast<std::size_t>(b)]);
      line.params.back().push_back(u);
    }
  }
};

}  // namespace

CircleFamily kiss_family(double R) {
  require_radius(R);
  return {fmt::format("kiss-R{}", R), make_kiss(), [R](double) { return R; }, [](double) { return 0.0; }};
}

CircleFamily nephroid_family() {
  // |2 cos u| is not smooth where cos u = 0, but r r' = -4 sin u cos u is,
  // and only that product enters dF/du.
  return {"nephroid", make_circle({0.0, 0.0}, 2.0),
          [](double u) { return std::abs(2.0 * std::cos(u)); },
          [](double u) { return std::copysign(1.0, std::cos(u)) * -2.0 * std::sin(u); }};
}

CircleFamily constant_radius_family(const ParamCurve& center, double R) {
  require_radius(R);
  return {fmt::format("{}-R{}", center.name(), R), center, [R](double) { return R; },
          [](double) { return 0.0; }};
}

FamilyResidual family_residual(const CircleFamily& fam, Vec2 p, double u) {
  const Vec2 rel = p - fam.center_curve.position(u);
  const double r = fam.radius(u);
  return {dot(rel, rel) - r * r,
          -2.0 * dot(rel, fam.center_curve.d1(u)) - 2.0 * r * fam.radius_d1(u)};
}

EnvelopeResult envelope_of_circle_family(const CircleFamily& fam, int n_samples, const SamplingOptions& opts) {
  const ParamCurve& c = fam.center_curve;
  const auto parts = regular_subintervals(c, opts.exclusion_radius);
  const auto counts = detail::distribute_samples(parts, n_samples);

  Branches br;
  bool any_positive_radius = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    br.close();
    for (double u : detail::uniform_params(parts[i], counts[i])) {
      const double r = fam.radius(u);
      if (!(r >= 0.0) || !std::isfinite(r))
        throw Error(ErrorCode::Domain, fmt::format("{}: radius {} at u={} is not a valid radius", fam.name, r, u));
      any_positive_radius = any_positive_radius || r > 0.0;

      const Vec2 vel = c.d1(u);
      const double speed = norm(vel);
      if (speed < kRegularityTol) {
        br.close();
        continue;
      }
      const double a = -fam.radius_d1(u) / speed;
      const double disc = 1.0 - a * a;
      if (disc < 0.0) {
        br.close();
        continue;
      }
      const Vec2 t = vel / speed;
      const Vec2 n = perp(t);
      const double b = std::sqrt(disc);
      const Vec2 ctr = c.position(u);
      br.push({ctr + r * (a * t + b * n), ctr + r * (a * t - b * n)}, u);
    }
  }
  if (!any_positive_radius)
    throw Error(ErrorCode::DegenerateFamily, fmt::format("{}: radius vanishes on the whole domain", fam.name));

  EnvelopeResult out;
  out.branches = {std::move(br.lines[0]), std::move(br.lines[1])};
  for (double s : c.singular_params()) {
    const double r = fam.radius(s);
    if (norm(c.d1(s)) >= kRegularityTol || std::abs(fam.radius_d1(s)) >= kRegularityTol || !(r > 0.0))
      continue;
    const Vec2 ctr = c.position(s);
    bool seen = false;
    for (const auto& e : out.exceptional_circles)
      seen = seen || (distance(e.center, ctr) < 1e-12 && std::abs(e.radius - r) < 1e-12);
    if (!seen) out.exceptional_circles.push_back({s, ctr, r});
  }
  return out;
}

Vec2 kiss_envelope_closed_form(double R, double u, int branch) {
  require_radius(R);
  if (!std::isfinite(u)) throw Error(ErrorCode::Domain, "parameter must be finite");
  if (branch != 1 && branch != 2)
    throw Error(ErrorCode::InvalidArgument, fmt::format("branch must be 1 or 2, got {}", branch));

  const double c = std::cos(u), s = std::sin(u);
  const double c2 = c * c, c4 = c2 * c2;
  const double s3 = s * s * s, s5 = s3 * s * s, s7 = s5 * s * s;
  const double cos4u = std::cos(4.0 * u);

  const double den_x = 36.0 * c4 - 36.0 * c2 - 4.0;
  const double den_y = -17.0 + 9.0 * cos4u;
  const double under = R * R * (17.0 - 9.0 * cos4u);
  if (std::abs(den_x) < 1e-14 || std::abs(den_y) < 1e-14 || !(under > 0.0))
    throw Error(ErrorCode::Pole, fmt::format("closed-form envelope has a pole at u={}", u));
  const double q = std::numbers::sqrt2 * std::sqrt(under);

  if (branch == 1) {
    return {c * (36.0 * c4 + 3.0 * s * q - 36.0 * c2 - 4.0) / den_x,
            (72.0 * s7 - 72.0 * s5 - 8.0 * s3 + 2.0 * q) / den_y};
  }
  return {-(3.0 * (-12.0 * c4 + s * q + 12.0 * c2 + 4.0 / 3.0) * c) / den_x,
          (72.0 * s7 - 72.0 * s5 - 8.0 * s3 - 2.0 * q) / den_y};
}

Polyline envelope_of_line_family(int n_samples, Interval k_range) {
  if (n_samples < 16)
    throw Error(ErrorCode::InvalidArgument, fmt::format("need at least 16 samples, got {}", n_samples));
  if (!(k_range.lo < k_range.hi))
    throw Error(ErrorCode::Domain, "empty parameter range");
  Polyline out;
  auto& pts = out.segments.emplace_back();
  auto& ks = out.params.emplace_back(detail::uniform_params(k_range, n_samples));
  // F = x + k y - k^2, dF/dk = y - 2k
  for (double k : ks) pts.push_back({-(k * k), 2.0 * k});
  return out;
}

}  // namespace envoff
