#include "envoff/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "envoff/errors.hpp"

namespace envoff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorCode::Domain, fmt::format("{} must be positive and finite, got {}", what, v));
}

void require_regular(const ParamCurve& c, double u) {
  if (!std::isfinite(u))
    throw Error(ErrorCode::Domain, "parameter must be finite");
  if (!c.is_regular(u))
    throw Error(ErrorCode::SingularParameter,
                fmt::format("{}: parameter {} is singular (no tangent or normal defined)", c.name(), u));
}

}  // namespace

const char* to_string(Side s) noexcept {
  return s == Side::Internal ? "internal" : "external";
}

ParamCurve::ParamCurve(Definition def) {
  if (!def.position || !def.d1 || !def.d2)
    throw Error(ErrorCode::InvalidArgument, "curve evaluators must be set");
  if (!std::isfinite(def.domain.lo) || !std::isfinite(def.domain.hi) || !(def.domain.lo < def.domain.hi))
    throw Error(ErrorCode::Domain, fmt::format("curve '{}' has an empty or non-finite domain", def.name));
  for (double s : def.singular_params) {
    if (!def.domain.contains(s))
      throw Error(ErrorCode::Domain,
                  fmt::format("singular parameter {} lies outside the domain of '{}'", s, def.name));
  }
  std::sort(def.singular_params.begin(), def.singular_params.end());
  def_ = std::make_shared<const Definition>(std::move(def));
}

bool ParamCurve::is_regular(double u) const {
  for (double s : def_->singular_params)
    if (u == s) return false;
  return norm(d1(u)) >= kRegularityTol;
}

double ParamCurve::param_separation(double a, double b) const {
  double sep = std::abs(a - b);
  if (closed()) {
    const double p = period();
    sep = std::fmod(sep, p);
    sep = std::min(sep, p - sep);
  }
  return sep;
}

ParamCurve make_kiss() {
  ParamCurve::Definition def;
  def.name = "kiss";
  def.position = [](double u) {
    const double s = std::sin(u);
    return Vec2{std::cos(u), s * s * s};
  };
  def.d1 = [](double u) {
    const double s = std::sin(u), c = std::cos(u);
    return Vec2{-s, 3.0 * s * s * c};
  };
  def.d2 = [](double u) {
    const double s = std::sin(u), c = std::cos(u);
    return Vec2{-c, 6.0 * s * c * c - 3.0 * s * s * s};
  };
  def.domain = {0.0, kTwoPi};
  def.singular_params = {0.0, std::numbers::pi, kTwoPi};
  def.closed = true;
  return ParamCurve(std::move(def));
}

ParamCurve make_circle(Vec2 center, double radius) {
  require_positive(radius, "circle radius");
  if (!is_finite(center)) throw Error(ErrorCode::Domain, "circle center must be finite");
  ParamCurve::Definition def;
  def.name = "circle";
  def.position = [=](double u) { return center + radius * Vec2{std::cos(u), std::sin(u)}; };
  def.d1 = [=](double u) { return radius * Vec2{-std::sin(u), std::cos(u)}; };
  def.d2 = [=](double u) { return -radius * Vec2{std::cos(u), std::sin(u)}; };
  def.domain = {0.0, kTwoPi};
  def.closed = true;
  return ParamCurve(std::move(def));
}

ParamCurve make_ellipse(double a, double b) {
  require_positive(a, "ellipse semi-axis a");
  require_positive(b, "ellipse semi-axis b");
  ParamCurve::Definition def;
  def.name = "ellipse";
  def.position = [=](double u) { return Vec2{a * std::cos(u), b * std::sin(u)}; };
  def.d1 = [=](double u) { return Vec2{-a * std::sin(u), b * std::cos(u)}; };
  def.d2 = [=](double u) { return Vec2{-a * std::cos(u), -b * std::sin(u)}; };
  def.domain = {0.0, kTwoPi};
  def.closed = true;
  return ParamCurve(std::move(def));
}

ParamCurve make_parabola(Interval domain) {
  ParamCurve::Definition def;
  def.name = "parabola";
  def.position = [](double t) { return Vec2{t, 0.25 * t * t}; };
  def.d1 = [](double t) { return Vec2{1.0, 0.5 * t}; };
  def.d2 = [](double) { return Vec2{0.0, 0.5}; };
  def.domain = domain;
  return ParamCurve(std::move(def));
}

ParamCurve make_named_curve(std::string_view name, std::span<const double> params) {
  auto param = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
  auto max_params = [&](std::size_t n) {
    if (params.size() > n)
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("curve '{}' takes at most {} parameters, got {}", name, n, params.size()));
  };
  if (name == "kiss") {
    max_params(0);
    return make_kiss();
  }
  if (name == "circle") {
    max_params(3);
    return make_circle({param(0, 0.0), param(1, 0.0)}, param(2, 1.0));
  }
  if (name == "ellipse") {
    max_params(2);
    return make_ellipse(param(0, 5.0), param(1, 4.0));
  }
  if (name == "parabola") {
    max_params(2);
    return make_parabola({param(0, -6.0), param(1, 6.0)});
  }
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown curve '{}'", name));
}

ParamCurve reversed(const ParamCurve& c) {
  const double lo = c.domain().lo, hi = c.domain().hi;
  ParamCurve::Definition def;
  def.name = c.name() + "-reversed";
  def.position = [c, lo, hi](double u) { return c.position(lo + hi - u); };
  def.d1 = [c, lo, hi](double u) { return -c.d1(lo + hi - u); };
  def.d2 = [c, lo, hi](double u) { return c.d2(lo + hi - u); };
  def.domain = c.domain();
  for (double s : c.singular_params()) def.singular_params.push_back(lo + hi - s);
  def.closed = c.closed();
  return ParamCurve(std::move(def));
}

double curvature(const ParamCurve& c, double u) {
  require_regular(c, u);
  const Vec2 v = c.d1(u);
  const Vec2 a = c.d2(u);
  const double speed = norm(v);
  return cross(v, a) / (speed * speed * speed);
}

Vec2 unit_tangent(const ParamCurve& c, double u) {
  require_regular(c, u);
  const Vec2 v = c.d1(u);
  return v / norm(v);
}

Vec2 unit_normal(const ParamCurve& c, double u, Side side) {
  const Vec2 t = unit_tangent(c, u);
  // internal = (y', -x')/|r'| = -perp(t)
  return side == Side::Internal ? -perp(t) : perp(t);
}

std::vector<Interval> regular_subintervals(const ParamCurve& c, double exclusion) {
  if (!(exclusion >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "exclusion radius must be non-negative");
  std::vector<Interval> out;
  double start = c.domain().lo;
  auto close_at = [&](double end) {
    if (end > start) out.push_back({start, end});
  };
  for (double s : c.singular_params()) {
    close_at(std::min(s - exclusion, c.domain().hi));
    start = std::max(start, s + exclusion);
  }
  close_at(c.domain().hi);
  if (out.empty())
    throw Error(ErrorCode::DegenerateDomain,
                fmt::format("curve '{}' has no regular parameters outside the exclusion zones", c.name()));
  return out;
}

}  // namespace envoff
