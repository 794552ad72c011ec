#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "envoff/errors.hpp"
#include "envoff/offsets.hpp"
#include "hand_formulas.hpp"

using namespace envoff;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no envoff::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(OffsetSpec, RejectsNonPositiveDistance) {
  EXPECT_EQ(code_of([] { OffsetSpec(0.0, Side::Internal); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { OffsetSpec(-1.0, Side::External); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { OffsetSpec(INFINITY, Side::External); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { OffsetSpec(std::nan(""), Side::External); }), ErrorCode::InvalidArgument);
}

TEST(OffsetPoint, KissTopBothSides) {
  // The normal at the top is vertical, so the offsets sit at 1 +/- d.
  const ParamCurve k = make_kiss();
  const Vec2 in = offset_point(k, {0.5, Side::Internal}, kPi / 2);
  const Vec2 ex = offset_point(k, {0.5, Side::External}, kPi / 2);
  EXPECT_NEAR(in.x, 0.0, 1e-15);
  EXPECT_NEAR(in.y, 1.5, 1e-15);
  EXPECT_NEAR(ex.x, 0.0, 1e-15);
  EXPECT_NEAR(ex.y, 0.5, 1e-15);
}

TEST(OffsetPoint, CircleInternalIsOutward) {
  const Vec2 p = offset_point(make_circle({0, 0}, 2.0), {1.0, Side::Internal}, 0.0);
  EXPECT_NEAR(p.x, 3.0, 1e-15);
  EXPECT_NEAR(p.y, 0.0, 1e-15);
  const Vec2 q = offset_point(make_circle({0, 0}, 2.0), {1.0, Side::External}, 0.0);
  EXPECT_NEAR(q.x, 1.0, 1e-15);
}

TEST(OffsetPoint, MatchesHandFormula) {
  const ParamCurve k = make_kiss();
  for (double d : {0.1, 1.0 / 3, 1.0, 5.0}) {
    for (Side side : {Side::Internal, Side::External}) {
      for (double u = 0.03; u < 2 * kPi; u += 0.21) {
        double x, y;
        hand::kiss_offset(u, d, side_sign(side), x, y);
        const Vec2 p = offset_point(k, {d, side}, u);
        EXPECT_NEAR(p.x, x, 1e-13);
        EXPECT_NEAR(p.y, y, 1e-13);
      }
    }
  }
}

TEST(OffsetPoint, SingularParameterRejected) {
  const ParamCurve k = make_kiss();
  EXPECT_EQ(code_of([&] { (void)offset_point(k, {1.0, Side::Internal}, kPi); }), ErrorCode::SingularParameter);
  EXPECT_EQ(code_of([&] { (void)offset_point(k, {1.0, Side::External}, 0.0); }), ErrorCode::SingularParameter);
}

TEST(OffsetPoint, DistanceAndOrthogonalityRandom) {
  std::mt19937_64 rng(2024);
  for (const ParamCurve& c : {make_kiss(), make_ellipse(5, 4), make_parabola(), make_circle({0, 0}, 1)}) {
    std::uniform_real_distribution<double> dist(c.domain().lo, c.domain().hi);
    for (int i = 0; i < 100; ++i) {
      const double u = dist(rng);
      if (!c.is_regular(u) || std::abs(u - kPi) < 1e-4 || u < 1e-4 || u > 2 * kPi - 1e-4) continue;
      for (double d : {0.25, 1.0, 3.0}) {
        for (Side side : {Side::Internal, Side::External}) {
          const Vec2 delta = offset_point(c, {d, side}, u) - c.position(u);
          EXPECT_NEAR(norm(delta), d, 1e-12 * (1 + d));
          EXPECT_NEAR(dot(delta, unit_tangent(c, u)), 0.0, 1e-12 * (1 + d));
        }
      }
    }
  }
}

TEST(OffsetVelocity, MatchesFiniteDifference) {
  const ParamCurve k = make_kiss();
  const OffsetSpec spec(0.7, Side::External);
  for (double u : {0.4, 1.3, 2.2, 4.0, 5.5}) {
    const double h = 1e-6;
    const Vec2 fd = (offset_point(k, spec, u + h) - offset_point(k, spec, u - h)) / (2 * h);
    const Vec2 v = offset_velocity(k, spec, u);
    EXPECT_LT(norm(fd - v), 1e-6 * (1 + norm(v)));
    // Scalar multiple of the progenitor velocity.
    EXPECT_NEAR(cross(v, k.d1(u)), 0.0, 1e-12);
  }
}

TEST(OffsetPolyline, KissSegmentsAvoidCusps) {
  const ParamCurve k = make_kiss();
  const Polyline line = offset_polyline(k, {1.0 / 3, Side::Internal}, 400);
  ASSERT_EQ(line.segments.size(), 2u);
  ASSERT_EQ(line.params.size(), 2u);
  EXPECT_EQ(line.point_count(), 400u);
  for (std::size_t s = 0; s < 2; ++s) {
    ASSERT_EQ(line.segments[s].size(), line.params[s].size());
    for (std::size_t j = 1; j < line.params[s].size(); ++j) {
      const double a = line.params[s][j - 1], b = line.params[s][j];
      EXPECT_LT(a, b);
      EXPECT_FALSE(a < kPi && b > kPi) << "segment straddles the cusp at pi";
    }
  }
  EXPECT_NEAR(line.params[0].front(), 1e-6, 1e-15);
  EXPECT_NEAR(line.params[1].back(), 2 * kPi - 1e-6, 1e-15);
}

TEST(OffsetPolyline, PointsLieAtDistance) {
  const ParamCurve e = make_ellipse(5, 4);
  const OffsetSpec spec(1.0, Side::External);
  const Polyline line = offset_polyline(e, spec, 256);
  ASSERT_EQ(line.segments.size(), 1u);
  for (std::size_t j = 0; j < line.segments[0].size(); ++j)
    EXPECT_NEAR(distance(line.segments[0][j], e.position(line.params[0][j])), 1.0, 1e-12);
}

TEST(OffsetPolyline, GapRefinement) {
  const ParamCurve k = make_kiss();
  SamplingOptions opts;
  opts.max_gap = 0.01;
  const Polyline line = offset_polyline(k, {2.0, Side::Internal}, 64, opts);
  const Polyline plain = offset_polyline(k, {2.0, Side::Internal}, 64);
  EXPECT_GT(line.point_count(), plain.point_count());
  double worst = 0.0;
  for (const auto& seg : line.segments)
    for (std::size_t j = 1; j < seg.size(); ++j) worst = std::max(worst, distance(seg[j - 1], seg[j]));
  EXPECT_LT(worst, 0.05);
}

TEST(OffsetPolyline, RejectsTooFewSamples) {
  EXPECT_EQ(code_of([] { (void)offset_polyline(make_kiss(), {1.0, Side::Internal}, 8); }),
            ErrorCode::InvalidArgument);
  SamplingOptions opts;
  opts.exclusion_radius = 4.0;
  EXPECT_EQ(code_of([&] { (void)offset_polyline(make_kiss(), {1.0, Side::Internal}, 64, opts); }),
            ErrorCode::DegenerateDomain);
}

TEST(SampleCurve, WholeDomainOneSegment) {
  const Polyline line = sample_curve(make_kiss(), 100);
  ASSERT_EQ(line.segments.size(), 1u);
  EXPECT_EQ(line.segments[0].size(), 100u);
  EXPECT_DOUBLE_EQ(line.params[0].front(), 0.0);
  EXPECT_DOUBLE_EQ(line.params[0].back(), 2 * kPi);
}

TEST(OffsetPolyline, SmallDistanceApproachesProgenitor) {
  const ParamCurve k = make_kiss();
  for (double d : {1e-2, 1e-4, 1e-6}) {
    const Polyline line = offset_polyline(k, {d, Side::External}, 128);
    double worst = 0.0;
    for (std::size_t s = 0; s < line.segments.size(); ++s)
      for (std::size_t j = 0; j < line.segments[s].size(); ++j)
        worst = std::max(worst, distance(line.segments[s][j], k.position(line.params[s][j])));
    EXPECT_NEAR(worst, d, 1e-12);
  }
}

TEST(DistributeSamples, ProportionalWithFloor) {
  const std::vector<Interval> parts{{0, 1}, {1, 4}};
  const auto n = detail::distribute_samples(parts, 100);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0] + n[1], 100);
  EXPECT_EQ(n[0], 25);
  const auto floor = detail::distribute_samples({{0, 0.001}, {0, 10}}, 100);
  EXPECT_GE(floor[0], 16);
}
