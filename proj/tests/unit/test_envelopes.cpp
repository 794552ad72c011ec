#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "envoff/envelopes.hpp"
#include "envoff/errors.hpp"

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

// Nephroid of the circle-of-radius-2 family, hand-expanded:
// (x^2 + y^2 - 4)^3 = 108 x^2.
double nephroid_sextic(Vec2 p) {
  const double s = p.x * p.x + p.y * p.y - 4.0;
  return s * s * s - 108.0 * p.x * p.x;
}

Vec2 nephroid_sextic_grad(Vec2 p) {
  const double s = p.x * p.x + p.y * p.y - 4.0;
  return {6.0 * p.x * s * s - 216.0 * p.x, 6.0 * p.y * s * s};
}

}  // namespace

TEST(KissFamily, ResidualAtOffsetPoint) {
  const CircleFamily fam = kiss_family(1.0);
  // The circle at u = pi/2 is centred at (0, 1) with radius 1.
  const FamilyResidual r = family_residual(fam, {0.0, 0.0}, kPi / 2);
  EXPECT_NEAR(r.value, 0.0, 1e-15);
  EXPECT_NEAR(r.d_param, 0.0, 1e-15);
  const FamilyResidual off = family_residual(fam, {0.0, 3.0}, kPi / 2);
  EXPECT_NEAR(off.value, 3.0, 1e-15);
}

TEST(KissFamily, EnvelopeEqualsOffsets) {
  for (double R : {0.5, 1.0, 1.5}) {
    const EnvelopeResult env = envelope_of_circle_family(kiss_family(R), 512);
    ASSERT_EQ(env.branches.size(), 2u) << R;
    const ParamCurve k = make_kiss();
    for (const Polyline& b : env.branches) {
      for (std::size_t s = 0; s < b.segments.size(); ++s) {
        for (std::size_t j = 0; j < b.segments[s].size(); ++j) {
          const double u = b.params[s][j];
          const Vec2 p = b.segments[s][j];
          const double dev = std::min(distance(p, offset_point(k, {R, Side::Internal}, u)),
                                      distance(p, offset_point(k, {R, Side::External}, u)));
          ASSERT_LT(dev, 1e-9) << "R=" << R << " u=" << u;
          const FamilyResidual res = family_residual(kiss_family(R), p, u);
          ASSERT_LT(std::abs(res.value), 1e-9);
          ASSERT_LT(std::abs(res.d_param), 1e-9);
        }
      }
    }
  }
}

TEST(KissFamily, ExceptionalCirclesAtCusps) {
  const EnvelopeResult env = envelope_of_circle_family(kiss_family(1.0), 512);
  ASSERT_EQ(env.exceptional_circles.size(), 2u);
  EXPECT_NEAR(env.exceptional_circles[0].param, 0.0, 1e-12);
  EXPECT_NEAR(env.exceptional_circles[0].center.x, 1.0, 1e-12);
  EXPECT_NEAR(env.exceptional_circles[1].param, kPi, 1e-12);
  EXPECT_NEAR(env.exceptional_circles[1].center.x, -1.0, 1e-12);
  for (const auto& c : env.exceptional_circles) EXPECT_DOUBLE_EQ(c.radius, 1.0);
}

TEST(KissFamily, ClosedFormBranches) {
  EXPECT_NEAR(kiss_envelope_closed_form(1.0, kPi / 2, 1).x, 0.0, 1e-15);
  EXPECT_NEAR(kiss_envelope_closed_form(1.0, kPi / 2, 1).y, 0.0, 1e-15);
  const Vec2 top = kiss_envelope_closed_form(1.0, kPi / 2, 2);
  EXPECT_NEAR(top.x, 0.0, 1e-15);
  EXPECT_NEAR(top.y, 2.0, 1e-15);
  const CircleFamily fam = kiss_family(0.75);
  for (double u = 0.1; u < 2 * kPi; u += 0.37) {
    if (std::abs(u - kPi) < 1e-3) continue;
    for (int b : {1, 2}) {
      const FamilyResidual r = family_residual(fam, kiss_envelope_closed_form(0.75, u, b), u);
      EXPECT_LT(std::abs(r.value), 1e-12);
      EXPECT_LT(std::abs(r.d_param), 1e-12);
    }
  }
  EXPECT_EQ(code_of([] { (void)kiss_envelope_closed_form(1.0, 1.0, 3); }), ErrorCode::InvalidArgument);
}

TEST(NephroidFamily, SatisfiesSextic) {
  const EnvelopeResult env = envelope_of_circle_family(nephroid_family(), 2048);
  std::size_t checked = 0;
  for (const Polyline& b : env.branches) {
    for (const auto& seg : b.segments) {
      for (Vec2 p : seg) {
        if (std::abs(p.x) < 1e-6) continue;  // y-axis factor
        const double g = norm(nephroid_sextic_grad(p));
        ASSERT_GT(g, 0.0);
        EXPECT_LT(std::abs(nephroid_sextic(p)) / g, 1e-6) << p.x << "," << p.y;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 500u);
}

TEST(NephroidFamily, KnownPoints) {
  // The member at u = 0 (centre (2, 0), radius 2) touches the envelope at (4, 0).
  const FamilyResidual r = family_residual(nephroid_family(), {4.0, 0.0}, 0.0);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.d_param, 0.0, 1e-12);
  EXPECT_NEAR(nephroid_sextic({4.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(nephroid_sextic({0.0, -2.0}), 0.0, 1e-12);
}

TEST(ConstantFamily, RejectsBadRadius) {
  EXPECT_EQ(code_of([] { (void)constant_radius_family(make_kiss(), 0.0); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { (void)kiss_family(-1.0); }), ErrorCode::Domain);
}

TEST(CircleFamily, ZeroRadiusEverywhereIsDegenerate) {
  const CircleFamily points{"points", make_kiss(), [](double) { return 0.0; }, [](double) { return 0.0; }};
  EXPECT_EQ(code_of([&] { (void)envelope_of_circle_family(points, 64); }), ErrorCode::DegenerateFamily);
}

TEST(ConstantFamily, CircleCentresGiveConcentricCircles) {
  const EnvelopeResult env = envelope_of_circle_family(constant_radius_family(make_circle({0, 0}, 2.0), 0.5), 128);
  ASSERT_EQ(env.branches.size(), 2u);
  EXPECT_TRUE(env.exceptional_circles.empty());
  std::vector<double> radii;
  for (const Polyline& b : env.branches) radii.push_back(norm(b.segments.at(0).at(0)));
  std::sort(radii.begin(), radii.end());
  EXPECT_NEAR(radii[0], 1.5, 1e-12);
  EXPECT_NEAR(radii[1], 2.5, 1e-12);
}

TEST(LineFamily, ParabolaMembership) {
  const Polyline line = envelope_of_line_family(200);
  ASSERT_EQ(line.segments.size(), 1u);
  for (Vec2 p : line.segments[0]) EXPECT_NEAR(p.y * p.y + 4 * p.x, 0.0, 1e-12);
}

TEST(LineFamily, TangencyPoints) {
  // x + k y = k^2 touches the envelope at (-k^2, 2k).
  const Polyline line = envelope_of_line_family(16, {-3.0, 3.0});
  const auto& pts = line.segments[0];
  const auto& ks = line.params[0];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double k = ks[i];
    EXPECT_NEAR(pts[i].x + k * pts[i].y, k * k, 1e-12);
  }
  const Polyline one = envelope_of_line_family(16, {1.0, 2.0});
  EXPECT_NEAR(one.segments[0].front().x, -1.0, 1e-15);
  EXPECT_NEAR(one.segments[0].front().y, 2.0, 1e-15);
  const Polyline neg = envelope_of_line_family(16, {-2.0, 2.0});
  EXPECT_NEAR(neg.segments[0].front().x, -4.0, 1e-15);
  EXPECT_NEAR(neg.segments[0].front().y, -4.0, 1e-15);
}
