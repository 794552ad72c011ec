#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "envoff/curves.hpp"
#include "envoff/errors.hpp"
#include "hand_formulas.hpp"

using namespace envoff;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no envoff::Error thrown";
  return ErrorCode::InvalidArgument;
}

double numeric_curvature(const ParamCurve& c, double u, double h = 1e-4) {
  const Vec2 a = c.position(u - h), b = c.position(u), e = c.position(u + h);
  return hand::three_point_curvature(a.x, a.y, b.x, b.y, e.x, e.y);
}

}  // namespace

TEST(Kiss, KnownPoints) {
  const ParamCurve k = make_kiss();
  EXPECT_NEAR(k.position(kPi / 2).x, 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(k.position(kPi / 2).y, 1.0);
  EXPECT_EQ(k.position(0.0), (Vec2{1.0, 0.0}));
  EXPECT_NEAR(k.position(kPi).x, -1.0, 1e-16);
  EXPECT_NEAR(k.position(kPi).y, 0.0, 1e-16);
  EXPECT_NEAR(norm(k.d1(kPi)), 0.0, 1e-15);
}

TEST(Kiss, DeclaredSingularities) {
  const ParamCurve k = make_kiss();
  ASSERT_EQ(k.singular_params().size(), 3u);
  EXPECT_DOUBLE_EQ(k.singular_params()[0], 0.0);
  EXPECT_DOUBLE_EQ(k.singular_params()[1], kPi);
  EXPECT_DOUBLE_EQ(k.singular_params()[2], 2 * kPi);
  for (double u : k.singular_params()) {
    EXPECT_LT(norm(k.d1(u)), kRegularityTol);
    EXPECT_FALSE(k.is_regular(u));
  }
  EXPECT_TRUE(k.closed());
  EXPECT_TRUE(k.is_regular(1.0));
}

TEST(Kiss, FirstDerivativeFormula) {
  const ParamCurve k = make_kiss();
  for (double u : {0.3, 1.1, 2.9, 4.4}) {
    const double s = std::sin(u), c = std::cos(u);
    EXPECT_NEAR(k.d1(u).x, -s, 1e-15);
    EXPECT_NEAR(k.d1(u).y, 3 * s * s * c, 1e-15);
  }
}

TEST(Kiss, CurvatureMatchesHandFormula) {
  const ParamCurve k = make_kiss();
  EXPECT_NEAR(curvature(k, kPi / 2), 3.0, 1e-14);
  for (double u = 0.05; u < 2 * kPi; u += 0.097) {
    if (std::abs(u - kPi) < 1e-3) continue;
    EXPECT_NEAR(curvature(k, u), hand::kiss_curvature(u), 1e-12 * (1 + std::abs(hand::kiss_curvature(u))));
  }
}

TEST(Kiss, CurvatureAtCuspRejected) {
  const ParamCurve k = make_kiss();
  EXPECT_EQ(code_of([&] { (void)curvature(k, 0.0); }), ErrorCode::SingularParameter);
  EXPECT_EQ(code_of([&] { (void)curvature(k, kPi); }), ErrorCode::SingularParameter);
  EXPECT_EQ(code_of([&] { (void)unit_normal(k, kPi, Side::Internal); }), ErrorCode::SingularParameter);
}

TEST(Kiss, ExternalNormalAtTop) {
  // d1(pi/2) = (-1, 0), so (-y', x') = (0, -1).
  const Vec2 n = unit_normal(make_kiss(), kPi / 2, Side::External);
  EXPECT_NEAR(n.x, 0.0, 1e-15);
  EXPECT_NEAR(n.y, -1.0, 1e-15);
}

TEST(Kiss, MirrorSymmetry) {
  const ParamCurve k = make_kiss();
  for (double u = 0.01; u < 2 * kPi; u += 0.1) {
    const Vec2 p = k.position(u), q = k.position(2 * kPi - u);
    EXPECT_NEAR(q.x, p.x, 1e-15);
    EXPECT_NEAR(q.y, -p.y, 1e-15);
  }
}

TEST(Circle, Basics) {
  const ParamCurve c = make_circle({0, 0}, 2.0);
  EXPECT_EQ(c.position(0.0), (Vec2{2.0, 0.0}));
  EXPECT_NEAR(c.position(kPi / 2).x, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c.position(kPi / 2).y, 2.0);
  EXPECT_TRUE(c.singular_params().empty());
  for (double u : {0.0, 1.0, 3.0, 5.5}) EXPECT_NEAR(curvature(c, u), 0.5, 1e-15);
}

TEST(Circle, RejectsBadRadius) {
  EXPECT_EQ(code_of([] { (void)make_circle({0, 0}, 0.0); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { (void)make_circle({0, 0}, -1.0); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { (void)make_circle({0, 0}, std::nan("")); }), ErrorCode::Domain);
}

TEST(Ellipse, Basics) {
  const ParamCurve e = make_ellipse(5, 4);
  EXPECT_EQ(e.position(0.0), (Vec2{5.0, 0.0}));
  EXPECT_NEAR(e.position(kPi / 2).x, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(e.position(kPi / 2).y, 4.0);
  EXPECT_NEAR(curvature(e, 0.0), 5.0 / 16.0, 1e-15);
  EXPECT_NEAR(curvature(e, 0.0), numeric_curvature(e, 0.0), 1e-7);
  EXPECT_EQ(code_of([] { (void)make_ellipse(0.0, 4.0); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { (void)make_ellipse(5.0, -4.0); }), ErrorCode::Domain);
}

TEST(Parabola, Basics) {
  const ParamCurve p = make_parabola();
  EXPECT_EQ(p.position(0.0), (Vec2{0.0, 0.0}));
  EXPECT_EQ(p.position(2.0), (Vec2{2.0, 1.0}));
  EXPECT_DOUBLE_EQ(p.domain().lo, -6.0);
  EXPECT_DOUBLE_EQ(p.domain().hi, 6.0);
  EXPECT_FALSE(p.closed());
  EXPECT_NEAR(curvature(p, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(curvature(p, 0.0), numeric_curvature(p, 0.0), 1e-8);
  EXPECT_EQ(make_parabola({-2.0, 3.0}).domain().hi, 3.0);
}

TEST(NamedCurves, ParametersAndErrors) {
  const double circle[] = {1.0, -1.0, 3.0};
  const ParamCurve c = make_named_curve("circle", circle);
  EXPECT_EQ(c.position(0.0), (Vec2{4.0, -1.0}));
  EXPECT_EQ(make_named_curve("ellipse").position(0.0), (Vec2{5.0, 0.0}));
  EXPECT_EQ(make_named_curve("kiss").name(), "kiss");
  EXPECT_EQ(code_of([] { (void)make_named_curve("cardioid"); }), ErrorCode::InvalidArgument);
  const double too_many[] = {1, 2, 3, 4};
  EXPECT_EQ(code_of([&] { (void)make_named_curve("ellipse", too_many); }), ErrorCode::InvalidArgument);
}

TEST(Curves, ReversalNegatesCurvature) {
  for (const ParamCurve& c : {make_kiss(), make_ellipse(5, 4), make_parabola()}) {
    const ParamCurve r = reversed(c);
    for (double t : {0.2, 0.45, 0.7}) {
      const double u = c.domain().lo + t * c.domain().length();
      const double v = c.domain().lo + c.domain().hi - u;
      EXPECT_NEAR(distance(r.position(v), c.position(u)), 0.0, 1e-14);
      EXPECT_NEAR(curvature(r, v), -curvature(c, u), 1e-12);
    }
  }
}

TEST(Curves, DerivativeConsistencyRandom) {
  std::mt19937_64 rng(7);
  for (const ParamCurve& c : {make_kiss(), make_circle({1, 2}, 0.5), make_ellipse(5, 4), make_parabola()}) {
    std::uniform_real_distribution<double> dist(c.domain().lo + 1e-3, c.domain().hi - 1e-3);
    for (int i = 0; i < 100; ++i) {
      const double u = dist(rng), h = 1e-5;
      const Vec2 fd1 = (c.position(u + h) - c.position(u - h)) / (2 * h);
      const Vec2 fd2 = (c.d1(u + h) - c.d1(u - h)) / (2 * h);
      EXPECT_LE(norm(fd1 - c.d1(u)), 1e-6 * (1 + norm(c.d1(u)))) << c.name() << " u=" << u;
      EXPECT_LE(norm(fd2 - c.d2(u)), 1e-6 * (1 + norm(c.d2(u)))) << c.name() << " u=" << u;
    }
  }
}

TEST(Curves, NormalsOppositeAndUnit) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.01, 3.13);
  const ParamCurve k = make_kiss();
  for (int i = 0; i < 100; ++i) {
    const double u = dist(rng);
    const Vec2 ni = unit_normal(k, u, Side::Internal), ne = unit_normal(k, u, Side::External);
    EXPECT_EQ(ni, -ne);
    EXPECT_NEAR(norm(ni), 1.0, 1e-15);
    EXPECT_NEAR(dot(ni, k.d1(u)), 0.0, 1e-15);
  }
}

TEST(Curves, RegularSubintervals) {
  const auto parts = regular_subintervals(make_kiss(), 1e-6);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_DOUBLE_EQ(parts[0].lo, 1e-6);
  EXPECT_DOUBLE_EQ(parts[0].hi, kPi - 1e-6);
  EXPECT_DOUBLE_EQ(parts[1].lo, kPi + 1e-6);
  EXPECT_EQ(regular_subintervals(make_ellipse(5, 4), 1e-6).size(), 1u);
  EXPECT_EQ(code_of([] { (void)regular_subintervals(make_kiss(), 2.0); }), ErrorCode::DegenerateDomain);
}

TEST(Curves, ParamSeparationWraps) {
  const ParamCurve k = make_kiss();
  EXPECT_NEAR(k.param_separation(0.1, 2 * kPi - 0.1), 0.2, 1e-15);
  EXPECT_NEAR(make_parabola().param_separation(-5.0, 5.0), 10.0, 0.0);
}
