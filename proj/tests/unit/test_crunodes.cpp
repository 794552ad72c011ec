#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "envoff/crunodes.hpp"
#include "envoff/errors.hpp"
#include "envoff/oracle.hpp"
#include "hand_formulas.hpp"

using namespace envoff;

namespace {

constexpr double kPi = std::numbers::pi;

bool has_point(const std::vector<SingularPoint>& pts, Vec2 q, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const SingularPoint& p) { return distance(p.location, q) < tol; });
}

}  // namespace

// Counts were fixed by the proximity oracle and are held as regression values.
TEST(Crunodes, KissRegressionCounts) {
  const ParamCurve k = make_kiss();
  const std::map<double, std::pair<std::size_t, std::size_t>> expected{
      {0.5, {0, 4}}, {1.0, {0, 8}}, {5.0, {0, 2}}, {10.0, {0, 2}}};
  for (const auto& [d, counts] : expected) {
    EXPECT_EQ(find_crunodes(k, {d, Side::Internal}).size(), counts.first) << d;
    EXPECT_EQ(find_crunodes(k, {d, Side::External}).size(), counts.second) << d;
  }
}

TEST(Crunodes, KissLocations) {
  const ParamCurve k = make_kiss();
  const auto half = find_crunodes(k, {0.5, Side::External});
  EXPECT_TRUE(has_point(half, {0.342063, 0.0}, 1e-5));
  EXPECT_TRUE(has_point(half, {-0.342063, 0.0}, 1e-5));
  EXPECT_TRUE(has_point(half, {0.0, 0.464925}, 1e-5));
  EXPECT_TRUE(has_point(half, {0.0, -0.464925}, 1e-5));
  const auto one = find_crunodes(k, {1.0, Side::External});
  EXPECT_TRUE(has_point(one, {0.262842, 0.0}, 1e-5));
  EXPECT_TRUE(has_point(one, {0.232323, 0.042706}, 1e-5));
  EXPECT_TRUE(has_point(one, {-0.232323, -0.042706}, 1e-5));
  EXPECT_FALSE(has_point(one, {0.0, 0.0}, 1e-3)) << "tangential contact at the origin";
  const auto five = find_crunodes(k, {5.0, Side::External});
  EXPECT_TRUE(has_point(five, {0.0, 4.899137}, 1e-5));
  const auto ten = find_crunodes(k, {10.0, Side::External});
  EXPECT_TRUE(has_point(ten, {0.0, -9.949893}, 1e-5));
}

TEST(Crunodes, SolutionsCoincide) {
  const ParamCurve k = make_kiss();
  for (double d : {0.5, 1.0, 5.0}) {
    for (const auto& p : find_crunodes(k, {d, Side::External})) {
      ASSERT_EQ(p.params.size(), 2u);
      EXPECT_LT(p.params[0], p.params[1]);
      EXPECT_EQ(p.kind, SingularKind::Crunode);
      EXPECT_EQ(p.method, DetectionMethod::CrunodeSystem);
      double xs, ys, xt, yt;
      hand::kiss_offset(p.params[0], d, -1.0, xs, ys);
      hand::kiss_offset(p.params[1], d, -1.0, xt, yt);
      EXPECT_LT(std::hypot(xs - xt, ys - yt), 1e-9);
      EXPECT_LT(p.residual, 1e-9);
      EXPECT_GT(k.param_separation(p.params[0], p.params[1]), 1e-3);
    }
  }
}

TEST(Crunodes, MatchProximityOracle) {
  const ParamCurve k = make_kiss();
  for (double d : {0.5, 1.0}) {
    const OffsetSpec spec(d, Side::External);
    const auto found = find_crunodes(k, spec);
    oracle::ProximityOptions opts;
    opts.period = 2 * kPi;
    const auto clusters = oracle::proximity_scan(oracle::flatten(offset_polyline(k, spec, 10000)), opts);
    ASSERT_EQ(clusters.size(), found.size()) << d;
    for (const auto& c : clusters) EXPECT_TRUE(has_point(found, c.location, 0.02)) << d;
  }
}

TEST(Crunodes, ParabolaConcaveSide) {
  // Concave-side offset of 4y = x^2 at d = 3.5 crosses itself on the axis
  // at (0, 4.0625), reached from t = +-sqrt(8.25).
  const ParamCurve p = make_parabola();
  const auto pts = find_crunodes(p, {3.5, Side::Internal});
  const auto other = find_crunodes(p, {3.5, Side::External});
  const auto& concave = pts.empty() ? other : pts;
  ASSERT_EQ(concave.size(), 1u);
  EXPECT_NEAR(concave[0].location.x, 0.0, 1e-8);
  EXPECT_NEAR(concave[0].location.y, 4.0625, 1e-8);
  EXPECT_NEAR(concave[0].params[0], -std::sqrt(8.25), 1e-8);
  EXPECT_NEAR(concave[0].params[1], std::sqrt(8.25), 1e-8);
  EXPECT_TRUE(pts.empty() || other.empty());
}

TEST(Crunodes, CircleOffsetsAreSimple) {
  const ParamCurve c = make_circle({0, 0}, 1.0);
  EXPECT_TRUE(find_crunodes(c, {0.5, Side::Internal}).empty());
  EXPECT_TRUE(find_crunodes(c, {0.5, Side::External}).empty());
}

TEST(Crunodes, ConfigValidation) {
  CrunodeSearchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.grid_n = 2;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.newton_tol = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.min_crossing_sine = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.max_newton_iters = 0;
  EXPECT_THROW((void)find_crunodes(make_kiss(), {1.0, Side::External}, cfg), Error);
}

TEST(Crunodes, Deterministic) {
  const ParamCurve k = make_kiss();
  const auto a = find_crunodes(k, {1.0, Side::External});
  const auto b = find_crunodes(k, {1.0, Side::External});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].params, b[i].params);
    EXPECT_EQ(a[i].location, b[i].location);
  }
}
