#include "envoff/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "envoff/crunodes.hpp"
#include "envoff/envelopes.hpp"
#include "envoff/errors.hpp"
#include "envoff/offsets.hpp"
#include "envoff/oracle.hpp"
#include "envoff/singularities.hpp"

namespace envoff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::array<Side, 2> kSides{Side::Internal, Side::External};

class Suite {
 public:
  Suite(const char* name, std::vector<CheckResult>& out) : name_(name), out_(out) {}

  void at_most(std::string check, double measured, double bound, std::string detail = {}) {
    add(std::move(check), measured <= bound, measured, bound, std::move(detail));
  }
  void at_least(std::string check, double measured, double bound, std::string detail = {}) {
    add(std::move(check), measured >= bound, measured, bound, std::move(detail));
  }
  void expect(std::string check, bool ok, std::string detail = {}) {
    add(std::move(check), ok, 0.0, 0.0, std::move(detail));
  }
  void equal_count(std::string check, std::size_t got, std::size_t want) {
    add(std::move(check), got == want, static_cast<double>(got), static_cast<double>(want),
        fmt::format("got {}, expected {}", got, want));
  }

 private:
  void add(std::string check, bool ok, double measured, double bound, std::string detail) {
    out_.push_back({name_, std::move(check), ok, measured, bound, std::move(detail)});
  }

  const char* name_;
  std::vector<CheckResult>& out_;
};

std::vector<ParamCurve> builtin_curves() {
  return {make_kiss(), make_circle({0.0, 0.0}, 2.0), make_ellipse(5.0, 4.0), make_parabola()};
}

/// Uniform parameters at least `margin` away from declared singular params.
std::vector<double> random_regular_params(const ParamCurve& c, std::mt19937_64& rng, int n, double margin) {
  std::uniform_real_distribution<double> dist(c.domain().lo, c.domain().hi);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < n) {
    const double u = dist(rng);
    const bool near_singular = std::any_of(c.singular_params().begin(), c.singular_params().end(),
                                           [&](double s) { return std::abs(u - s) < margin; });
    if (!near_singular) out.push_back(u);
  }
  return out;
}

std::vector<Vec2> points_of(const Polyline& line) {
  std::vector<Vec2> out;
  for (const auto& seg : line.segments) out.insert(out.end(), seg.begin(), seg.end());
  return out;
}

double max_step(const Polyline& line) {
  double h = 0.0;
  for (const auto& seg : line.segments)
    for (std::size_t i = 1; i < seg.size(); ++i) h = std::max(h, distance(seg[i - 1], seg[i]));
  return h;
}

std::vector<Vec2> mapped(std::vector<Vec2> pts, Vec2 scale) {
  for (auto& p : pts) p = {p.x * scale.x, p.y * scale.y};
  return pts;
}

double min_set_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& p : a)
    for (const Vec2& q : b) {
      const Vec2 d = p - q;
      best = std::min(best, dot(d, d));
    }
  return std::sqrt(best);
}

/// Symmetric nearest-neighbour distance between two root sets; infinite when
/// the sizes differ.
double set_mismatch(const std::vector<double>& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  auto nearest = [](double v, const std::vector<double>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (double w : set) best = std::min(best, std::abs(v - w));
    return best;
  };
  for (double v : got) worst = std::max(worst, nearest(v, want));
  for (double v : want) worst = std::max(worst, nearest(v, got));
  return worst;
}

std::vector<double> cusp_params(const std::vector<SingularPoint>& pts, Side side) {
  std::vector<double> out;
  for (const auto& p : pts)
    if (p.side == side) out.push_back(p.params.front());
  std::sort(out.begin(), out.end());
  return out;
}

// The nephroid factor of the family's implicit envelope, with its gradient.
double nephroid_sextic(Vec2 p) {
  const double x2 = p.x * p.x, y2 = p.y * p.y;
  return x2 * x2 * x2 + 3 * x2 * x2 * y2 - 12 * x2 * x2 + 3 * x2 * y2 * y2 - 24 * x2 * y2 - 60 * x2 +
         y2 * y2 * y2 - 12 * y2 * y2 + 48 * y2 - 64;
}

Vec2 nephroid_sextic_grad(Vec2 p) {
  const double x = p.x, y = p.y, x2 = x * x, y2 = y * y;
  return {6 * x2 * x2 * x + 12 * x2 * x * y2 - 48 * x2 * x + 6 * x * y2 * y2 - 48 * x * y2 - 120 * x,
          6 * x2 * x2 * y + 12 * x2 * y2 * y - 48 * x2 * y + 6 * y2 * y2 * y - 48 * y2 * y + 96 * y};
}

/// |f| / |grad f|, a first-order estimate of the distance to the zero set.
double normalized_septic_residual(Vec2 p) {
  // x * S(x, y): the y-axis factor times the sextic.
  const double s = nephroid_sextic(p);
  const Vec2 gs = nephroid_sextic_grad(p);
  const Vec2 grad{s + p.x * gs.x, p.x * gs.y};
  const double gn = norm(grad);
  const double f = p.x * s;
  return f == 0.0 ? 0.0 : std::abs(f) / gn;
}

double normalized_sextic_residual(Vec2 p) {
  const double s = nephroid_sextic(p);
  return s == 0.0 ? 0.0 : std::abs(s) / norm(nephroid_sextic_grad(p));
}

// ---------------------------------------------------------------- curves

void check_curves(std::vector<CheckResult>& out, std::mt19937_64& rng) {
  Suite s("curves", out);
  constexpr double h = 1e-5;

  for (const ParamCurve& c : builtin_curves()) {
    const auto us = random_regular_params(c, rng, 100, 1e-3);
    double d1_err = 0.0, d2_err = 0.0, flip_err = 0.0, unit_err = 0.0, orth_err = 0.0, anti_err = 0.0;
    const ParamCurve rc = reversed(c);
    for (double u : us) {
      const Vec2 fd1 = (c.position(u + h) - c.position(u - h)) / (2 * h);
      const Vec2 fd2 = (c.d1(u + h) - c.d1(u - h)) / (2 * h);
      d1_err = std::max(d1_err, norm(fd1 - c.d1(u)) / (1 + norm(c.d1(u))));
      d2_err = std::max(d2_err, norm(fd2 - c.d2(u)) / (1 + norm(c.d2(u))));

      const double k = curvature(c, u);
      const double kr = curvature(rc, c.domain().lo + c.domain().hi - u);
      flip_err = std::max(flip_err, std::abs(k + kr) / (1 + std::abs(k)));

      const Vec2 ni = unit_normal(c, u, Side::Internal);
      const Vec2 ne = unit_normal(c, u, Side::External);
      unit_err = std::max(unit_err, std::abs(norm(ni) - 1.0));
      orth_err = std::max(orth_err, std::abs(dot(ni, c.d1(u))) / norm(c.d1(u)));
      anti_err = std::max(anti_err, norm(ni + ne));
    }
    const std::string& n = c.name();
    s.at_most(n + ": d1 matches finite differences of position", d1_err, 1e-6);
    s.at_most(n + ": d2 matches finite differences of d1", d2_err, 1e-6);
    s.at_most(n + ": reversing orientation negates curvature", flip_err, 1e-9);
    s.at_most(n + ": unit normal has unit length", unit_err, 1e-12);
    s.at_most(n + ": unit normal is orthogonal to d1", orth_err, 1e-12);
    s.at_most(n + ": internal normal is minus external normal", anti_err, 0.0);

    double sing = 0.0;
    for (double u : c.singular_params()) sing = std::max(sing, norm(c.d1(u)));
    s.at_most(n + ": declared singular parameters have vanishing d1", sing, kRegularityTol);
  }

  const ParamCurve kiss = make_kiss();
  double sym = 0.0;
  for (double u : random_regular_params(kiss, rng, 100, 0.0)) {
    const Vec2 p = kiss.position(u);
    sym = std::max(sym, distance(kiss.position(kTwoPi - u), {p.x, -p.y}));
  }
  s.at_most("kiss: position(2pi - u) mirrors position(u) in the x-axis", sym, 1e-14);
  s.at_most("kiss: cusps at (1, 0) and (-1, 0)",
            std::max(distance(kiss.position(0.0), {1, 0}), distance(kiss.position(kPi), {-1, 0})), 1e-15);
  s.at_most("kiss: curvature 3 at u = pi/2", std::abs(curvature(kiss, kPi / 2) - 3.0), 1e-12);
  s.at_most("circle r=2: curvature 1/2",
            std::abs(curvature(make_circle({0, 0}, 2.0), 1.234) - 0.5), 1e-14);
  s.at_most("ellipse(5,4): curvature a/b^2 at u = 0",
            std::abs(curvature(make_ellipse(5, 4), 0.0) - 5.0 / 16.0), 1e-14);
  s.at_most("parabola: curvature 1/2 at the vertex", std::abs(curvature(make_parabola(), 0.0) - 0.5), 1e-14);

  bool raised = false;
  try {
    (void)curvature(kiss, 0.0);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::SingularParameter;
  }
  s.expect("kiss: curvature at a cusp parameter is rejected", raised);
}

// ---------------------------------------------------------------- offsets

void check_offsets(std::vector<CheckResult>& out, std::mt19937_64& rng) {
  Suite s("offsets", out);
  constexpr std::array<double, 5> kDistances{1.0 / 3.0, 0.5, 1.0, 2.0, 3.5};

  for (const ParamCurve& c : builtin_curves()) {
    const auto us = random_regular_params(c, rng, 100, 1e-3);
    double dist_err = 0.0, orth_err = 0.0;
    for (double d : kDistances)
      for (Side side : kSides) {
        const OffsetSpec spec(d, side);
        for (double u : us) {
          const Vec2 v = offset_point(c, spec, u) - c.position(u);
          dist_err = std::max(dist_err, std::abs(norm(v) - d));
          orth_err = std::max(orth_err, std::abs(dot(v, c.d1(u))) / norm(c.d1(u)));
        }
      }
    s.at_most(c.name() + ": offset points lie at distance d from their foot", dist_err, 1e-9);
    s.at_most(c.name() + ": offset displacement is orthogonal to d1", orth_err, 1e-9);

    double limit = 0.0;
    for (double u : us) limit = std::max(limit, distance(offset_point(c, {1e-12, Side::Internal}, u), c.position(u)));
    s.at_most(c.name() + ": offset tends to the progenitor as d -> 0", limit, 1e-10);
  }

  const ParamCurve kiss = make_kiss();
  for (double d : {1.0 / 3.0, 0.5, 1.0, 2.0})
    for (Side side : kSides) {
      const OffsetSpec spec(d, side);
      const Polyline line = offset_polyline(kiss, spec, 2048);
      const auto pts = points_of(line);
      const double h = max_step(line);
      const double hx = oracle::hausdorff_distance(pts, mapped(pts, {1, -1}));
      const double hy = oracle::hausdorff_distance(pts, mapped(pts, {-1, 1}));
      const std::string tag = fmt::format("kiss d={:.4g} {}", d, to_string(side));
      s.at_most(tag + ": point set symmetric about both axes", std::max(hx, hy), 2 * h,
                fmt::format("sampling step {:.3e}", h));

      double foot = 0.0;
      bool crosses = false;
      for (std::size_t i = 0; i < line.segments.size(); ++i) {
        const auto& ps = line.params[i];
        for (std::size_t j = 0; j < ps.size(); ++j)
          foot = std::max(foot, std::abs(distance(line.segments[i][j], kiss.position(ps[j])) - d));
        for (double sp : kiss.singular_params())
          if (sp > ps.front() && sp < ps.back()) crosses = true;
      }
      s.at_most(tag + ": polyline points at distance d from their foot", foot, 1e-9);
      s.expect(tag + ": no segment spans a singular parameter", !crosses);
    }

  s.equal_count("kiss d=1/3: polyline splits into two segments",
                offset_polyline(kiss, {1.0 / 3.0, Side::Internal}, 512).segments.size(), 2);

  {
    // Away from the progenitor cusps the two branches at d = 1/3 stay apart.
    SamplingOptions opts;
    opts.exclusion_radius = 0.05;
    const auto in = points_of(offset_polyline(kiss, {1.0 / 3.0, Side::Internal}, 2048, opts));
    const auto ex = points_of(offset_polyline(kiss, {1.0 / 3.0, Side::External}, 2048, opts));
    s.at_least("kiss d=1/3: internal and external branches are disjoint", min_set_distance(in, ex), 1e-3);
  }

  {
    // The d = 2 branches approach the progenitor but no arc coincides with it:
    // a long run of samples within 1e-4 of the curve would be coalescence.
    const auto prog = points_of(sample_curve(kiss, 8192));
    std::size_t close = 0;
    for (Side side : kSides)
      for (const Vec2& p : points_of(offset_polyline(kiss, {2.0, side}, 4096))) {
        const Vec2 one[1] = {p};
        if (min_set_distance(one, prog) < 1e-4) ++close;
      }
    s.at_most("kiss d=2: no offset arc coalesces with the progenitor", static_cast<double>(close), 4.0,
              "samples within 1e-4 of the curve");
  }

  s.at_most("circle r=2: internal offset d=1 at u=0 is (3, 0)",
            distance(offset_point(make_circle({0, 0}, 2), {1.0, Side::Internal}, 0.0), {3, 0}), 1e-15);

  {
    const ParamCurve ellipse = make_ellipse(5, 4);
    const Polyline line = offset_polyline(ellipse, {1.0, Side::Internal}, 512);
    s.equal_count("ellipse(5,4) d=1: one segment", line.segments.size(), 1);
    oracle::ProximityOptions po;
    po.period = ellipse.period();
    s.equal_count("ellipse(5,4) d=1: no self-intersection",
                  oracle::proximity_scan(oracle::flatten(line), po).size(), 0);
  }
}

// ---------------------------------------------------------------- envelopes

void check_envelopes(std::vector<CheckResult>& out, std::mt19937_64& rng) {
  Suite s("envelopes", out);
  constexpr int kSamples = 4096;

  auto residuals = [](const CircleFamily& fam, const EnvelopeResult& env) {
    double worst = 0.0;
    for (const auto& b : env.branches)
      for (std::size_t i = 0; i < b.segments.size(); ++i)
        for (std::size_t j = 0; j < b.segments[i].size(); ++j) {
          const auto r = family_residual(fam, b.segments[i][j], b.params[i][j]);
          worst = std::max({worst, std::abs(r.value), std::abs(r.d_param)});
        }
    return worst;
  };

  const ParamCurve kiss = make_kiss();
  for (double R : {0.5, 1.0, 1.5}) {
    const CircleFamily fam = kiss_family(R);
    const EnvelopeResult env = envelope_of_circle_family(fam, kSamples);
    const std::string tag = fmt::format("kiss family R={}", R);
    s.at_most(tag + ": branch points solve the envelope system", residuals(fam, env), 1e-8);

    double reduction = 0.0;
    for (const auto& b : env.branches)
      for (std::size_t i = 0; i < b.segments.size(); ++i)
        for (std::size_t j = 0; j < b.segments[i].size(); ++j) {
          const double u = b.params[i][j];
          const Vec2 p = b.segments[i][j];
          reduction = std::max(reduction, std::min(distance(p, offset_point(kiss, {R, Side::Internal}, u)),
                                                   distance(p, offset_point(kiss, {R, Side::External}, u))));
        }
    s.at_most(tag + ": branch points are offset points at distance R", reduction, 1e-9);

    bool at_pi = false, at_zero = false;
    for (const auto& e : env.exceptional_circles) {
      if (std::abs(e.param - kPi) < 1e-12 && distance(e.center, {-1, 0}) < 1e-15 && e.radius == R) at_pi = true;
      if (std::abs(e.param) < 1e-12 && distance(e.center, {1, 0}) < 1e-15 && e.radius == R) at_zero = true;
    }
    s.expect(tag + ": exceptional circles about both cusps", at_pi && at_zero,
             fmt::format("{} exceptional circles", env.exceptional_circles.size()));
  }

  {
    // Tangency: the envelope runs along each member circle at its point.
    const CircleFamily fam = kiss_family(1.0);
    const EnvelopeResult env = envelope_of_circle_family(fam, 20000);
    double worst = 0.0;
    for (const auto& b : env.branches)
      for (std::size_t i = 0; i < b.segments.size(); ++i) {
        const auto& seg = b.segments[i];
        std::vector<double> chords;
        for (std::size_t j = 1; j + 1 < seg.size(); ++j) chords.push_back(distance(seg[j + 1], seg[j - 1]));
        if (chords.empty()) continue;
        std::vector<double> sorted = chords;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
        const double median = sorted[sorted.size() / 2];
        for (std::size_t j = 1; j + 1 < seg.size(); ++j) {
          // Envelope cusps have no tangent; skip samples where the curve stalls.
          if (chords[j - 1] < 0.1 * median) continue;
          const Vec2 tangent = (seg[j + 1] - seg[j - 1]) / chords[j - 1];
          const Vec2 radial = seg[j] - fam.center_curve.position(b.params[i][j]);
          worst = std::max(worst, std::abs(dot(tangent, radial)) / norm(radial));
        }
      }
    s.at_most("kiss family R=1: envelope tangent to member circles", worst, 1e-5);
  }

  {
    double worst = 0.0;
    std::uniform_real_distribution<double> dist(0.0, kTwoPi);
    const CircleFamily fam = kiss_family(1.0);
    for (int i = 0; i < 200; ++i) {
      const double u = dist(rng);
      for (int branch : {1, 2}) {
        const auto r = family_residual(fam, kiss_envelope_closed_form(1.0, u, branch), u);
        worst = std::max({worst, std::abs(r.value), std::abs(r.d_param)});
      }
    }
    s.at_most("kiss closed form R=1: solves the envelope system", worst, 1e-7);
    s.at_most("kiss closed form R=1: branch 1 at u = pi/2 is the origin",
              norm(kiss_envelope_closed_form(1.0, kPi / 2, 1)), 1e-15);

    const EnvelopeResult env = envelope_of_circle_family(fam, kSamples);
    std::vector<Vec2> generic, closed;
    double h = 0.0;
    for (const auto& b : env.branches) {
      const auto pts = points_of(b);
      generic.insert(generic.end(), pts.begin(), pts.end());
      h = std::max(h, max_step(b));
    }
    for (int i = 0; i < kSamples; ++i) {
      const double u = kTwoPi * (i + 0.5) / kSamples;
      for (int branch : {1, 2}) closed.push_back(kiss_envelope_closed_form(1.0, u, branch));
    }
    s.at_most("kiss family R=1: closed form matches the generic solver",
              oracle::hausdorff_distance(generic, closed), 2 * h, fmt::format("sampling step {:.3e}", h));
  }

  {
    const CircleFamily fam = nephroid_family();
    const EnvelopeResult env = envelope_of_circle_family(fam, kSamples);
    s.at_most("nephroid family: branch points solve the envelope system", residuals(fam, env), 1e-8);
    double septic = 0.0, sextic = 0.0;
    std::size_t total = 0, on_sextic = 0;
    for (const auto& b : env.branches)
      for (const auto& seg : b.segments)
        for (const Vec2& p : seg) {
          ++total;
          septic = std::max(septic, normalized_septic_residual(p));
          if (std::abs(p.x) > 1e-9) {
            ++on_sextic;
            sextic = std::max(sextic, normalized_sextic_residual(p));
          }
        }
    s.at_most("nephroid family: all branch points on x * sextic = 0", septic, 1e-6,
              fmt::format("{} points", total));
    s.at_most("nephroid family: off-axis branch points on the sextic", sextic, 1e-6,
              fmt::format("{} points", on_sextic));
    s.at_least("nephroid family: sextic branch sample count", static_cast<double>(on_sextic), 500.0);
  }

  {
    const Polyline line = envelope_of_line_family(1001);
    double worst = 0.0;
    for (const auto& seg : line.segments)
      for (const Vec2& p : seg) worst = std::max(worst, std::abs(p.y * p.y + 4 * p.x));
    s.at_most("line family: points on y^2 + 4x = 0", worst, 1e-12);
  }

  bool raised = false;
  try {
    CircleFamily zero{"zero", make_kiss(), [](double) { return 0.0; }, [](double) { return 0.0; }};
    (void)envelope_of_circle_family(zero, 64);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::DegenerateFamily;
  }
  s.expect("zero-radius family is rejected", raised);
}

// ---------------------------------------------------------------- singularities

void check_singularities(std::vector<CheckResult>& out) {
  Suite s("singularities", out);
  const ParamCurve kiss = make_kiss();
  const int seeds = default_seed_count(kiss);

  for (double d : {0.1, 0.5, 1.0, 2.0}) {
    const auto by_curv = cusps_by_curvature(kiss, d);
    for (Side side : kSides) {
      const OffsetSpec spec(d, side);
      const auto by_deriv = cusps_by_derivative(kiss, spec, seeds);
      const auto params = cusp_params(by_deriv, side);
      const std::string tag = fmt::format("kiss d={} {}", d, to_string(side));

      s.at_most(tag + ": derivative and curvature methods agree",
                set_mismatch(params, cusp_params(by_curv, side)), 1e-8);

      std::vector<double> mirrored;
      for (double u : params) mirrored.push_back(kTwoPi - u);
      std::sort(mirrored.begin(), mirrored.end());
      s.at_most(tag + ": cusp parameters symmetric under u -> 2pi - u", set_mismatch(params, mirrored), 1e-9);

      double cert = 0.0, foot = 0.0, mirror = 0.0;
      for (const auto& p : by_deriv) {
        const double u = p.params.front();
        const double a = cusp_condition(kiss, spec, u - 1e-6);
        const double b = cusp_condition(kiss, spec, u + 1e-6);
        if (a * b > 0) cert = std::max(cert, std::abs(cusp_condition(kiss, spec, u)));
        foot = std::max(foot, std::abs(distance(p.location, kiss.position(u)) - d));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : by_deriv) best = std::min(best, distance(q.location, {p.location.x, -p.location.y}));
        mirror = std::max(mirror, best);
      }
      s.at_most(tag + ": roots bracket a sign change or have |g| < 1e-12", cert, 1e-12);
      s.at_most(tag + ": cusps lie at distance d from their foot", foot, 1e-8);
      s.at_most(tag + ": cusp locations symmetric about the x-axis", mirror, 1e-9);

      // Independent dense scan of g: every bracket must contain a reported root.
      const auto brackets = oracle::sign_scan([&](double u) { return cusp_condition(kiss, spec, u); },
                                              {1e-6, kPi - 1e-6}, 50000);
      const auto brackets2 = oracle::sign_scan([&](double u) { return cusp_condition(kiss, spec, u); },
                                               {kPi + 1e-6, kTwoPi - 1e-6}, 50000);
      std::size_t unmatched = 0;
      for (const auto* set : {&brackets, &brackets2})
        for (const auto& br : *set) {
          const bool hit = std::any_of(params.begin(), params.end(),
                                       [&](double u) { return u >= br.lo - 1e-9 && u <= br.hi + 1e-9; });
          if (!hit) ++unmatched;
        }
      s.equal_count(tag + ": dense sign scan finds no unreported root", unmatched, 0);
    }
  }

  {
    const auto all = cusps_by_curvature(kiss, 1.0);
    std::vector<double> params;
    for (const auto& p : all) params.push_back(p.params.front());
    std::sort(params.begin(), params.end());
    const std::vector<double> reference{0.4710974228, 1.241011647, 1.900581007, 2.670495231};
    double worst = 0.0;
    for (double r : reference) {
      double best = std::numeric_limits<double>::infinity();
      for (double u : params) best = std::min(best, std::abs(u - r));
      worst = std::max(worst, best);
    }
    s.at_most("kiss d=1: reference cusp parameters recovered", worst, 1e-6);

    // Singular parameters of the R=1 envelope, reduced mod 2pi, coincide with
    // offset cusp parameters.
    worst = 0.0;
    for (double r : {-2.670495246, 1.900581007, -0.4710974309, 1.241011647}) {
      const double u = std::fmod(r + kTwoPi, kTwoPi);
      double best = std::numeric_limits<double>::infinity();
      for (double v : params) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    s.at_most("kiss R=1: envelope singular parameters are offset cusps", worst, 1e-7);
  }

  {
    const OffsetSpec spec(1.0 / 3.0, Side::External);
    s.at_most("kiss d=1/3: 1 - d k vanishes at u = pi/2", std::abs(cusp_condition(kiss, spec, kPi / 2)), 1e-15);
    const auto pts = cusps_by_derivative(kiss, spec, seeds);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, std::abs(p.params.front() - kPi / 2));
    s.at_most("kiss d=1/3: tangential root at u = pi/2 found", best, 1e-5);
  }

  {
    const ParamCurve circle = make_circle({0, 0}, 2.0);
    std::size_t n = 0;
    for (double d : {0.5, 1.0, 3.0}) n += cusps_by_derivative(circle, {d, Side::Internal}, 256).size();
    s.equal_count("circle r=2: no cusps on the outward offset", n, 0);
  }

  {
    const ParamCurve ellipse = make_ellipse(5.0, 4.0);
    s.equal_count("ellipse(5,4) d=1: no cusps", cusps_by_curvature(ellipse, 1.0).size(), 0);
    const auto pts = cusps_by_curvature(ellipse, 4.0);
    s.equal_count("ellipse(5,4) d=4: four cusps", pts.size(), 4);
    double sym = 0.0;
    for (const auto& p : pts)
      for (Vec2 m : {Vec2{p.location.x, -p.location.y}, Vec2{-p.location.x, p.location.y}}) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : pts) best = std::min(best, distance(q.location, m));
        sym = std::max(sym, best);
      }
    s.at_most("ellipse(5,4) d=4: cusps symmetric about both axes", sym, 1e-7);
  }
}

// ---------------------------------------------------------------- crunodes

void check_crunodes(std::vector<CheckResult>& out) {
  Suite s("crunodes", out);
  const ParamCurve kiss = make_kiss();
  struct Case {
    double d;
    std::size_t internal, external;
  };
  // Counts established by the proximity oracle.
  constexpr std::array<Case, 4> kCases{{{0.5, 0, 4}, {1.0, 0, 8}, {5.0, 0, 2}, {10.0, 0, 2}}};
  const CrunodeSearchConfig cfg;

  for (const Case& cs : kCases)
    for (Side side : kSides) {
      const OffsetSpec spec(cs.d, side);
      const auto found = find_crunodes(kiss, spec, cfg);
      const std::string tag = fmt::format("kiss d={} {}", cs.d, to_string(side));

      double res = 0.0, sep = std::numeric_limits<double>::infinity(), mirror = 0.0;
      for (const auto& p : found) {
        res = std::max(res, distance(offset_point(kiss, spec, p.params[0]), offset_point(kiss, spec, p.params[1])));
        sep = std::min(sep, kiss.param_separation(p.params[0], p.params[1]));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : found) best = std::min(best, distance(q.location, {p.location.x, -p.location.y}));
        mirror = std::max(mirror, best);
      }
      s.at_most(tag + ": coincidence residual", found.empty() ? 0.0 : res, 1e-9);
      if (!found.empty()) s.at_least(tag + ": parameters distinct", sep, cfg.min_param_separation);
      s.at_most(tag + ": set symmetric about the x-axis", mirror, 1e-7);
      s.equal_count(tag + ": regression count", found.size(), side == Side::Internal ? cs.internal : cs.external);

      oracle::ProximityOptions po;
      po.period = kiss.period();
      const auto clusters = oracle::proximity_scan(oracle::flatten(offset_polyline(kiss, spec, 10000)), po);
      std::size_t unmatched = 0;
      std::vector<bool> used(found.size(), false);
      for (const auto& cl : clusters) {
        bool hit = false;
        for (std::size_t i = 0; i < found.size() && !hit; ++i)
          if (!used[i] && distance(found[i].location, cl.location) < 0.02) used[i] = hit = true;
        if (!hit) ++unmatched;
      }
      unmatched += static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
      s.equal_count(tag + ": one-to-one with the proximity oracle", unmatched, 0);
    }

  {
    std::size_t n = 0;
    const ParamCurve circle = make_circle({0, 0}, 2.0);
    for (double d : {0.5, 1.0, 3.0})
      for (Side side : kSides) n += find_crunodes(circle, {d, side}, cfg).size();
    s.equal_count("circle: offsets are simple", n, 0);
  }

  {
    const auto pts = find_crunodes(make_parabola(), {3.5, Side::External}, cfg);
    s.equal_count("parabola d=3.5 concave side: one crunode", pts.size(), 1);
    if (pts.size() == 1) s.at_most("parabola d=3.5: crunode on the y-axis", std::abs(pts[0].location.x), 1e-8);
  }
}

// ---------------------------------------------------------------- oracle

void check_oracle(std::vector<CheckResult>& out) {
  Suite s("oracle", out);

  {
    // A single member: the unit circle about position(0) = origin.
    const CircleFamily one = constant_radius_family(make_parabola({0.0, 1.0}), 1.0);
    std::vector<Vec2> truth;
    for (int i = 0; i < 4096; ++i) {
      const double a = kTwoPi * i / 4096;
      truth.push_back({std::cos(a), std::sin(a)});
    }
    double previous = 0.0;
    for (int res : {128, 256, 512, 1024}) {
      oracle::RasterGrid grid({-1.5, -1.5, 1.5, 1.5}, res);
      const auto boundary = oracle::raster_envelope_boundary(one, grid, 1);
      const double err = oracle::hausdorff_distance(boundary, truth);
      s.at_most(fmt::format("single circle res {}: boundary within 2 cells", res), err, 2 * grid.cell_width());
      if (previous > 0)
        s.at_least(fmt::format("single circle res {}: error ratio per doubling", res), previous / err, 1.8);
      previous = err;
    }
  }

  {
    const CircleFamily fam = kiss_family(1.0);
    const EnvelopeResult env = envelope_of_circle_family(fam, 4096);
    oracle::RasterGrid grid({-2.2, -2.2, 2.2, 2.2}, 1024);
    const auto boundary = oracle::raster_envelope_boundary(fam, grid, 4096);
    std::size_t outside = 0;
    std::vector<Vec2> env_pts;
    for (const auto& b : env.branches)
      for (const auto& seg : b.segments)
        for (const Vec2& p : seg) {
          env_pts.push_back(p);
          if (!grid.occupied_near(p, 2)) ++outside;
        }
    s.equal_count("kiss family R=1: envelope inside the inflated raster union", outside, 0);

    // Conversely the swept boundary is made of envelope and exceptional arcs.
    double worst = 0.0;
    const double h = grid.cell_width();
    const auto bpts = std::span<const Vec2>(boundary);
    for (const Vec2& q : bpts) {
      const Vec2 one[1] = {q};
      double d = min_set_distance(one, env_pts);
      for (const auto& e : env.exceptional_circles) d = std::min(d, std::abs(distance(q, e.center) - e.radius));
      worst = std::max(worst, d);
    }
    s.at_most("kiss family R=1: raster boundary lies on envelope or exceptional circles", worst, 3 * h);
  }

  {
    const CircleFamily fam = nephroid_family();
    oracle::RasterGrid grid({-4.5, -4.5, 4.5, 4.5}, 1024);
    const auto boundary = oracle::raster_envelope_boundary(fam, grid, 4096);
    double worst = 0.0;
    std::size_t n = 0;
    for (const Vec2& q : boundary)
      if (std::abs(q.x) > 0.5) {
        ++n;
        worst = std::max(worst, normalized_sextic_residual(q));
      }
    s.at_most("nephroid family: outer raster boundary on the sextic", worst, 2 * grid.cell_width(),
              fmt::format("{} boundary cells", n));
  }

  {
    const std::vector<oracle::SampledPoint> pair{{{0.3, 0.4}, 0.0, 0}, {{0.3, 0.4}, 2.0, 0}};
    s.equal_count("proximity: coincident points with distant parameters", oracle::proximity_scan(pair).size(), 1);
    oracle::ProximityOptions po;
    po.period = kTwoPi;
    s.equal_count("proximity: circle samples have no crossings",
                  oracle::proximity_scan(oracle::flatten(sample_curve(make_circle({0, 0}, 1), 2000)), po).size(), 0);
  }
}

constexpr std::array<std::string_view, 6> kSuites{"curves", "offsets", "envelopes", "singularities", "crunodes",
                                                  "oracle"};

}  // namespace

bool VerifyReport::ok() const { return failure_count() == 0; }

std::size_t VerifyReport::failure_count() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["ok"] = ok();
  doc["failures"] = failure_count();
  doc["checks"] = nlohmann::ordered_json::array();
  std::vector<const CheckResult*> order;
  for (const auto& c : checks) order.push_back(&c);
  std::stable_partition(order.begin(), order.end(), [](const CheckResult* c) { return !c->passed; });
  for (const CheckResult* c : order) {
    nlohmann::ordered_json j;
    j["suite"] = c->suite;
    j["name"] = c->name;
    j["passed"] = c->passed;
    j["measured"] = std::isfinite(c->measured) ? nlohmann::ordered_json(c->measured) : nlohmann::ordered_json(nullptr);
    j["bound"] = c->bound;
    j["detail"] = c->detail;
    doc["checks"].push_back(std::move(j));
  }
  return doc.dump(1) + "\n";
}

std::span<const std::string_view> verify_suites() { return kSuites; }

VerifyReport run_verify(std::string_view suite, std::uint64_t seed) {
  const bool all = suite == "all";
  if (!all && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown verify suite '{}'", suite));

  VerifyReport report;
  std::mt19937_64 rng(seed);
  auto want = [&](std::string_view name) { return all || suite == name; };
  if (want("curves")) check_curves(report.checks, rng);
  if (want("offsets")) check_offsets(report.checks, rng);
  if (want("envelopes")) check_envelopes(report.checks, rng);
  if (want("singularities")) check_singularities(report.checks);
  if (want("crunodes")) check_crunodes(report.checks);
  if (want("oracle")) check_oracle(report.checks);
  return report;
}

}  // namespace envoff
