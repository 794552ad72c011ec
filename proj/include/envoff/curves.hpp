#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "envoff/vec2.hpp"

namespace envoff {

/// Below this speed |d1| a parameter is treated as singular.
inline constexpr double kRegularityTol = 1e-10;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double u) const { return u >= lo && u <= hi; }
};

/// Selects one of the two unit normals of a regular point.
///
/// Internal is (y', -x') / |r'| and external is (-y', x') / |r'|. For a
/// counter-clockwise closed curve the internal normal points away from the
/// enclosed region; the names follow the kiss-curve convention, not intuition.
enum class Side { Internal, External };

/// +1 for internal, -1 for external. The offset speed factor is 1 + sign*d*k.
constexpr double side_sign(Side s) { return s == Side::Internal ? 1.0 : -1.0; }
constexpr Side opposite(Side s) { return s == Side::Internal ? Side::External : Side::Internal; }
const char* to_string(Side s) noexcept;

/// A parametric plane curve given by closed-form evaluators.
///
/// Derivatives are supplied by the constructor of the curve, not computed.
/// Copies share the same immutable definition.
class ParamCurve {
 public:
  using Evaluator = std::function<Vec2(double)>;

  struct Definition {
    std::string name;
    Evaluator position;
    Evaluator d1;
    Evaluator d2;
    Interval domain;
    /// Parameters in the domain where d1 vanishes.
    std::vector<double> singular_params;
    /// position(domain.lo) == position(domain.hi) and the parametrization
    /// wraps around with period domain.length().
    bool closed = false;
  };

  explicit ParamCurve(Definition def);

  Vec2 position(double u) const { return def_->position(u); }
  Vec2 d1(double u) const { return def_->d1(u); }
  Vec2 d2(double u) const { return def_->d2(u); }

  const Interval& domain() const { return def_->domain; }
  std::span<const double> singular_params() const { return def_->singular_params; }
  const std::string& name() const { return def_->name; }
  bool closed() const { return def_->closed; }
  double period() const { return def_->domain.length(); }

  /// False at declared singular parameters and wherever |d1| < kRegularityTol.
  bool is_regular(double u) const;

  /// Parameter distance, taken modulo the period for closed curves.
  double param_separation(double a, double b) const;

 private:
  std::shared_ptr<const Definition> def_;
};

/// (cos u, sin^3 u) on [0, 2pi]; cusps at u = 0, pi, 2pi.
ParamCurve make_kiss();
ParamCurve make_circle(Vec2 center, double radius);
ParamCurve make_ellipse(double a, double b);
/// (t, t^2/4), i.e. 4y = x^2.
ParamCurve make_parabola(Interval domain = {-6.0, 6.0});

/// Builds a built-in curve from its name and numeric parameters:
///   kiss                      (no parameters)
///   circle   cx cy r          (defaults 0 0 1)
///   ellipse  a b              (defaults 5 4)
///   parabola tmin tmax        (defaults -6 6)
ParamCurve make_named_curve(std::string_view name, std::span<const double> params = {});

/// Same trace, opposite orientation: u -> lo + hi - u.
ParamCurve reversed(const ParamCurve& c);

/// Signed curvature (x'y'' - x''y') / (x'^2 + y'^2)^{3/2}.
/// Throws ErrorCode::SingularParameter at singular parameters.
double curvature(const ParamCurve& c, double u);

Vec2 unit_tangent(const ParamCurve& c, double u);
Vec2 unit_normal(const ParamCurve& c, double u, Side side);

/// The domain minus open neighbourhoods of radius `exclusion` around every
/// declared singular parameter. Throws ErrorCode::DegenerateDomain when
/// nothing remains.
std::vector<Interval> regular_subintervals(const ParamCurve& c, double exclusion);

}  // namespace envoff
