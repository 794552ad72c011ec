#pragma once

#include <functional>
#include <string>
#include <vector>

#include "envoff/curves.hpp"
#include "envoff/offsets.hpp"

namespace envoff {

/// One-parameter family of circles F(x, y, u) = |P - c(u)|^2 - r(u)^2.
struct CircleFamily {
  std::string name;
  ParamCurve center_curve;
  std::function<double(double)> radius;
  std::function<double(double)> radius_d1;
};

/// Circles of constant radius R centred on the kiss curve.
CircleFamily kiss_family(double R);
/// Circles centred on the circle of radius 2 about the origin and tangent to
/// the y-axis, radius |2 cos u|. The envelope is a nephroid plus a segment of
/// the y-axis.
CircleFamily nephroid_family();
CircleFamily constant_radius_family(const ParamCurve& center, double R);

struct FamilyResidual {
  double value;    ///< F(x, y, u)
  double d_param;  ///< dF/du (x, y, u)
};

FamilyResidual family_residual(const CircleFamily& fam, Vec2 p, double u);

/// A whole family member that solves the envelope system identically:
/// both c'(u) and r'(u) vanish at `param`.
struct ExceptionalCircle {
  double param;
  Vec2 center;
  double radius;
};

struct EnvelopeResult {
  std::vector<Polyline> branches;
  std::vector<ExceptionalCircle> exceptional_circles;
};

/// Solves F = 0, dF/du = 0 per sampled parameter.
///
/// With T the unit tangent and N = perp(T) of the centre curve, the solutions
/// are c + r (a T +/- sqrt(1 - a^2) N) where a = -r'/|c'|. Parameters with
/// |a| > 1 have no real point and split the branches. Branch 0 takes the +N
/// root unless nearest-point continuity says otherwise.
EnvelopeResult envelope_of_circle_family(const CircleFamily& fam, int n_samples,
                                         const SamplingOptions& opts = {});

/// The two closed-form envelope components of the kiss family (branch 1 or
/// 2), evaluated exactly as derived by elimination.
Vec2 kiss_envelope_closed_form(double R, double u, int branch);

/// Envelope of the lines x + k y = k^2: the points (-k^2, 2k), which lie on
/// y^2 + 4x = 0.
Polyline envelope_of_line_family(int n_samples, Interval k_range = {-3.0, 3.0});

}  // namespace envoff
