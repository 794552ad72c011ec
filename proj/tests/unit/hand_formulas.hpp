#pragma once

#include <cmath>

// Closed forms derived by hand for the kiss curve (cos u, sin^3 u). They
// share no code with the library and serve as oracles.
namespace hand {

inline double kiss_curvature(double u) {
  const double s = std::sin(u), c = std::cos(u);
  return 3.0 * (s * s - c * c) / (std::abs(s) * std::pow(1.0 + 9.0 * s * s * c * c, 1.5));
}

/// Offset point with the normal (y', -x') / |r'| scaled by `sign * d`.
inline void kiss_offset(double u, double d, double sign, double& x, double& y) {
  const double s = std::sin(u), c = std::cos(u);
  const double dx = -s, dy = 3.0 * s * s * c;
  const double len = std::hypot(dx, dy);
  x = c + sign * d * dy / len;
  y = s * s * s - sign * d * dx / len;
}

/// Curvature of a sampled curve from three points (circumscribed circle).
inline double three_point_curvature(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double a = std::hypot(x1 - x0, y1 - y0);
  const double b = std::hypot(x2 - x1, y2 - y1);
  const double c = std::hypot(x2 - x0, y2 - y0);
  const double cross = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0);
  return 2.0 * cross / (a * b * c);
}

}  // namespace hand
