#pragma once

#include <functional>
#include <vector>

#include "envoff/curves.hpp"

namespace envoff::detail {

struct ScalarRoot {
  double u;
  double residual;  ///< |f(u)|
  bool bracketed;   ///< sign change certified on the refined bracket
};

/// Grid-seeded 1D root finding on [iv.lo, iv.hi].
///
/// Sign changes between grid nodes are refined with TOMS 748. Interior grid
/// minima of |f| without a sign change are polished with Brent minimisation
/// and kept only when |f| < tol. Roots closer than `dedup` are merged. A
/// "root" whose residual exceeds `pole_guard` is a pole crossing and dropped.
std::vector<ScalarRoot> grid_roots(const std::function<double(double)>& f, Interval iv, int n,
                                   double tol, double dedup, double pole_guard = 1e-6);

}  // namespace envoff::detail
