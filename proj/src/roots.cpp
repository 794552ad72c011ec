#include "roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "envoff/offsets.hpp"

namespace envoff::detail {

std::vector<ScalarRoot> grid_roots(const std::function<double(double)>& f, Interval iv, int n,
                                   double tol, double dedup, double pole_guard) {
  const auto us = uniform_params(iv, std::max(n, 3));
  std::vector<double> fs(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) fs[i] = f(us[i]);

  std::vector<ScalarRoot> found;
  auto keep = [&](double u, bool bracketed) {
    const double r = std::abs(f(u));
    if (r <= pole_guard) found.push_back({u, r, bracketed});
  };

  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    if (fs[i] == 0.0) {
      keep(us[i], true);
      continue;
    }
    if (fs[i] * fs[i + 1] < 0.0) {
      std::uintmax_t iters = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(
          f, us[i], us[i + 1], fs[i], fs[i + 1], boost::math::tools::eps_tolerance<double>(), iters);
      keep(std::abs(f(a)) <= std::abs(f(b)) ? a : b, true);
    }
  }
  if (fs.back() == 0.0) keep(us.back(), true);

  // Touching roots: |f| dips to zero without changing sign.
  for (std::size_t i = 1; i + 1 < us.size(); ++i) {
    const double m = std::abs(fs[i]);
    if (m > std::abs(fs[i - 1]) || m > std::abs(fs[i + 1])) continue;
    if (fs[i - 1] * fs[i] <= 0.0 || fs[i] * fs[i + 1] <= 0.0) continue;
    const auto [u, fu] = boost::math::tools::brent_find_minima(
        [&](double x) { return std::abs(f(x)); }, us[i - 1], us[i + 1], 52);
    if (fu < tol) found.push_back({u, fu, false});
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.u < b.u; });
  std::vector<ScalarRoot> out;
  for (const auto& r : found) {
    if (!out.empty() && std::abs(r.u - out.back().u) < dedup) {
      if (r.residual < out.back().residual) out.back() = r;
      continue;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace envoff::detail
