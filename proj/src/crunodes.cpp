#include "envoff/crunodes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

#include "envoff/errors.hpp"

namespace envoff {

namespace {

struct Sample {
  Vec2 p;
  double u;
  int branch;  // 0 = requested side, 1 = opposite side
};

std::int64_t cell_key(std::int64_t ix, std::int64_t iy) {
  return (ix << 32) ^ (iy & 0xffffffff);
}

class BranchPair {
 public:
  BranchPair(const ParamCurve& c, const OffsetSpec& a, const OffsetSpec& b, double exclusion)
      : c_(c), a_(a), b_(b), exclusion_(exclusion) {}

  /// Maps u back into the domain (closed curves wrap) and rejects parameters
  /// inside the exclusion zone of a singular parameter.
  std::optional<double> admissible(double u) const {
    const Interval& dom = c_.domain();
    if (c_.closed()) {
      const double p = c_.period();
      u = dom.lo + std::fmod(std::fmod(u - dom.lo, p) + p, p);
    }
    if (!dom.contains(u)) return std::nullopt;
    for (double s : c_.singular_params())
      if (std::abs(u - s) <= exclusion_) return std::nullopt;
    if (!c_.is_regular(u)) return std::nullopt;
    return u;
  }

  Vec2 residual(double s, double t) const { return offset_point(c_, a_, s) - offset_point(c_, b_, t); }

  struct Solution {
    double s, t, residual, sine;
  };

  double crossing_sine(double s, double t) const {
    const Vec2 vs = offset_velocity(c_, a_, s);
    const Vec2 vt = offset_velocity(c_, b_, t);
    const double scale = norm(vs) * norm(vt);
    return scale > 0.0 ? std::abs(cross(vs, vt)) / scale : 0.0;
  }

  std::optional<Solution> newton(double s, double t, double tol, int max_iters) const {
    Vec2 f = residual(s, t);
    double fn = std::max(std::abs(f.x), std::abs(f.y));
    for (int it = 0; it < max_iters && fn >= tol; ++it) {
      const Vec2 js = offset_velocity(c_, a_, s);
      const Vec2 jt = -offset_velocity(c_, b_, t);
      const double det = cross(js, jt);
      const double scale = norm(js) * norm(jt);
      if (!(std::abs(det) > 1e-12 * scale) || scale == 0.0) return std::nullopt;
      // [js jt] (ds, dt)^T = -f
      const double ds = -cross(f, jt) / det;
      const double dt = -cross(js, f) / det;

      bool improved = false;
      for (double lambda = 1.0; lambda > 1e-6; lambda *= 0.5) {
        const auto ns = admissible(s + lambda * ds);
        const auto nt = admissible(t + lambda * dt);
        if (!ns || !nt) continue;
        const Vec2 nf = residual(*ns, *nt);
        const double nfn = std::max(std::abs(nf.x), std::abs(nf.y));
        if (nfn < fn) {
          s = *ns;
          t = *nt;
          f = nf;
          fn = nfn;
          improved = true;
          break;
        }
      }
      if (!improved) return std::nullopt;
    }
    if (!(fn < tol)) return std::nullopt;
    return Solution{s, t, fn, crossing_sine(s, t)};
  }

 private:
  const ParamCurve& c_;
  OffsetSpec a_;
  OffsetSpec b_;
  double exclusion_;
};

}  // namespace

void CrunodeSearchConfig::validate() const {
  if (grid_n < 16) throw Error(ErrorCode::InvalidArgument, "grid_n must be at least 16");
  if (!(newton_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "newton_tol must be positive");
  if (max_newton_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_newton_iters must be positive");
  if (!(min_param_separation > 0.0))
    throw Error(ErrorCode::InvalidArgument, "min_param_separation must be positive");
  if (!(exclusion_radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "exclusion_radius must be >= 0");
  if (!(dedup_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "dedup_tolerance must be positive");
  if (!(min_crossing_sine >= 0.0 && min_crossing_sine < 1.0))
    throw Error(ErrorCode::InvalidArgument, "min_crossing_sine must lie in [0, 1)");
  if (std::isnan(cell_size)) throw Error(ErrorCode::InvalidArgument, "cell_size must be a number");
}

std::vector<SingularPoint> find_crunodes(const ParamCurve& c, const OffsetSpec& spec,
                                         const CrunodeSearchConfig& cfg) {
  cfg.validate();
  const auto parts = regular_subintervals(c, cfg.exclusion_radius);
  const auto counts = detail::distribute_samples(parts, cfg.grid_n);
  const OffsetSpec other(spec.distance, opposite(spec.side));

  // (1) dense samples
  std::vector<Sample> samples;
  double spacing_sum = 0.0;
  std::size_t spacing_n = 0;
  double param_step = 0.0;
  const int n_branches = cfg.cross_branch ? 2 : 1;
  for (int b = 0; b < n_branches; ++b) {
    const OffsetSpec& s = b == 0 ? spec : other;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto us = detail::uniform_params(parts[i], counts[i]);
      param_step = std::max(param_step, us[1] - us[0]);
      for (std::size_t j = 0; j < us.size(); ++j) {
        const Vec2 p = offset_point(c, s, us[j]);
        if (j > 0) {
          spacing_sum += distance(p, samples.back().p);
          ++spacing_n;
        }
        samples.push_back({p, us[j], b});
      }
    }
  }

  // (2) spatial hash
  const double cell = cfg.cell_size > 0.0 ? cfg.cell_size : 2.0 * spacing_sum / static_cast<double>(spacing_n);
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  auto cell_of = [&](Vec2 p) {
    return std::pair{static_cast<std::int64_t>(std::floor(p.x / cell)),
                     static_cast<std::int64_t>(std::floor(p.y / cell))};
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [ix, iy] = cell_of(samples[i].p);
    grid[cell_key(ix, iy)].push_back(i);
  }

  // (3) seeds from neighbouring samples with distant parameters, thinned to
  // one per coarse parameter bin so a crossing is not solved thousands of times
  const double bin = 4.0 * param_step;
  std::set<std::tuple<int, std::int64_t, std::int64_t>> seen_bins;
  std::vector<std::pair<std::size_t, std::size_t>> seeds;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [ix, iy] = cell_of(samples[i].p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = grid.find(cell_key(ix + dx, iy + dy));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          const Sample& a = samples[i];
          const Sample& b = samples[j];
          if (a.branch == b.branch) {
            if (a.branch != 0) continue;
            if (c.param_separation(a.u, b.u) <= cfg.min_param_separation) continue;
          }
          double ua = a.branch <= b.branch ? a.u : b.u;
          double ub = a.branch <= b.branch ? b.u : a.u;
          if (a.branch == b.branch && ua > ub) std::swap(ua, ub);
          const auto key = std::tuple{a.branch + b.branch, static_cast<std::int64_t>(std::floor(ua / bin)),
                                      static_cast<std::int64_t>(std::floor(ub / bin))};
          if (!seen_bins.insert(key).second) continue;
          seeds.emplace_back(a.branch <= b.branch ? i : j, a.branch <= b.branch ? j : i);
        }
      }
    }
  }

  // (4) Newton refinement, (5) deduplication
  std::vector<SingularPoint> out;
  for (const auto& [i, j] : seeds) {
    const bool cross = samples[i].branch != samples[j].branch;
    const BranchPair sys(c, spec, cross ? other : spec, cfg.exclusion_radius);
    const auto sol = sys.newton(samples[i].u, samples[j].u, cfg.newton_tol, cfg.max_newton_iters);
    if (!sol || sol->sine < cfg.min_crossing_sine) continue;
    double s = sol->s, t = sol->t;
    if (!cross) {
      if (c.param_separation(s, t) <= cfg.min_param_separation) continue;
      if (s > t) std::swap(s, t);
    }
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const SingularPoint& p) {
      return p.cross_branch == cross && c.param_separation(p.params[0], s) < cfg.dedup_tolerance &&
             c.param_separation(p.params[1], t) < cfg.dedup_tolerance;
    });
    if (duplicate) continue;

    SingularPoint p;
    p.kind = SingularKind::Crunode;
    p.method = DetectionMethod::CrunodeSystem;
    p.side = spec.side;
    p.params = {s, t};
    p.location = offset_point(c, spec, s);
    p.residual = sol->residual;
    p.offset_distance = spec.distance;
    p.cross_branch = cross;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
    if (a.cross_branch != b.cross_branch) return !a.cross_branch;
    return a.params < b.params;
  });
  return out;
}

}  // namespace envoff
