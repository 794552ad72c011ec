#include "envoff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "envoff/errors.hpp"

namespace envoff::oracle {

RasterGrid::RasterGrid(Rect bounds, int resolution) : bounds_(bounds), res_(resolution) {
  if (resolution < 64)
    throw Error(ErrorCode::InvalidArgument, fmt::format("raster resolution must be >= 64, got {}", resolution));
  if (!(bounds.width() > 0.0) || !(bounds.height() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "raster bounds are empty");
  occ_.assign(static_cast<std::size_t>(res_) * static_cast<std::size_t>(res_), 0);
}

bool RasterGrid::occupied(int i, int j) const {
  if (i < 0 || j < 0 || i >= res_ || j >= res_) return false;
  return occ_[index(i, j)] != 0;
}

void RasterGrid::clear() { std::fill(occ_.begin(), occ_.end(), 0); }

std::size_t RasterGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(occ_.begin(), occ_.end(), 1));
}

Vec2 RasterGrid::cell_center(int i, int j) const {
  return {bounds_.xmin + (i + 0.5) * cell_width(), bounds_.ymin + (j + 0.5) * cell_height()};
}

bool RasterGrid::occupied_near(Vec2 p, int cells) const {
  const int ci = static_cast<int>(std::floor((p.x - bounds_.xmin) / cell_width()));
  const int cj = static_cast<int>(std::floor((p.y - bounds_.ymin) / cell_height()));
  for (int j = cj - cells; j <= cj + cells; ++j)
    for (int i = ci - cells; i <= ci + cells; ++i)
      if (occupied(i, j)) return true;
  return false;
}

std::vector<Vec2> raster_envelope_boundary(const CircleFamily& fam, RasterGrid& grid, int n_family_samples) {
  if (n_family_samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one family member");
  const Interval dom = fam.center_curve.domain();
  const Rect& b = grid.bounds();
  const double cw = grid.cell_width(), ch = grid.cell_height();
  const int res = grid.resolution();

  for (int k = 0; k < n_family_samples; ++k) {
    const double u = n_family_samples == 1 ? dom.lo : dom.lo + dom.length() * k / (n_family_samples - 1);
    const Vec2 ctr = fam.center_curve.position(u);
    const double r = fam.radius(u);
    if (!b.contains(ctr - Vec2{r, r}) || !b.contains(ctr + Vec2{r, r}))
      throw Error(ErrorCode::Bounds,
                  fmt::format("circle at ({}, {}) radius {} leaves the raster bounds", ctr.x, ctr.y, r));
    // scanline fill of cell centres inside the circle
    const int j0 = std::max(0, static_cast<int>(std::ceil((ctr.y - r - b.ymin) / ch - 0.5)));
    const int j1 = std::min(res - 1, static_cast<int>(std::floor((ctr.y + r - b.ymin) / ch - 0.5)));
    for (int j = j0; j <= j1; ++j) {
      const double dy = b.ymin + (j + 0.5) * ch - ctr.y;
      const double h2 = r * r - dy * dy;
      if (h2 < 0.0) continue;
      const double half = std::sqrt(h2);
      const int i0 = std::max(0, static_cast<int>(std::ceil((ctr.x - half - b.xmin) / cw - 0.5)));
      const int i1 = std::min(res - 1, static_cast<int>(std::floor((ctr.x + half - b.xmin) / cw - 0.5)));
      for (int i = i0; i <= i1; ++i) grid.set(i, j);
    }
  }

  std::vector<Vec2> boundary;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      if (!grid.occupied(i, j)) continue;
      if (!grid.occupied(i - 1, j) || !grid.occupied(i + 1, j) || !grid.occupied(i, j - 1) ||
          !grid.occupied(i, j + 1))
        boundary.push_back(grid.cell_center(i, j));
    }
  }
  return boundary;
}

std::vector<SampledPoint> flatten(const Polyline& line) {
  std::vector<SampledPoint> out;
  out.reserve(line.point_count());
  for (std::size_t s = 0; s < line.segments.size(); ++s)
    for (std::size_t i = 0; i < line.segments[s].size(); ++i)
      out.push_back({line.segments[s][i], line.params[s][i], static_cast<int>(s)});
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<ProximityCluster> proximity_scan(std::span<const SampledPoint> pts, const ProximityOptions& opts) {
  const std::size_t n = pts.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "proximity scan needs at least two points");

  auto same_seg = [&](std::size_t a, std::size_t b) { return pts[a].segment == pts[b].segment; };
  std::vector<double> spacing(n, 0.0);
  std::vector<Vec2> dir(n, Vec2{});
  std::vector<bool> has_dir(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && same_seg(i, i - 1))
      spacing[i] = std::max(spacing[i], distance(pts[i].position, pts[i - 1].position));
    if (i + 1 < n && same_seg(i, i + 1))
      spacing[i] = std::max(spacing[i], distance(pts[i].position, pts[i + 1].position));
    // one-sided edge direction; a centred difference at a cusp tip is normal to the tangent
    Vec2 e{};
    if (i + 1 < n && same_seg(i, i + 1))
      e = pts[i + 1].position - pts[i].position;
    else if (i > 0 && same_seg(i, i - 1))
      e = pts[i].position - pts[i - 1].position;
    if (norm(e) > 0.0) {
      dir[i] = e / norm(e);
      has_dir[i] = true;
    }
  }

  auto separation = [&](double a, double b) {
    double s = std::abs(a - b);
    if (opts.period > 0.0) {
      s = std::fmod(s, opts.period);
      s = std::min(s, opts.period - s);
    }
    return s;
  };

  struct Pair {
    std::size_t i, j;
    double dist;
  };
  std::vector<Pair> flagged;
  std::unordered_map<std::size_t, std::size_t> by_key;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 dv = pts[i].position - pts[j].position;
      const double thr = opts.threshold_factor * std::max(spacing[i], spacing[j]);
      const double d2 = dot(dv, dv);
      if (d2 > thr * thr) continue;
      const double d = std::sqrt(d2);
      if (separation(pts[i].param, pts[j].param) <= opts.min_param_separation) continue;
      if (has_dir[i] && has_dir[j] && std::abs(cross(dir[i], dir[j])) < opts.min_crossing_sine) continue;
      by_key.emplace(i * n + j, flagged.size());
      flagged.push_back({i, j, d});
    }
  }

  UnionFind uf(flagged.size());
  for (std::size_t k = 0; k < flagged.size(); ++k) {
    const auto [i, j, d] = flagged[k];
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        auto ii = static_cast<std::ptrdiff_t>(i) + a;
        auto jj = static_cast<std::ptrdiff_t>(j) + b;
        const auto sn = static_cast<std::ptrdiff_t>(n);
        // closed curves: the sample list wraps around at the seam
        if (opts.period > 0.0) {
          ii = (ii + sn) % sn;
          jj = (jj + sn) % sn;
          if (ii > jj) std::swap(ii, jj);
        }
        if (ii < 0 || jj < 0 || ii >= jj || jj >= sn) continue;
        const auto it = by_key.find(static_cast<std::size_t>(ii) * n + static_cast<std::size_t>(jj));
        if (it != by_key.end()) uf.join(k, it->second);
      }
    }
  }

  std::unordered_map<std::size_t, std::size_t> root_to_cluster;
  std::vector<ProximityCluster> clusters;
  for (std::size_t k = 0; k < flagged.size(); ++k) {
    const auto [i, j, d] = flagged[k];
    const std::size_t root = uf.find(k);
    auto [it, inserted] = root_to_cluster.emplace(root, clusters.size());
    if (inserted) clusters.push_back({0.0, 0.0, {}, std::numeric_limits<double>::infinity(), 0});
    ProximityCluster& cl = clusters[it->second];
    ++cl.pair_count;
    if (d < cl.min_distance) {
      cl.min_distance = d;
      cl.param_a = std::min(pts[i].param, pts[j].param);
      cl.param_b = std::max(pts[i].param, pts[j].param);
      cl.location = 0.5 * (pts[i].position + pts[j].position);
    }
  }
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    return std::pair{a.param_a, a.param_b} < std::pair{b.param_a, b.param_b};
  });
  return clusters;
}

std::vector<Bracket> sign_scan(const std::function<double(double)>& f, Interval iv, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sign scan needs at least two samples");
  std::vector<Bracket> out;
  const double h = iv.length() / (n - 1);
  double u0 = iv.lo, f0 = f(u0);
  for (int k = 1; k < n; ++k) {
    const double u1 = k == n - 1 ? iv.hi : iv.lo + h * k;
    const double f1 = f(u1);
    if (f0 == 0.0 || f0 * f1 < 0.0) out.push_back({u0, u1});
    u0 = u1;
    f0 = f1;
  }
  if (f0 == 0.0) out.push_back({u0, u0});
  return out;
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  auto directed = [](std::span<const Vec2> from, std::span<const Vec2> to) {
    double worst = 0.0;
    for (const Vec2& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& q : to) best = std::min(best, dot(p - q, p - q));
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace envoff::oracle
