#include "envoff/envoff.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "envoff/crunodes.hpp"
#include "envoff/envelopes.hpp"
#include "envoff/errors.hpp"
#include "envoff/oracle.hpp"
#include "envoff/render.hpp"
#include "envoff/serialize.hpp"
#include "envoff/singularities.hpp"
#include "envoff/verify.hpp"

struct envoff_curve {
  envoff::ParamCurve curve;
};

struct envoff_polyline {
  envoff::Polyline line;
};

struct envoff_family {
  envoff::CircleFamily family;
};

struct envoff_envelope {
  envoff::EnvelopeResult result;
  std::vector<envoff_polyline> branches;
};

struct envoff_points {
  std::vector<envoff::SingularPoint> points;
};

struct envoff_plot {
  envoff::render::PlotSpec spec;
};

namespace {

thread_local std::string g_last_error;

envoff_status status_of(envoff::ErrorCode code) { return static_cast<envoff_status>(code); }

envoff_status fail(envoff_status status, const char* what) {
  g_last_error = what;
  return status;
}

/// Runs `body`, mapping exceptions to status codes and the thread's message.
template <typename F>
envoff_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ENVOFF_OK;
  } catch (const envoff::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ENVOFF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ENVOFF_INTERNAL, e.what());
  } catch (...) {
    return fail(ENVOFF_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw envoff::Error(envoff::ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

envoff::Side side_of(envoff_side s) {
  require(s == ENVOFF_INTERNAL_SIDE || s == ENVOFF_EXTERNAL_SIDE, "side must be internal or external");
  return s == ENVOFF_INTERNAL_SIDE ? envoff::Side::Internal : envoff::Side::External;
}

envoff_side c_side(envoff::Side s) { return s == envoff::Side::Internal ? ENVOFF_INTERNAL_SIDE : ENVOFF_EXTERNAL_SIDE; }

envoff_vec2 c_vec(envoff::Vec2 v) { return {v.x, v.y}; }
envoff::Vec2 vec(envoff_vec2 v) { return {v.x, v.y}; }

envoff::render::Style style(const char* color, double width, const char* dash) {
  envoff::render::Style s;
  if (color != nullptr) s.color = color;
  if (width > 0) s.stroke_width = width;
  if (dash != nullptr) s.dash = dash;
  return s;
}

template <typename T>
envoff_status make_curve(T&& factory, envoff_curve** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new envoff_curve{factory()};
  });
}

}  // namespace

extern "C" {

const char* envoff_version(void) { return ENVOFF_VERSION; }

const char* envoff_status_string(envoff_status status) {
  switch (status) {
    case ENVOFF_OK:
      return "ok";
    case ENVOFF_INTERNAL:
      return "internal error";
    default:
      if (status >= ENVOFF_INVALID_ARGUMENT && status <= ENVOFF_EMPTY_PLOT)
        return envoff::to_string(static_cast<envoff::ErrorCode>(status));
      return "unknown status";
  }
}

const char* envoff_last_error(void) { return g_last_error.c_str(); }

void envoff_string_free(char* s) { std::free(s); }

// ------------------------------------------------------------ curves

envoff_status envoff_curve_kiss(envoff_curve** out) {
  return make_curve([] { return envoff::make_kiss(); }, out);
}

envoff_status envoff_curve_circle(envoff_vec2 center, double radius, envoff_curve** out) {
  return make_curve([&] { return envoff::make_circle(vec(center), radius); }, out);
}

envoff_status envoff_curve_ellipse(double a, double b, envoff_curve** out) {
  return make_curve([&] { return envoff::make_ellipse(a, b); }, out);
}

envoff_status envoff_curve_parabola(double tmin, double tmax, envoff_curve** out) {
  return make_curve([&] { return envoff::make_parabola({tmin, tmax}); }, out);
}

envoff_status envoff_curve_by_name(const char* name, const double* params, size_t n_params, envoff_curve** out) {
  return make_curve(
      [&] {
        require(name != nullptr, "curve name is null");
        require(params != nullptr || n_params == 0, "parameter array is null");
        return envoff::make_named_curve(name, {params, n_params});
      },
      out);
}

void envoff_curve_free(envoff_curve* c) { delete c; }

const char* envoff_curve_name(const envoff_curve* c) { return c != nullptr ? c->curve.name().c_str() : ""; }

envoff_status envoff_curve_domain(const envoff_curve* c, double* lo, double* hi) {
  return guard([&] {
    require(c != nullptr && lo != nullptr && hi != nullptr, "null argument");
    *lo = c->curve.domain().lo;
    *hi = c->curve.domain().hi;
  });
}

envoff_status envoff_curve_eval(const envoff_curve* c, double u, envoff_vec2* pos, envoff_vec2* d1, envoff_vec2* d2) {
  return guard([&] {
    require(c != nullptr, "curve is null");
    if (pos != nullptr) *pos = c_vec(c->curve.position(u));
    if (d1 != nullptr) *d1 = c_vec(c->curve.d1(u));
    if (d2 != nullptr) *d2 = c_vec(c->curve.d2(u));
  });
}

envoff_status envoff_curve_curvature(const envoff_curve* c, double u, double* out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = envoff::curvature(c->curve, u);
  });
}

envoff_status envoff_curve_unit_normal(const envoff_curve* c, double u, envoff_side side, envoff_vec2* out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = c_vec(envoff::unit_normal(c->curve, u, side_of(side)));
  });
}

// ------------------------------------------------------------ offsets

envoff_status envoff_offset_point(const envoff_curve* c, double d, envoff_side side, double u, envoff_vec2* out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = c_vec(envoff::offset_point(c->curve, {d, side_of(side)}, u));
  });
}

envoff_status envoff_offset_polyline(const envoff_curve* c, double d, envoff_side side, int n_samples,
                                     double exclusion_radius, envoff_polyline** out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    envoff::SamplingOptions opts;
    if (exclusion_radius > 0) opts.exclusion_radius = exclusion_radius;
    *out = new envoff_polyline{envoff::offset_polyline(c->curve, {d, side_of(side)}, n_samples, opts)};
  });
}

envoff_status envoff_curve_polyline(const envoff_curve* c, int n_samples, envoff_polyline** out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = new envoff_polyline{envoff::sample_curve(c->curve, n_samples)};
  });
}

void envoff_polyline_free(envoff_polyline* p) { delete p; }

size_t envoff_polyline_segment_count(const envoff_polyline* p) { return p != nullptr ? p->line.segments.size() : 0; }

size_t envoff_polyline_segment_size(const envoff_polyline* p, size_t segment) {
  if (p == nullptr || segment >= p->line.segments.size()) return 0;
  return p->line.segments[segment].size();
}

envoff_status envoff_polyline_segment(const envoff_polyline* p, size_t segment, envoff_vec2* points, double* params,
                                      size_t capacity) {
  return guard([&] {
    require(p != nullptr, "polyline is null");
    if (segment >= p->line.segments.size())
      throw envoff::Error(envoff::ErrorCode::InvalidArgument, "segment index out of range");
    const auto& seg = p->line.segments[segment];
    const auto& us = p->line.params[segment];
    const size_t n = std::min(capacity, seg.size());
    for (size_t i = 0; i < n; ++i) {
      if (points != nullptr) points[i] = c_vec(seg[i]);
      if (params != nullptr) params[i] = us[i];
    }
  });
}

envoff_status envoff_polyline_serialize(const envoff_polyline* p, envoff_format fmt, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    *out = dup_string(fmt == ENVOFF_JSON ? envoff::io::to_json(p->line) : envoff::io::to_csv(p->line));
  });
}

// ------------------------------------------------------------ envelopes

envoff_status envoff_family_kiss(double R, envoff_family** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new envoff_family{envoff::kiss_family(R)};
  });
}

envoff_status envoff_family_nephroid(envoff_family** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new envoff_family{envoff::nephroid_family()};
  });
}

envoff_status envoff_family_constant(const envoff_curve* center, double R, envoff_family** out) {
  return guard([&] {
    require(center != nullptr && out != nullptr, "null argument");
    *out = new envoff_family{envoff::constant_radius_family(center->curve, R)};
  });
}

void envoff_family_free(envoff_family* f) { delete f; }

envoff_status envoff_family_residual(const envoff_family* f, envoff_vec2 p, double u, double* value,
                                     double* d_param) {
  return guard([&] {
    require(f != nullptr, "family is null");
    const auto r = envoff::family_residual(f->family, vec(p), u);
    if (value != nullptr) *value = r.value;
    if (d_param != nullptr) *d_param = r.d_param;
  });
}

envoff_status envoff_envelope_compute(const envoff_family* f, int n_samples, envoff_envelope** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "null argument");
    auto* e = new envoff_envelope{envoff::envelope_of_circle_family(f->family, n_samples), {}};
    for (const auto& b : e->result.branches) e->branches.push_back({b});
    *out = e;
  });
}

void envoff_envelope_free(envoff_envelope* e) { delete e; }

size_t envoff_envelope_branch_count(const envoff_envelope* e) { return e != nullptr ? e->branches.size() : 0; }

const envoff_polyline* envoff_envelope_branch(const envoff_envelope* e, size_t branch) {
  if (e == nullptr || branch >= e->branches.size()) return nullptr;
  return &e->branches[branch];
}

size_t envoff_envelope_circle_count(const envoff_envelope* e) {
  return e != nullptr ? e->result.exceptional_circles.size() : 0;
}

envoff_status envoff_envelope_circle(const envoff_envelope* e, size_t index, double* param, envoff_vec2* center,
                                     double* radius) {
  return guard([&] {
    require(e != nullptr, "envelope is null");
    require(index < e->result.exceptional_circles.size(), "circle index out of range");
    const auto& c = e->result.exceptional_circles[index];
    if (param != nullptr) *param = c.param;
    if (center != nullptr) *center = c_vec(c.center);
    if (radius != nullptr) *radius = c.radius;
  });
}

envoff_status envoff_envelope_serialize(const envoff_envelope* e, envoff_format fmt, char** out) {
  return guard([&] {
    require(e != nullptr && out != nullptr, "null argument");
    *out = dup_string(fmt == ENVOFF_JSON ? envoff::io::to_json(e->result) : envoff::io::to_csv(e->result));
  });
}

envoff_status envoff_kiss_envelope_closed_form(double R, double u, int branch, envoff_vec2* out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = c_vec(envoff::kiss_envelope_closed_form(R, u, branch));
  });
}

envoff_status envoff_line_family_envelope(int n_samples, double k_min, double k_max, envoff_polyline** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new envoff_polyline{envoff::envelope_of_line_family(n_samples, {k_min, k_max})};
  });
}

// ------------------------------------------------------------ singular points

envoff_crunode_config envoff_crunode_config_default(void) {
  const envoff::CrunodeSearchConfig d;
  return {d.grid_n,          d.cell_size,          d.newton_tol,        d.max_newton_iters,
          d.min_param_separation, d.exclusion_radius, d.dedup_tolerance, d.min_crossing_sine,
          d.cross_branch ? 1 : 0};
}

envoff_status envoff_cusps_by_derivative(const envoff_curve* c, double d, envoff_side side, int n_seeds,
                                         double tolerance, envoff_points** out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    envoff::CuspSearchOptions opts;
    if (tolerance > 0) opts.tolerance = tolerance;
    const int seeds = n_seeds > 0 ? n_seeds : envoff::default_seed_count(c->curve, opts);
    *out = new envoff_points{envoff::cusps_by_derivative(c->curve, {d, side_of(side)}, seeds, opts)};
  });
}

envoff_status envoff_cusps_by_curvature(const envoff_curve* c, double d, double tolerance, envoff_points** out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    envoff::CuspSearchOptions opts;
    if (tolerance > 0) opts.tolerance = tolerance;
    *out = new envoff_points{envoff::cusps_by_curvature(c->curve, d, opts)};
  });
}

envoff_status envoff_crunodes(const envoff_curve* c, double d, envoff_side side, const envoff_crunode_config* cfg,
                              envoff_points** out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    envoff::CrunodeSearchConfig conf;
    if (cfg != nullptr) {
      conf.grid_n = cfg->grid_n;
      conf.cell_size = cfg->cell_size;
      conf.newton_tol = cfg->newton_tol;
      conf.max_newton_iters = cfg->max_newton_iters;
      conf.min_param_separation = cfg->min_param_separation;
      conf.exclusion_radius = cfg->exclusion_radius;
      conf.dedup_tolerance = cfg->dedup_tolerance;
      conf.min_crossing_sine = cfg->min_crossing_sine;
      conf.cross_branch = cfg->cross_branch != 0;
    }
    *out = new envoff_points{envoff::find_crunodes(c->curve, {d, side_of(side)}, conf)};
  });
}

envoff_status envoff_cusp_condition(const envoff_curve* c, double d, envoff_side side, double u, double* out) {
  return guard([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = envoff::cusp_condition(c->curve, {d, side_of(side)}, u);
  });
}

envoff_status envoff_points_create(envoff_points** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new envoff_points;
  });
}

envoff_status envoff_points_append(envoff_points* dst, const envoff_points* src) {
  return guard([&] {
    require(dst != nullptr && src != nullptr, "null argument");
    dst->points.insert(dst->points.end(), src->points.begin(), src->points.end());
  });
}

envoff_status envoff_points_retain_side(envoff_points* p, envoff_side side) {
  return guard([&] {
    require(p != nullptr, "point set is null");
    const envoff::Side keep = side_of(side);
    std::erase_if(p->points, [&](const envoff::SingularPoint& s) { return s.side != keep; });
  });
}

void envoff_points_free(envoff_points* p) { delete p; }

size_t envoff_points_count(const envoff_points* p) { return p != nullptr ? p->points.size() : 0; }

envoff_status envoff_points_get(const envoff_points* p, size_t index, envoff_singular_point* out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    require(index < p->points.size(), "point index out of range");
    const auto& s = p->points[index];
    out->kind = s.kind == envoff::SingularKind::Cusp ? ENVOFF_CUSP : ENVOFF_CRUNODE;
    out->method = static_cast<envoff_method>(s.method);
    out->side = c_side(s.side);
    out->distance = s.offset_distance;
    out->params[0] = s.params.front();
    out->params[1] = s.params.back();
    out->location = c_vec(s.location);
    out->residual = s.residual;
  });
}

envoff_status envoff_points_serialize(const envoff_points* p, envoff_format fmt, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "null argument");
    *out = dup_string(fmt == ENVOFF_JSON ? envoff::io::to_json(p->points) : envoff::io::to_csv(p->points));
  });
}

// ------------------------------------------------------------ oracle

envoff_status envoff_raster_boundary_csv(const envoff_family* f, double xmin, double ymin, double xmax, double ymax,
                                         int resolution, int n_members, char** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr, "null argument");
    envoff::oracle::RasterGrid grid({xmin, ymin, xmax, ymax}, resolution);
    const auto pts = envoff::oracle::raster_envelope_boundary(f->family, grid, n_members);
    *out = dup_string(envoff::io::to_csv(pts));
  });
}

// ------------------------------------------------------------ render

envoff_status envoff_plot_create(double xmin, double ymin, double xmax, double ymax, int width_px, int height_px,
                                 envoff_plot** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    require(xmax > xmin && ymax > ymin, "viewport must have positive extent");
    require(width_px > 0 && height_px > 0, "image size must be positive");
    auto* p = new envoff_plot;
    p->spec.viewport = {xmin, ymin, xmax, ymax};
    p->spec.width_px = width_px;
    p->spec.height_px = height_px;
    *out = p;
  });
}

void envoff_plot_free(envoff_plot* p) { delete p; }

envoff_status envoff_plot_set_title(envoff_plot* p, const char* title) {
  return guard([&] {
    require(p != nullptr && title != nullptr, "null argument");
    p->spec.title = title;
  });
}

envoff_status envoff_plot_add_polyline(envoff_plot* p, const envoff_polyline* line, const char* color,
                                       double stroke_width, const char* dash) {
  return guard([&] {
    require(p != nullptr && line != nullptr, "null argument");
    p->spec.layers.emplace_back(envoff::render::PolylineLayer{line->line, style(color, stroke_width, dash)});
  });
}

envoff_status envoff_plot_add_circle(envoff_plot* p, envoff_vec2 center, double radius, const char* color,
                                     double stroke_width, const char* dash) {
  return guard([&] {
    require(p != nullptr, "plot is null");
    require(radius > 0, "circle radius must be positive");
    p->spec.layers.emplace_back(envoff::render::CircleLayer{vec(center), radius, style(color, stroke_width, dash)});
  });
}

envoff_status envoff_plot_add_markers(envoff_plot* p, const envoff_vec2* points, size_t n, const char* color,
                                      double radius_px) {
  return guard([&] {
    require(p != nullptr && (points != nullptr || n == 0), "null argument");
    envoff::render::MarkerLayer m;
    for (size_t i = 0; i < n; ++i) m.points.push_back(vec(points[i]));
    if (color != nullptr) m.color = color;
    if (radius_px > 0) m.radius_px = radius_px;
    p->spec.layers.emplace_back(std::move(m));
  });
}

envoff_status envoff_plot_render(const envoff_plot* p, char** out) {
  if (p == nullptr || out == nullptr) return fail(ENVOFF_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    try {
      *out = dup_string(envoff::render::render_svg(p->spec));
    } catch (const envoff::render::EmptyPlotError& e) {
      *out = dup_string(e.svg());
      throw;
    }
  });
}

envoff_status envoff_figure_filename(const char* curve, const char* op, double d, char** out) {
  return guard([&] {
    require(curve != nullptr && op != nullptr && out != nullptr, "null argument");
    *out = dup_string(envoff::render::figure_filename(curve, op, d));
  });
}

// ------------------------------------------------------------ verification

envoff_status envoff_verify(const char* suite, size_t* failures, char** report_json) {
  return guard([&] {
    require(suite != nullptr, "suite is null");
    const auto report = envoff::run_verify(suite);
    if (failures != nullptr) *failures = report.failure_count();
    if (report_json != nullptr) *report_json = dup_string(report.to_json());
  });
}

}  // extern "C"
