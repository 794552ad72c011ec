#ifndef ENVOFF_ENVOFF_H
#define ENVOFF_ENVOFF_H

/* C interface to the envoff library.
 *
 * Every fallible call returns an envoff_status; on failure the message is
 * available from envoff_last_error() on the calling thread until the next
 * call. Objects are opaque and owned by the caller, who releases them with
 * the matching *_free function. Strings returned through char** are released
 * with envoff_string_free. Output parameters are left untouched on failure
 * unless documented otherwise.
 */

#include <stddef.h>

#if defined(_WIN32)
#if defined(ENVOFF_BUILDING_LIBRARY)
#define ENVOFF_API __declspec(dllexport)
#else
#define ENVOFF_API __declspec(dllimport)
#endif
#else
#define ENVOFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum envoff_status {
  ENVOFF_OK = 0,
  ENVOFF_INVALID_ARGUMENT = 1,
  ENVOFF_DOMAIN = 2,
  ENVOFF_SINGULAR_PARAMETER = 3,
  ENVOFF_DEGENERATE_DOMAIN = 4,
  ENVOFF_DEGENERATE_FAMILY = 5,
  ENVOFF_POLE = 6,
  ENVOFF_BOUNDS = 7,
  ENVOFF_EMPTY_PLOT = 8,
  ENVOFF_INTERNAL = 99
} envoff_status;

typedef enum envoff_side { ENVOFF_INTERNAL_SIDE = 0, ENVOFF_EXTERNAL_SIDE = 1 } envoff_side;

typedef enum envoff_format { ENVOFF_CSV = 0, ENVOFF_JSON = 1 } envoff_format;

typedef struct envoff_vec2 {
  double x;
  double y;
} envoff_vec2;

typedef struct envoff_curve envoff_curve;
typedef struct envoff_polyline envoff_polyline;
typedef struct envoff_family envoff_family;
typedef struct envoff_envelope envoff_envelope;
typedef struct envoff_points envoff_points;
typedef struct envoff_plot envoff_plot;

ENVOFF_API const char* envoff_version(void);
ENVOFF_API const char* envoff_status_string(envoff_status status);
/* Message of the last failed call on this thread, or "". */
ENVOFF_API const char* envoff_last_error(void);
ENVOFF_API void envoff_string_free(char* s);

/* ------------------------------------------------------------ curves */

ENVOFF_API envoff_status envoff_curve_kiss(envoff_curve** out);
ENVOFF_API envoff_status envoff_curve_circle(envoff_vec2 center, double radius, envoff_curve** out);
ENVOFF_API envoff_status envoff_curve_ellipse(double a, double b, envoff_curve** out);
ENVOFF_API envoff_status envoff_curve_parabola(double tmin, double tmax, envoff_curve** out);
/* kiss | circle cx cy r | ellipse a b | parabola tmin tmax; missing
 * parameters take their defaults. */
ENVOFF_API envoff_status envoff_curve_by_name(const char* name, const double* params, size_t n_params,
                                              envoff_curve** out);
ENVOFF_API void envoff_curve_free(envoff_curve* c);

ENVOFF_API const char* envoff_curve_name(const envoff_curve* c);
ENVOFF_API envoff_status envoff_curve_domain(const envoff_curve* c, double* lo, double* hi);
/* Any of pos, d1, d2 may be NULL. */
ENVOFF_API envoff_status envoff_curve_eval(const envoff_curve* c, double u, envoff_vec2* pos, envoff_vec2* d1,
                                           envoff_vec2* d2);
ENVOFF_API envoff_status envoff_curve_curvature(const envoff_curve* c, double u, double* out);
ENVOFF_API envoff_status envoff_curve_unit_normal(const envoff_curve* c, double u, envoff_side side,
                                                  envoff_vec2* out);

/* ------------------------------------------------------------ offsets */

ENVOFF_API envoff_status envoff_offset_point(const envoff_curve* c, double d, envoff_side side, double u,
                                             envoff_vec2* out);
/* exclusion_radius <= 0 selects the default. */
ENVOFF_API envoff_status envoff_offset_polyline(const envoff_curve* c, double d, envoff_side side, int n_samples,
                                                double exclusion_radius, envoff_polyline** out);
ENVOFF_API envoff_status envoff_curve_polyline(const envoff_curve* c, int n_samples, envoff_polyline** out);
ENVOFF_API void envoff_polyline_free(envoff_polyline* p);

ENVOFF_API size_t envoff_polyline_segment_count(const envoff_polyline* p);
ENVOFF_API size_t envoff_polyline_segment_size(const envoff_polyline* p, size_t segment);
/* Copies min(capacity, size) points and parameters of one segment; either
 * destination may be NULL. */
ENVOFF_API envoff_status envoff_polyline_segment(const envoff_polyline* p, size_t segment, envoff_vec2* points,
                                                 double* params, size_t capacity);
ENVOFF_API envoff_status envoff_polyline_serialize(const envoff_polyline* p, envoff_format fmt, char** out);

/* ------------------------------------------------------------ envelopes */

ENVOFF_API envoff_status envoff_family_kiss(double R, envoff_family** out);
ENVOFF_API envoff_status envoff_family_nephroid(envoff_family** out);
ENVOFF_API envoff_status envoff_family_constant(const envoff_curve* center, double R, envoff_family** out);
ENVOFF_API void envoff_family_free(envoff_family* f);
ENVOFF_API envoff_status envoff_family_residual(const envoff_family* f, envoff_vec2 p, double u, double* value,
                                                double* d_param);

ENVOFF_API envoff_status envoff_envelope_compute(const envoff_family* f, int n_samples, envoff_envelope** out);
ENVOFF_API void envoff_envelope_free(envoff_envelope* e);
ENVOFF_API size_t envoff_envelope_branch_count(const envoff_envelope* e);
/* Borrowed view; valid while the envelope lives. */
ENVOFF_API const envoff_polyline* envoff_envelope_branch(const envoff_envelope* e, size_t branch);
ENVOFF_API size_t envoff_envelope_circle_count(const envoff_envelope* e);
ENVOFF_API envoff_status envoff_envelope_circle(const envoff_envelope* e, size_t index, double* param,
                                                envoff_vec2* center, double* radius);
ENVOFF_API envoff_status envoff_envelope_serialize(const envoff_envelope* e, envoff_format fmt, char** out);

/* branch is 1 or 2. */
ENVOFF_API envoff_status envoff_kiss_envelope_closed_form(double R, double u, int branch, envoff_vec2* out);
ENVOFF_API envoff_status envoff_line_family_envelope(int n_samples, double k_min, double k_max,
                                                     envoff_polyline** out);

/* ------------------------------------------------------------ singular points */

typedef enum envoff_kind { ENVOFF_CUSP = 0, ENVOFF_CRUNODE = 1 } envoff_kind;
typedef enum envoff_method {
  ENVOFF_METHOD_DERIVATIVE = 0,
  ENVOFF_METHOD_CURVATURE = 1,
  ENVOFF_METHOD_CRUNODE_SYSTEM = 2
} envoff_method;

typedef struct envoff_singular_point {
  envoff_kind kind;
  envoff_method method;
  envoff_side side;
  double distance;
  /* params[1] equals params[0] for cusps. */
  double params[2];
  envoff_vec2 location;
  double residual;
} envoff_singular_point;

typedef struct envoff_crunode_config {
  int grid_n;
  double cell_size;
  double newton_tol;
  int max_newton_iters;
  double min_param_separation;
  double exclusion_radius;
  double dedup_tolerance;
  double min_crossing_sine;
  int cross_branch;
} envoff_crunode_config;

ENVOFF_API envoff_crunode_config envoff_crunode_config_default(void);

/* tolerance <= 0 selects the default; n_seeds <= 0 the default density. */
ENVOFF_API envoff_status envoff_cusps_by_derivative(const envoff_curve* c, double d, envoff_side side, int n_seeds,
                                                    double tolerance, envoff_points** out);
/* Both sides at once. */
ENVOFF_API envoff_status envoff_cusps_by_curvature(const envoff_curve* c, double d, double tolerance,
                                                   envoff_points** out);
ENVOFF_API envoff_status envoff_crunodes(const envoff_curve* c, double d, envoff_side side,
                                         const envoff_crunode_config* cfg, envoff_points** out);
ENVOFF_API envoff_status envoff_cusp_condition(const envoff_curve* c, double d, envoff_side side, double u,
                                               double* out);
/* An empty set, e.g. to collect results with envoff_points_append. */
ENVOFF_API envoff_status envoff_points_create(envoff_points** out);
/* Concatenates src onto dst. */
ENVOFF_API envoff_status envoff_points_append(envoff_points* dst, const envoff_points* src);
/* Drops every point whose side differs from `side`. */
ENVOFF_API envoff_status envoff_points_retain_side(envoff_points* p, envoff_side side);
ENVOFF_API void envoff_points_free(envoff_points* p);
ENVOFF_API size_t envoff_points_count(const envoff_points* p);
ENVOFF_API envoff_status envoff_points_get(const envoff_points* p, size_t index, envoff_singular_point* out);
ENVOFF_API envoff_status envoff_points_serialize(const envoff_points* p, envoff_format fmt, char** out);

/* ------------------------------------------------------------ oracle */

/* Boundary cell centres of the rasterized union of n_members family circles,
 * as an `x,y` CSV document. */
ENVOFF_API envoff_status envoff_raster_boundary_csv(const envoff_family* f, double xmin, double ymin, double xmax,
                                                    double ymax, int resolution, int n_members, char** out);

/* ------------------------------------------------------------ render */

ENVOFF_API envoff_status envoff_plot_create(double xmin, double ymin, double xmax, double ymax, int width_px,
                                            int height_px, envoff_plot** out);
ENVOFF_API void envoff_plot_free(envoff_plot* p);
ENVOFF_API envoff_status envoff_plot_set_title(envoff_plot* p, const char* title);
/* dash may be NULL for a solid stroke. */
ENVOFF_API envoff_status envoff_plot_add_polyline(envoff_plot* p, const envoff_polyline* line, const char* color,
                                                  double stroke_width, const char* dash);
ENVOFF_API envoff_status envoff_plot_add_circle(envoff_plot* p, envoff_vec2 center, double radius,
                                                const char* color, double stroke_width, const char* dash);
ENVOFF_API envoff_status envoff_plot_add_markers(envoff_plot* p, const envoff_vec2* points, size_t n,
                                                 const char* color, double radius_px);
/* On ENVOFF_EMPTY_PLOT *out still receives the axes-only document. */
ENVOFF_API envoff_status envoff_plot_render(const envoff_plot* p, char** out);
ENVOFF_API envoff_status envoff_figure_filename(const char* curve, const char* op, double d, char** out);

/* ------------------------------------------------------------ verification */

/* Runs a verification suite (curves, offsets, envelopes, singularities,
 * crunodes, oracle or all). *failures receives the number of failed checks
 * and *report_json the full report; either may be NULL. */
ENVOFF_API envoff_status envoff_verify(const char* suite, size_t* failures, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* ENVOFF_ENVOFF_H */
