#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "envoff/envoff.h"
#include "run_config.hpp"

namespace fs = std::filesystem;
using envoff::cli::ConfigError;
using envoff::cli::RunConfig;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCompute = 3, kIo = 4 };

constexpr const char* kProgenitorColor = "purple";
constexpr const char* kInternalColor = "darkgreen";
constexpr const char* kExternalColor = "blue";
constexpr const char* kSingularColor = "red";
constexpr const char* kEnvelopeColor = "darkorange";
constexpr const char* kFamilyColor = "gray";

class ApiError : public std::runtime_error {
 public:
  ApiError(envoff_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  envoff_status status;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(envoff_status s) {
  if (s != ENVOFF_OK) throw ApiError(s, fmt::format("{}: {}", envoff_status_string(s), envoff_last_error()));
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Curve = std::unique_ptr<envoff_curve, Deleter<envoff_curve, envoff_curve_free>>;
using Line = std::unique_ptr<envoff_polyline, Deleter<envoff_polyline, envoff_polyline_free>>;
using Family = std::unique_ptr<envoff_family, Deleter<envoff_family, envoff_family_free>>;
using Envelope = std::unique_ptr<envoff_envelope, Deleter<envoff_envelope, envoff_envelope_free>>;
using Points = std::unique_ptr<envoff_points, Deleter<envoff_points, envoff_points_free>>;
using Plot = std::unique_ptr<envoff_plot, Deleter<envoff_plot, envoff_plot_free>>;

std::string take(char* s) {
  std::string out(s);
  envoff_string_free(s);
  return out;
}

// ------------------------------------------------------------ output

struct Document {
  std::string name;  ///< file name for SVG, empty for text
  std::string body;
};

struct Target {
  std::string format;
  std::optional<fs::path> path;  ///< unset: stdout for text, --dir for SVG
};

Target resolve_target(const RunConfig& cfg, const char* default_format) {
  Target t;
  const std::string& out = cfg.out;
  if (out == "csv" || out == "json" || out == "svg") {
    if (!cfg.format.empty() && cfg.format != out)
      throw ConfigError(fmt::format("--out {} conflicts with --format {}", out, cfg.format));
    t.format = out;
  } else if (out.empty() || out == "-") {
    t.format = cfg.format.empty() ? default_format : cfg.format;
  } else {
    t.path = out;
    std::string ext = fs::path(out).extension().string();
    if (!ext.empty()) ext.erase(0, 1);
    t.format = !cfg.format.empty() ? cfg.format : ext;
    if (t.format != "csv" && t.format != "json" && t.format != "svg")
      throw ConfigError(fmt::format("cannot infer the output format of '{}'; pass --format", out));
  }
  return t;
}

void write_atomic(const fs::path& path, const std::string& body) {
  const fs::path tmp = path.string() + fmt::format(".tmp-{}", ::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError(fmt::format("error while writing '{}'", path.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(fmt::format("cannot move output into place at '{}'", path.string()));
  }
}

/// Text goes to stdout or the --out path; SVG documents go to the --out path
/// (a single document) or into --dir under their conventional names, whose
/// paths are echoed on stdout.
void emit(const RunConfig& cfg, const Target& t, const std::vector<Document>& docs) {
  if (t.format != "svg") {
    if (t.path) {
      write_atomic(*t.path, docs.front().body);
    } else {
      std::fwrite(docs.front().body.data(), 1, docs.front().body.size(), stdout);
    }
    return;
  }
  if (t.path) {
    if (docs.size() != 1)
      throw ConfigError(fmt::format("{} SVG documents requested but --out names one file; use --dir", docs.size()));
    write_atomic(*t.path, docs.front().body);
    std::cout << t.path->string() << "\n";
    return;
  }
  std::error_code ec;
  fs::create_directories(cfg.dir, ec);
  if (ec) throw IoError(fmt::format("cannot create directory '{}'", cfg.dir));
  for (const auto& d : docs) {
    const fs::path p = fs::path(cfg.dir) / d.name;
    write_atomic(p, d.body);
    std::cout << p.string() << "\n";
  }
}

// ------------------------------------------------------------ combined text documents

std::string csv_with_prefix(const std::vector<std::pair<std::string, std::string>>& parts,
                            const std::string& prefix_header) {
  std::string out;
  bool header_done = false;
  for (const auto& [prefix, csv] : parts) {
    std::istringstream in(csv);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        if (!header_done) out += prefix_header + "," + line + "\n";
        header_done = true;
        continue;
      }
      out += prefix + "," + line + "\n";
    }
  }
  return out;
}

// ------------------------------------------------------------ plotting

struct Bounds {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -std::numeric_limits<double>::infinity(), ymax = xmax;

  void add(envoff_vec2 p) {
    xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
  }
  void add(const envoff_polyline* line) {
    for (size_t s = 0; s < envoff_polyline_segment_count(line); ++s) {
      std::vector<envoff_vec2> pts(envoff_polyline_segment_size(line, s));
      check(envoff_polyline_segment(line, s, pts.data(), nullptr, pts.size()));
      for (const auto& p : pts) add(p);
    }
  }
  void add_circle(envoff_vec2 c, double r) {
    add({c.x - r, c.y - r});
    add({c.x + r, c.y + r});
  }
};

Plot make_plot(const Bounds& b, const std::string& title) {
  const double w = b.xmax - b.xmin, h = b.ymax - b.ymin;
  const double pad = 0.06 * std::max({w, h, 1e-3});
  envoff_plot* p = nullptr;
  check(envoff_plot_create(b.xmin - pad, b.ymin - pad, b.xmax + pad, b.ymax + pad, 600, 600, &p));
  Plot plot(p);
  check(envoff_plot_set_title(p, title.c_str()));
  return plot;
}

std::string render(const envoff_plot* p) {
  char* svg = nullptr;
  check(envoff_plot_render(p, &svg));
  return take(svg);
}

std::string figure_name(const std::string& curve, const char* op, double d) {
  char* s = nullptr;
  check(envoff_figure_filename(curve.c_str(), op, d, &s));
  return take(s);
}

// ------------------------------------------------------------ computations

Curve make_curve(const RunConfig& cfg) {
  envoff_curve* c = nullptr;
  check(envoff_curve_by_name(cfg.curve.c_str(), cfg.curve_params.data(), cfg.curve_params.size(), &c));
  return Curve(c);
}

std::vector<envoff_side> sides(const RunConfig& cfg) {
  if (cfg.side == "internal") return {ENVOFF_INTERNAL_SIDE};
  if (cfg.side == "external") return {ENVOFF_EXTERNAL_SIDE};
  return {ENVOFF_INTERNAL_SIDE, ENVOFF_EXTERNAL_SIDE};
}

const char* side_name(envoff_side s) { return s == ENVOFF_INTERNAL_SIDE ? "internal" : "external"; }
const char* side_color(envoff_side s) { return s == ENVOFF_INTERNAL_SIDE ? kInternalColor : kExternalColor; }

std::string fmt_num(double v) { return fmt::format("{}", v); }

Line curve_line(const envoff_curve* c, int n) {
  envoff_polyline* p = nullptr;
  check(envoff_curve_polyline(c, n, &p));
  return Line(p);
}

Line offset_line(const RunConfig& cfg, const envoff_curve* c, double d, envoff_side side) {
  envoff_polyline* p = nullptr;
  check(envoff_offset_polyline(c, d, side, cfg.samples, cfg.exclusion_radius.value_or(0.0), &p));
  return Line(p);
}

std::vector<envoff_vec2> locations(const envoff_points* pts) {
  std::vector<envoff_vec2> out;
  for (size_t i = 0; i < envoff_points_count(pts); ++i) {
    envoff_singular_point sp;
    check(envoff_points_get(pts, i, &sp));
    out.push_back(sp.location);
  }
  return out;
}

/// Progenitor plus the requested offset branches, optionally with markers.
std::string offset_figure(const RunConfig& cfg, const envoff_curve* c, double d, const std::string& title,
                          const std::vector<envoff_vec2>& markers) {
  const Line prog = curve_line(c, cfg.samples);
  std::vector<std::pair<envoff_side, Line>> lines;
  for (envoff_side s : sides(cfg)) lines.emplace_back(s, offset_line(cfg, c, d, s));
  Bounds b;
  b.add(prog.get());
  for (const auto& [s, l] : lines) b.add(l.get());
  for (const auto& m : markers) b.add(m);
  Plot plot = make_plot(b, title);
  check(envoff_plot_add_polyline(plot.get(), prog.get(), kProgenitorColor, 1.5, nullptr));
  for (const auto& [s, l] : lines) check(envoff_plot_add_polyline(plot.get(), l.get(), side_color(s), 1.5, nullptr));
  if (!markers.empty())
    check(envoff_plot_add_markers(plot.get(), markers.data(), markers.size(), kSingularColor, 4.0));
  return render(plot.get());
}

std::vector<Document> run_sample(const RunConfig& cfg, const Target& t) {
  const Curve c = make_curve(cfg);
  const Line line = curve_line(c.get(), cfg.samples);
  if (t.format == "svg") {
    Bounds b;
    b.add(line.get());
    Plot plot = make_plot(b, cfg.curve);
    check(envoff_plot_add_polyline(plot.get(), line.get(), kProgenitorColor, 1.5, nullptr));
    return {{figure_name(cfg.curve, "curve", 0), render(plot.get())}};
  }
  char* s = nullptr;
  check(envoff_polyline_serialize(line.get(), t.format == "json" ? ENVOFF_JSON : ENVOFF_CSV, &s));
  return {{"", take(s)}};
}

std::vector<Document> run_offset(const RunConfig& cfg, const Target& t) {
  const Curve c = make_curve(cfg);
  std::vector<Document> docs;
  if (t.format == "svg") {
    for (double d : cfg.distances)
      docs.push_back({figure_name(cfg.curve, "offset", d),
                      offset_figure(cfg, c.get(), d, fmt::format("{} offsets, d = {:g}", cfg.curve, d), {})});
    return docs;
  }
  const envoff_format f = t.format == "json" ? ENVOFF_JSON : ENVOFF_CSV;
  std::vector<std::pair<std::string, std::string>> parts;
  nlohmann::ordered_json combined = nlohmann::ordered_json::array();
  for (double d : cfg.distances)
    for (envoff_side s : sides(cfg)) {
      const Line line = offset_line(cfg, c.get(), d, s);
      char* text = nullptr;
      check(envoff_polyline_serialize(line.get(), f, &text));
      std::string body = take(text);
      if (f == ENVOFF_JSON) {
        nlohmann::ordered_json entry{{"distance", d}, {"side", side_name(s)}};
        entry.update(nlohmann::ordered_json::parse(body));
        combined.push_back(std::move(entry));
      }
      parts.emplace_back(fmt::format("{},{}", fmt_num(d), side_name(s)), std::move(body));
    }
  if (parts.size() == 1) return {{"", parts.front().second}};
  if (f == ENVOFF_JSON)
    return {{"", nlohmann::ordered_json{{"curve", cfg.curve}, {"offsets", combined}}.dump(1) + "\n"}};
  return {{"", csv_with_prefix(parts, "distance,side")}};
}

Family make_family(const RunConfig& cfg, const envoff_curve* c, double R) {
  envoff_family* f = nullptr;
  if (cfg.family == "nephroid") {
    check(envoff_family_nephroid(&f));
  } else {
    check(envoff_family_constant(c, R, &f));
  }
  return Family(f);
}

std::string envelope_figure(const RunConfig& cfg, const envoff_family* fam, const envoff_envelope* env,
                            const envoff_curve* centre, const std::string& title) {
  const Line prog = curve_line(centre, cfg.samples);
  Bounds b;
  b.add(prog.get());
  for (size_t i = 0; i < envoff_envelope_branch_count(env); ++i) b.add(envoff_envelope_branch(env, i));

  double lo = 0, hi = 0;
  check(envoff_curve_domain(centre, &lo, &hi));
  constexpr int kMembers = 24;
  std::vector<std::pair<envoff_vec2, double>> members;
  for (int k = 0; k < kMembers; ++k) {
    const double u = lo + (hi - lo) * (k + 0.5) / kMembers;
    envoff_vec2 ctr;
    check(envoff_curve_eval(centre, u, &ctr, nullptr, nullptr));
    // F = |ctr - ctr|^2 - r^2 at the centre itself.
    double value = 0;
    check(envoff_family_residual(fam, ctr, u, &value, nullptr));
    const double r = std::sqrt(std::max(0.0, -value));
    if (r > 0) members.emplace_back(ctr, r);
  }
  std::vector<std::pair<envoff_vec2, double>> exceptional;
  for (size_t i = 0; i < envoff_envelope_circle_count(env); ++i) {
    envoff_vec2 ctr;
    double r = 0;
    check(envoff_envelope_circle(env, i, nullptr, &ctr, &r));
    exceptional.emplace_back(ctr, r);
    b.add_circle(ctr, r);
  }

  Plot plot = make_plot(b, title);
  for (const auto& [ctr, r] : members) check(envoff_plot_add_circle(plot.get(), ctr, r, kFamilyColor, 0.5, nullptr));
  check(envoff_plot_add_polyline(plot.get(), prog.get(), kProgenitorColor, 1.5, nullptr));
  for (size_t i = 0; i < envoff_envelope_branch_count(env); ++i)
    check(envoff_plot_add_polyline(plot.get(), envoff_envelope_branch(env, i), kEnvelopeColor, 2.0, nullptr));
  for (const auto& [ctr, r] : exceptional)
    check(envoff_plot_add_circle(plot.get(), ctr, r, kEnvelopeColor, 1.0, "6 4"));
  return render(plot.get());
}

std::vector<Document> run_line_envelope(const RunConfig& cfg, const Target& t) {
  envoff_polyline* p = nullptr;
  check(envoff_line_family_envelope(cfg.samples, -3.0, 3.0, &p));
  const Line line(p);
  if (t.format == "svg") {
    Bounds b;
    b.add(line.get());
    Plot plot = make_plot(b, "envelope of x + k y = k^2");
    check(envoff_plot_add_polyline(plot.get(), line.get(), kEnvelopeColor, 2.0, nullptr));
    return {{figure_name("line", "envelope", 0), render(plot.get())}};
  }
  char* s = nullptr;
  check(envoff_polyline_serialize(line.get(), t.format == "json" ? ENVOFF_JSON : ENVOFF_CSV, &s));
  return {{"", take(s)}};
}

std::vector<Document> run_envelope(const RunConfig& cfg, const Target& t) {
  if (cfg.family == "line") return run_line_envelope(cfg, t);

  const bool nephroid = cfg.family == "nephroid";
  Curve centre;
  if (nephroid) {
    envoff_curve* c = nullptr;
    check(envoff_curve_circle({0.0, 0.0}, 2.0, &c));
    centre.reset(c);
  } else {
    centre = make_curve(cfg);
  }
  const std::vector<double> radii = nephroid ? std::vector<double>{0.0} : cfg.radii;
  const envoff_format f = t.format == "json" ? ENVOFF_JSON : ENVOFF_CSV;

  std::vector<Document> docs;
  std::vector<std::pair<std::string, std::string>> parts;
  nlohmann::ordered_json combined = nlohmann::ordered_json::array();
  for (double R : radii) {
    const Family fam = make_family(cfg, centre.get(), R);
    envoff_envelope* e = nullptr;
    check(envoff_envelope_compute(fam.get(), cfg.samples, &e));
    const Envelope env(e);
    if (t.format == "svg") {
      const std::string name = nephroid ? "nephroid" : cfg.curve;
      const std::string title = nephroid ? "nephroid family envelope" : fmt::format("{} envelope, R = {:g}", name, R);
      docs.push_back({figure_name(name, "envelope", R), envelope_figure(cfg, fam.get(), env.get(), centre.get(), title)});
      continue;
    }
    char* text = nullptr;
    check(envoff_envelope_serialize(env.get(), f, &text));
    std::string body = take(text);
    if (f == ENVOFF_JSON) {
      nlohmann::ordered_json entry{{"R", R}};
      entry.update(nlohmann::ordered_json::parse(body));
      combined.push_back(std::move(entry));
    }
    parts.emplace_back(fmt_num(R), std::move(body));
  }
  if (t.format == "svg") return docs;
  if (parts.size() == 1) return {{"", parts.front().second}};
  if (f == ENVOFF_JSON)
    return {{"", nlohmann::ordered_json{{"curve", cfg.curve}, {"envelopes", combined}}.dump(1) + "\n"}};
  return {{"", csv_with_prefix(parts, "R")}};
}

Points find_cusps(const RunConfig& cfg, const envoff_curve* c, double d) {
  envoff_points* empty = nullptr;
  check(envoff_points_create(&empty));
  Points out(empty);

  const double tol = cfg.tol.value_or(0.0);
  if (cfg.method != "curvature")
    for (envoff_side s : sides(cfg)) {
      envoff_points* p = nullptr;
      check(envoff_cusps_by_derivative(c, d, s, cfg.seeds.value_or(0), tol, &p));
      const Points part(p);
      check(envoff_points_append(out.get(), part.get()));
    }
  if (cfg.method != "derivative") {
    envoff_points* p = nullptr;
    check(envoff_cusps_by_curvature(c, d, tol, &p));
    const Points part(p);
    if (cfg.side != "both")
      check(envoff_points_retain_side(part.get(), cfg.side == "internal" ? ENVOFF_INTERNAL_SIDE : ENVOFF_EXTERNAL_SIDE));
    check(envoff_points_append(out.get(), part.get()));
  }
  return out;
}

Points find_crunodes(const RunConfig& cfg, const envoff_curve* c, double d, envoff_side s) {
  envoff_crunode_config conf = envoff_crunode_config_default();
  if (cfg.grid_n) conf.grid_n = *cfg.grid_n;
  if (cfg.cell_size) conf.cell_size = *cfg.cell_size;
  if (cfg.newton_tol) {
    conf.newton_tol = *cfg.newton_tol;
  } else if (cfg.tol) {
    conf.newton_tol = *cfg.tol;
  }
  if (cfg.max_newton_iters) conf.max_newton_iters = *cfg.max_newton_iters;
  if (cfg.min_param_separation) conf.min_param_separation = *cfg.min_param_separation;
  if (cfg.exclusion_radius) conf.exclusion_radius = *cfg.exclusion_radius;
  if (cfg.min_crossing_sine) conf.min_crossing_sine = *cfg.min_crossing_sine;
  envoff_points* p = nullptr;
  check(envoff_crunodes(c, d, s, &conf, &p));
  return Points(p);
}

template <typename Finder>
std::vector<Document> run_points(const RunConfig& cfg, const Target& t, const char* op, Finder&& finder) {
  const Curve c = make_curve(cfg);
  std::vector<Document> docs;
  Points all;
  for (double d : cfg.distances) {
    Points pts = finder(c.get(), d);
    if (t.format == "svg") {
      docs.push_back({figure_name(cfg.curve, op, d),
                      offset_figure(cfg, c.get(), d, fmt::format("{} {}, d = {:g}", cfg.curve, op, d),
                                    locations(pts.get()))});
    } else if (!all) {
      all = std::move(pts);
    } else {
      check(envoff_points_append(all.get(), pts.get()));
    }
  }
  if (t.format == "svg") return docs;
  char* s = nullptr;
  check(envoff_points_serialize(all.get(), t.format == "json" ? ENVOFF_JSON : ENVOFF_CSV, &s));
  return {{"", take(s)}};
}

std::vector<Document> run_cusps(const RunConfig& cfg, const Target& t) {
  return run_points(cfg, t, "cusps", [&](const envoff_curve* c, double d) { return find_cusps(cfg, c, d); });
}

std::vector<Document> run_crunodes(const RunConfig& cfg, const Target& t) {
  return run_points(cfg, t, "crunodes", [&](const envoff_curve* c, double d) {
    Points out;
    for (envoff_side s : sides(cfg)) {
      Points part = find_crunodes(cfg, c, d, s);
      if (!out) {
        out = std::move(part);
      } else {
        check(envoff_points_append(out.get(), part.get()));
      }
    }
    return out;
  });
}

// ------------------------------------------------------------ figures

std::vector<Document> figure(const RunConfig& base, const std::string& id) {
  RunConfig cfg = base;
  cfg.side = "both";
  cfg.out = "svg";
  cfg.format = "svg";
  cfg.curve_params.clear();
  const Target svg{"svg", std::nullopt};
  if (id == "parabola-offsets") {
    cfg.curve = "parabola";
    cfg.distances = {1.5, 3.5};
    return run_offset(cfg, svg);
  }
  if (id == "kiss") {
    cfg.curve = "kiss";
    return run_sample(cfg, svg);
  }
  if (id == "kiss-offsets") {
    cfg.curve = "kiss";
    cfg.distances = {1.0 / 3.0, 0.5, 1.0, 2.0};
    return run_offset(cfg, svg);
  }
  if (id == "kiss-cusps") {
    cfg.curve = "kiss";
    cfg.distances = {0.5, 1.0, 2.0};
    cfg.method = "derivative";
    return run_cusps(cfg, svg);
  }
  if (id == "kiss-crunodes") {
    cfg.curve = "kiss";
    cfg.distances = {0.5, 1.0, 5.0, 10.0};
    return run_crunodes(cfg, svg);
  }
  throw ConfigError(fmt::format("unknown figure '{}' (parabola-offsets, kiss, kiss-offsets, kiss-cusps, kiss-crunodes or all)", id));
}

std::vector<Document> run_render(const RunConfig& cfg) {
  std::vector<std::string> ids = cfg.figures;
  if (ids.empty() || (ids.size() == 1 && ids.front() == "all")) ids = {"parabola-offsets", "kiss", "kiss-offsets", "kiss-cusps", "kiss-crunodes"};
  std::vector<Document> docs;
  for (const auto& id : ids) {
    auto part = figure(cfg, id);
    docs.insert(docs.end(), part.begin(), part.end());
  }
  return docs;
}

int run_verify(const RunConfig& cfg) {
  size_t failures = 0;
  char* report = nullptr;
  check(envoff_verify(cfg.suite.c_str(), &failures, &report));
  const std::string body = take(report);
  const auto doc = nlohmann::json::parse(body);
  if (!cfg.out.empty() && cfg.out != "-" && cfg.out != "json") {
    write_atomic(cfg.out, body);
  } else {
    std::fwrite(body.data(), 1, body.size(), stdout);
  }
  std::cerr << fmt::format("verify {}: {} checks, {} failed\n", cfg.suite, doc["checks"].size(), failures);
  return failures == 0 ? kOk : kVerifyFailed;
}

int dispatch(const RunConfig& cfg) {
  envoff::cli::validate(cfg);
  const std::string& op = cfg.operation;
  if (op == "verify") return run_verify(cfg);
  if (op == "render") {
    emit(cfg, {"svg", std::nullopt}, run_render(cfg));
    return kOk;
  }
  const Target t = resolve_target(cfg, op == "sample" || op == "offset" || op == "envelope" ? "csv" : "json");
  std::vector<Document> docs;
  if (op == "sample") docs = run_sample(cfg, t);
  if (op == "offset") docs = run_offset(cfg, t);
  if (op == "envelope") docs = run_envelope(cfg, t);
  if (op == "cusps") docs = run_cusps(cfg, t);
  if (op == "crunodes") docs = run_crunodes(cfg, t);
  emit(cfg, t, docs);
  return kOk;
}

// ------------------------------------------------------------ command line

struct Flags {
  std::string config, curve, curve_params, family, side, method, format, out, dir, suite;
  std::vector<std::string> d, R, figures;
  int samples = 0, seeds = 0, grid_n = 0, max_newton_iters = 0;
  double tol = 0, cell_size = 0, newton_tol = 0, min_sep = 0, exclusion = 0, crossing = 0;
};

std::vector<double> numbers(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) {
    const auto part = envoff::cli::parse_number_list(s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// Config file first, then every flag given on the command line.
RunConfig assemble(const CLI::App& sub, const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : envoff::cli::load_config(f.config);
  const std::string name = sub.get_name();
  if (name != "run") {
    if (!cfg.operation.empty() && cfg.operation != name)
      throw ConfigError(fmt::format("config operation '{}' conflicts with subcommand '{}'", cfg.operation, name));
    cfg.operation = name;
  } else if (cfg.operation.empty()) {
    throw ConfigError("run needs a config file with run.operation set");
  }
  auto given = [&](const char* opt) { return sub.get_option_no_throw(opt) != nullptr && sub.count(opt) > 0; };
  if (given("--curve")) cfg.curve = f.curve;
  if (given("--curve-params")) cfg.curve_params = envoff::cli::parse_number_list(f.curve_params);
  if (given("--d")) cfg.distances = numbers(f.d);
  if (given("--R")) cfg.radii = numbers(f.R);
  if (given("--family")) cfg.family = f.family;
  if (given("--samples")) cfg.samples = f.samples;
  if (given("--side")) cfg.side = f.side;
  if (given("--method")) cfg.method = f.method;
  if (given("--format")) cfg.format = f.format;
  if (given("--out")) cfg.out = f.out;
  if (given("--dir")) cfg.dir = f.dir;
  if (given("--figure")) cfg.figures = f.figures;
  if (given("--suite")) cfg.suite = f.suite;
  if (given("--tol")) cfg.tol = f.tol;
  if (given("--seeds")) cfg.seeds = f.seeds;
  if (given("--grid-n")) cfg.grid_n = f.grid_n;
  if (given("--cell-size")) cfg.cell_size = f.cell_size;
  if (given("--newton-tol")) cfg.newton_tol = f.newton_tol;
  if (given("--max-newton-iters")) cfg.max_newton_iters = f.max_newton_iters;
  if (given("--min-param-separation")) cfg.min_param_separation = f.min_sep;
  if (given("--exclusion-radius")) cfg.exclusion_radius = f.exclusion;
  if (given("--min-crossing-sine")) cfg.min_crossing_sine = f.crossing;
  return cfg;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Sectioned key-value config file; flags override it")->check(CLI::ExistingFile);
  sub->add_option("--curve", f.curve, "Built-in curve: kiss, circle, ellipse, parabola");
  sub->add_option("--curve-params", f.curve_params,
                  "Curve parameters: circle 'cx cy r', ellipse 'a b', parabola 'tmin tmax'");
  sub->add_option("--samples", f.samples, "Samples per polyline (>= 16)");
  sub->add_option("--out", f.out, "csv | json | svg, '-' for stdout, or an output path");
  sub->add_option("--format", f.format, "csv | json | svg; inferred from --out when omitted");
  sub->add_option("--dir", f.dir, "Directory for SVG files named <curve>_<op>_<d>.svg");
}

void add_distances(CLI::App* sub, Flags& f) {
  sub->add_option("--d", f.d, "Offset distance(s), plane units; repeat or comma-separate; p/q allowed")
      ->delimiter(',');
  sub->add_option("--side", f.side, "internal | external | both");
  sub->add_option("--exclusion-radius", f.exclusion, "Parameter radius dropped around progenitor singularities");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offsets, envelopes of circle families, and their singular points for plane curves.\n"
               "All angles are in radians and all distances in plane units."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(envoff_version()));
  Flags f;

  auto* sample = app.add_subcommand("sample", "Sample the progenitor curve");
  add_common(sample, f);

  auto* offset = app.add_subcommand("offset", "Offset curves at the given distances");
  add_common(offset, f);
  add_distances(offset, f);

  auto* envelope = app.add_subcommand("envelope", "Envelope of a one-parameter family of circles");
  add_common(envelope, f);
  envelope->add_option("--R", f.R, "Circle radius (radii) of the constant family; repeat or comma-separate")
      ->delimiter(',');
  envelope->add_option("--family", f.family, "constant (circles of radius R on the curve) | nephroid | line");

  auto* cusps = app.add_subcommand("cusps", "Cusps of offset curves");
  add_common(cusps, f);
  add_distances(cusps, f);
  cusps->add_option("--method", f.method, "derivative | curvature | both");
  cusps->add_option("--tol", f.tol, "Root residual tolerance");
  cusps->add_option("--seeds", f.seeds, "Grid seeds over the whole domain");

  auto* crunodes = app.add_subcommand("crunodes", "Self-intersections of offset curves");
  add_common(crunodes, f);
  add_distances(crunodes, f);
  crunodes->add_option("--tol", f.tol, "Newton residual tolerance");
  crunodes->add_option("--grid-n", f.grid_n, "Seeding samples per branch");
  crunodes->add_option("--cell-size", f.cell_size, "Spatial hash cell width (0 = automatic)");
  crunodes->add_option("--newton-tol", f.newton_tol, "Newton residual tolerance (overrides --tol)");
  crunodes->add_option("--max-newton-iters", f.max_newton_iters, "Newton iteration limit");
  crunodes->add_option("--min-param-separation", f.min_sep, "Smallest accepted |s - t|");
  crunodes->add_option("--min-crossing-sine", f.crossing, "Smallest accepted |sin| of the crossing angle");

  auto* render_cmd = app.add_subcommand("render", "Regenerate the reference figures as SVG");
  render_cmd->add_option("--config", f.config, "Config file")->check(CLI::ExistingFile);
  render_cmd->add_option("--figure", f.figures, "parabola-offsets | kiss | kiss-offsets | kiss-cusps | kiss-crunodes | all")->delimiter(',');
  render_cmd->add_option("--samples", f.samples, "Samples per polyline (>= 16)");
  render_cmd->add_option("--dir", f.dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run the invariant suites; nonzero exit on any violation");
  verify->add_option("--config", f.config, "Config file")->check(CLI::ExistingFile);
  verify->add_option("--suite", f.suite, "curves | offsets | envelopes | singularities | crunodes | oracle | all");
  verify->add_option("--out", f.out, "Report path, or '-' for stdout");

  auto* run = app.add_subcommand("run", "Run the operation named in a config file");
  run->add_option("--config", f.config, "Config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    return dispatch(assemble(*sub, f));
  } catch (const ConfigError& e) {
    std::cerr << "envoff: " << e.what() << "\n";
    return kUsage;
  } catch (const ApiError& e) {
    std::cerr << "envoff: " << e.what() << "\n";
    return e.status == ENVOFF_INVALID_ARGUMENT ? kUsage : kCompute;
  } catch (const IoError& e) {
    std::cerr << "envoff: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "envoff: " << e.what() << "\n";
    return kCompute;
  }
}
