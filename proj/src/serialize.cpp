#include "envoff/serialize.hpp"

#include <iterator>

#include <fmt/format.h>
#include <json.hpp>

namespace envoff::io {

namespace {

using nlohmann::json;

json polyline_rows(const Polyline& line) {
  json rows = json::array();
  for (std::size_t s = 0; s < line.segments.size(); ++s)
    for (std::size_t i = 0; i < line.segments[s].size(); ++i)
      rows.push_back({s, line.params[s][i], line.segments[s][i].x, line.segments[s][i].y});
  return rows;
}

json point_json(const SingularPoint& p) {
  json j = {{"kind", to_string(p.kind)},
            {"method", to_string(p.method)},
            {"side", to_string(p.side)},
            {"distance", p.offset_distance},
            {"params", p.params},
            {"location", {p.location.x, p.location.y}},
            {"residual", p.residual}};
  if (p.kind == SingularKind::Crunode) j["cross_branch"] = p.cross_branch;
  if (p.offset_curvature_probe) j["offset_curvature_probe"] = *p.offset_curvature_probe;
  return j;
}

}  // namespace

std::string to_csv(const Polyline& line) {
  std::string out = "segment_id,u,x,y\n";
  auto w = std::back_inserter(out);
  for (std::size_t s = 0; s < line.segments.size(); ++s)
    for (std::size_t i = 0; i < line.segments[s].size(); ++i)
      fmt::format_to(w, "{},{},{},{}\n", s, line.params[s][i], line.segments[s][i].x, line.segments[s][i].y);
  return out;
}

std::string to_json(const Polyline& line) {
  json j = {{"columns", {"segment_id", "u", "x", "y"}},
            {"segment_count", line.segments.size()},
            {"rows", polyline_rows(line)}};
  return j.dump(1) + "\n";
}

std::string to_csv(const EnvelopeResult& env) {
  std::string out = "branch_id,segment_id,u,x,y\n";
  auto w = std::back_inserter(out);
  for (std::size_t b = 0; b < env.branches.size(); ++b) {
    const Polyline& line = env.branches[b];
    for (std::size_t s = 0; s < line.segments.size(); ++s)
      for (std::size_t i = 0; i < line.segments[s].size(); ++i)
        fmt::format_to(w, "{},{},{},{},{}\n", b, s, line.params[s][i], line.segments[s][i].x,
                       line.segments[s][i].y);
  }
  return out;
}

std::string to_json(const EnvelopeResult& env) {
  json branches = json::array();
  for (std::size_t b = 0; b < env.branches.size(); ++b)
    branches.push_back({{"branch_id", b},
                        {"columns", {"segment_id", "u", "x", "y"}},
                        {"rows", polyline_rows(env.branches[b])}});
  json circles = json::array();
  for (const auto& c : env.exceptional_circles)
    circles.push_back({{"param", c.param}, {"center", {c.center.x, c.center.y}}, {"radius", c.radius}});
  json j = {{"branches", branches}, {"exceptional_circles", circles}};
  return j.dump(1) + "\n";
}

std::string to_csv(std::span<const SingularPoint> pts) {
  std::string out = "kind,method,side,distance,param_s,param_t,x,y,residual\n";
  auto w = std::back_inserter(out);
  for (const auto& p : pts) {
    fmt::format_to(w, "{},{},{},{},{},{},{},{},{}\n", to_string(p.kind), to_string(p.method), to_string(p.side),
                   p.offset_distance, p.params.empty() ? 0.0 : p.params[0],
                   p.params.size() > 1 ? fmt::format("{}", p.params[1]) : std::string(), p.location.x,
                   p.location.y, p.residual);
  }
  return out;
}

std::string to_json(std::span<const SingularPoint> pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return json{{"points", arr}}.dump(1) + "\n";
}

std::string to_csv(std::span<const Vec2> pts) {
  std::string out = "x,y\n";
  auto w = std::back_inserter(out);
  for (const Vec2& p : pts) fmt::format_to(w, "{},{}\n", p.x, p.y);
  return out;
}

}  // namespace envoff::io
