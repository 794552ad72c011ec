#include "run_config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace envoff::cli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"curve", {"name", "params"}},
      {"run", {"operation", "d", "R", "family", "samples", "side", "method", "format", "out", "dir", "figure", "suite"}},
      {"solver",
       {"tol", "seeds", "grid_n", "cell_size", "newton_tol", "max_newton_iters", "min_param_separation",
        "exclusion_radius", "min_crossing_sine"}},
  };
  return keys;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double parse_plain(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  return v;
}

int parse_int(const std::string& text) {
  const double v = parse_number(text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("not an integer: '" + text + "'");
  return static_cast<int>(v);
}

void one_of(const std::string& what, const std::string& value, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError(what + " must be one of " + list + ", got '" + value + "'");
}

}  // namespace

double parse_number(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text, text);
  const double num = parse_plain(text.substr(0, slash), text);
  const double den = parse_plain(text.substr(slash + 1), text);
  if (den == 0.0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number(item));
  return out;
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || !body.data().empty())
      throw ConfigError("config: unknown section or top-level key '" + section + "'");
    for (const auto& [key, value] : body)
      if (!it->second.contains(key)) throw ConfigError("config: unknown key '" + section + "." + key + "'");
  }

  RunConfig cfg;
  auto get = [&](const char* path) { return tree.get_optional<std::string>(pt::ptree::path_type(path, '.')); };
  if (auto v = get("curve.name")) cfg.curve = *v;
  if (auto v = get("curve.params")) cfg.curve_params = parse_number_list(*v);
  if (auto v = get("run.operation")) cfg.operation = *v;
  if (auto v = get("run.d")) cfg.distances = parse_number_list(*v);
  if (auto v = get("run.R")) cfg.radii = parse_number_list(*v);
  if (auto v = get("run.family")) cfg.family = *v;
  if (auto v = get("run.samples")) cfg.samples = parse_int(*v);
  if (auto v = get("run.side")) cfg.side = *v;
  if (auto v = get("run.method")) cfg.method = *v;
  if (auto v = get("run.format")) cfg.format = *v;
  if (auto v = get("run.out")) cfg.out = *v;
  if (auto v = get("run.dir")) cfg.dir = *v;
  if (auto v = get("run.figure")) cfg.figures = split_list(*v);
  if (auto v = get("run.suite")) cfg.suite = *v;
  if (auto v = get("solver.tol")) cfg.tol = parse_number(*v);
  if (auto v = get("solver.seeds")) cfg.seeds = parse_int(*v);
  if (auto v = get("solver.grid_n")) cfg.grid_n = parse_int(*v);
  if (auto v = get("solver.cell_size")) cfg.cell_size = parse_number(*v);
  if (auto v = get("solver.newton_tol")) cfg.newton_tol = parse_number(*v);
  if (auto v = get("solver.max_newton_iters")) cfg.max_newton_iters = parse_int(*v);
  if (auto v = get("solver.min_param_separation")) cfg.min_param_separation = parse_number(*v);
  if (auto v = get("solver.exclusion_radius")) cfg.exclusion_radius = parse_number(*v);
  if (auto v = get("solver.min_crossing_sine")) cfg.min_crossing_sine = parse_number(*v);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse_config(in);
}

void validate(const RunConfig& cfg) {
  one_of("operation", cfg.operation,
         {"sample", "offset", "envelope", "cusps", "crunodes", "render", "verify"});
  one_of("side", cfg.side, {"internal", "external", "both"});
  one_of("method", cfg.method, {"derivative", "curvature", "both"});
  one_of("family", cfg.family, {"constant", "nephroid", "line"});
  if (!cfg.format.empty()) one_of("format", cfg.format, {"csv", "json", "svg"});
  if (cfg.samples < 16) throw ConfigError("samples must be at least 16");

  const bool needs_d = cfg.operation == "offset" || cfg.operation == "cusps" || cfg.operation == "crunodes";
  if (needs_d && cfg.distances.empty()) throw ConfigError(cfg.operation + " needs at least one distance (--d)");
  for (double d : cfg.distances)
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("distances must be positive and finite");
  if (cfg.operation == "envelope" && cfg.family == "constant" && cfg.radii.empty())
    throw ConfigError("envelope needs at least one radius (--R)");
  for (double r : cfg.radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("radii must be positive and finite");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("tol must be positive");
}

}  // namespace envoff::cli
