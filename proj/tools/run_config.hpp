#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace envoff::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run needs. Values left unset keep the library defaults.
struct RunConfig {
  std::string operation;
  std::string curve = "kiss";
  std::vector<double> curve_params;
  std::vector<double> distances;
  std::vector<double> radii;
  /// Envelope family: "constant" (circles of radius R on the curve),
  /// "nephroid" or "line".
  std::string family = "constant";
  int samples = 2048;
  std::string side = "both";
  std::string method = "both";
  std::string format;
  std::string out;
  std::string dir = ".";
  std::vector<std::string> figures;
  std::string suite = "all";

  std::optional<double> tol;
  std::optional<int> seeds;
  std::optional<int> grid_n;
  std::optional<double> cell_size;
  std::optional<double> newton_tol;
  std::optional<int> max_newton_iters;
  std::optional<double> min_param_separation;
  std::optional<double> exclusion_radius;
  std::optional<double> min_crossing_sine;
};

/// Sectioned key-value text:
///
///   [curve]   name, params
///   [run]     operation, d, R, family, samples, side, method, format, out,
///             dir, figure, suite
///   [solver]  tol, seeds, grid_n, cell_size, newton_tol, max_newton_iters,
///             min_param_separation, exclusion_radius, min_crossing_sine
///
/// Lists are separated by spaces or commas. Unknown keys are errors.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Numbers separated by spaces or commas; each may be a fraction p/q.
std::vector<double> parse_number_list(std::string_view text);
double parse_number(std::string_view text);

/// Checks the settings that `operation` depends on.
void validate(const RunConfig& cfg);

}  // namespace envoff::cli
