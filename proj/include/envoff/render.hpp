#pragma once

#include <string>
#include <variant>
#include <vector>

#include "envoff/errors.hpp"
#include "envoff/offsets.hpp"
#include "envoff/vec2.hpp"

namespace envoff::render {

namespace palette {
inline constexpr const char* kProgenitor = "purple";
inline constexpr const char* kInternal = "darkgreen";
inline constexpr const char* kExternal = "blue";
inline constexpr const char* kSingular = "red";
inline constexpr const char* kEnvelope = "darkorange";
inline constexpr const char* kFamily = "gray";
}  // namespace palette

struct Style {
  std::string color = "black";
  double stroke_width = 1.5;
  /// SVG stroke-dasharray, empty for solid.
  std::string dash;
};

struct PolylineLayer {
  Polyline geometry;
  Style style;
};

struct CircleLayer {
  Vec2 center;
  double radius;
  Style style;
};

struct MarkerLayer {
  std::vector<Vec2> points;
  std::string color = palette::kSingular;
  double radius_px = 4.0;
};

using Layer = std::variant<PolylineLayer, CircleLayer, MarkerLayer>;

struct PlotSpec {
  Rect viewport{-2.0, -2.0, 2.0, 2.0};
  int width_px = 600;
  int height_px = 600;
  /// Drawn in order; markers always end up above curves.
  std::vector<Layer> layers;
  /// One plane unit maps to the same pixel length on both axes.
  bool equal_aspect = true;
  std::string title;
};

/// Raised for a plot without layers. The axes-only document is still
/// produced and available from svg().
class EmptyPlotError : public Error {
 public:
  explicit EmptyPlotError(std::string svg)
      : Error(ErrorCode::EmptyPlot, "plot has no layers"), svg_(std::move(svg)) {}
  const std::string& svg() const { return svg_; }

 private:
  std::string svg_;
};

/// Standalone SVG 1.1 document. Every polyline segment becomes its own path
/// element, so discontinuities are never bridged.
std::string render_svg(const PlotSpec& spec);

/// `<curve>_<op>_<d>.svg` with d printed as by %g.
std::string figure_filename(const std::string& curve, const std::string& op, double d);

}  // namespace envoff::render
