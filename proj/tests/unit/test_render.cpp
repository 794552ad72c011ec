#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "envoff/offsets.hpp"
#include "envoff/render.hpp"

using namespace envoff;
using namespace envoff::render;
namespace pt = boost::property_tree;

namespace {

pt::ptree parse_svg(const std::string& svg) {
  std::istringstream in(svg);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

PlotSpec kiss_with_cusp_markers() {
  PlotSpec spec;
  spec.viewport = {-2, -2, 2, 2};
  spec.layers.push_back(MarkerLayer{{{1, 0}, {-1, 0}}});
  spec.layers.push_back(PolylineLayer{offset_polyline(make_kiss(), {1.0, Side::Internal}, 200),
                                      {palette::kInternal, 1.5, ""}});
  return spec;
}

}  // namespace

TEST(RenderSvg, WellFormedWithOnePathPerSegment) {
  const Polyline line = offset_polyline(make_kiss(), {0.5, Side::External}, 300);
  PlotSpec spec;
  spec.layers.push_back(PolylineLayer{line, {palette::kExternal, 1.5, ""}});
  const std::string svg = render_svg(spec);
  const pt::ptree tree = parse_svg(svg);
  EXPECT_EQ(tree.get<std::string>("svg.<xmlattr>.version"), "1.1");
  EXPECT_EQ(count(svg, "<path "), line.segments.size());
  // M plus one L per further point.
  EXPECT_EQ(count(svg, " L"), line.point_count() - line.segments.size());
}

TEST(RenderSvg, KissCurveSinglePath) {
  PlotSpec spec;
  spec.layers.push_back(PolylineLayer{sample_curve(make_kiss(), 256), {palette::kProgenitor, 1.5, ""}});
  const std::string svg = render_svg(spec);
  EXPECT_EQ(count(svg, "<path "), 1u);
  EXPECT_NE(svg.find("stroke=\"purple\""), std::string::npos);
}

TEST(RenderSvg, MarkersDrawnLast) {
  const std::string svg = render_svg(kiss_with_cusp_markers());
  const auto markers = svg.find("class=\"markers\"");
  const auto curve = svg.rfind("<path ");
  ASSERT_NE(markers, std::string::npos);
  EXPECT_GT(markers, curve);
  EXPECT_EQ(count(svg, "fill=\"red\""), 1u);
  EXPECT_NO_THROW(parse_svg(svg));
}

TEST(RenderSvg, EqualAspectKeepsCirclesRound) {
  PlotSpec spec;
  spec.viewport = {-4, -1, 4, 1};
  spec.layers.push_back(CircleLayer{{0, 0}, 1.0, {}});
  const std::string svg = render_svg(spec);
  // 8 units wide into 576 px gives 72 px per unit on both axes.
  EXPECT_NE(svg.find("r=\"72.000\""), std::string::npos);
}

TEST(RenderSvg, EmptyPlotStillHasAxes) {
  PlotSpec spec;
  try {
    (void)render_svg(spec);
    FAIL() << "expected EmptyPlotError";
  } catch (const EmptyPlotError& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPlot);
    EXPECT_NE(e.svg().find("id=\"axes\""), std::string::npos);
    EXPECT_NO_THROW(parse_svg(e.svg()));
  }
}

TEST(RenderSvg, RejectsDegenerateViewport) {
  PlotSpec spec;
  spec.viewport = {0, 0, 0, 1};
  spec.layers.push_back(CircleLayer{{0, 0}, 1.0, {}});
  try {
    (void)render_svg(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(RenderSvg, EscapesTitle) {
  PlotSpec spec = kiss_with_cusp_markers();
  spec.title = "a<b & c";
  const std::string svg = render_svg(spec);
  EXPECT_NE(svg.find("<title>a&lt;b &amp; c</title>"), std::string::npos);
  EXPECT_NO_THROW(parse_svg(svg));
}

TEST(RenderSvg, Deterministic) {
  EXPECT_EQ(render_svg(kiss_with_cusp_markers()), render_svg(kiss_with_cusp_markers()));
}

TEST(FigureFilename, Convention) {
  EXPECT_EQ(figure_filename("kiss", "offset", 0.5), "kiss_offset_0.5.svg");
  EXPECT_EQ(figure_filename("kiss", "cusps", 1.0), "kiss_cusps_1.svg");
  EXPECT_EQ(figure_filename("kiss", "offset", 1.0 / 3), "kiss_offset_0.333333.svg");
  EXPECT_EQ(figure_filename("ellipse", "crunodes", 10.0), "ellipse_crunodes_10.svg");
}
