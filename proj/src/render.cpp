#include "envoff/render.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

namespace envoff::render {

namespace {

constexpr double kMarginPx = 12.0;

class Mapper {
 public:
  Mapper(const PlotSpec& spec) : vp_(spec.viewport) {
    const double w = spec.width_px - 2.0 * kMarginPx;
    const double h = spec.height_px - 2.0 * kMarginPx;
    sx_ = w / vp_.width();
    sy_ = h / vp_.height();
    if (spec.equal_aspect) sx_ = sy_ = std::min(sx_, sy_);
    // centre the drawing inside the canvas
    ox_ = 0.5 * (spec.width_px - sx_ * vp_.width());
    oy_ = 0.5 * (spec.height_px - sy_ * vp_.height());
  }

  double x(double px) const { return ox_ + (px - vp_.xmin) * sx_; }
  double y(double py) const { return oy_ + (vp_.ymax - py) * sy_; }
  double length(double d) const { return d * sx_; }
  Rect frame() const { return {x(vp_.xmin), y(vp_.ymax), x(vp_.xmax), y(vp_.ymin)}; }

 private:
  Rect vp_;
  double sx_ = 1.0, sy_ = 1.0, ox_ = 0.0, oy_ = 0.0;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string stroke_attrs(const Style& st) {
  std::string s = fmt::format(R"(fill="none" stroke="{}" stroke-width="{:.2f}")", escape(st.color), st.stroke_width);
  if (!st.dash.empty()) s += fmt::format(R"( stroke-dasharray="{}")", escape(st.dash));
  return s;
}

void require_finite(Vec2 p) {
  if (!is_finite(p)) throw Error(ErrorCode::InvalidArgument, "cannot render a non-finite point");
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  if (!(spec.viewport.width() > 0.0) || !(spec.viewport.height() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "plot viewport is degenerate");
  if (spec.width_px < 2 * kMarginPx + 1 || spec.height_px < 2 * kMarginPx + 1)
    throw Error(ErrorCode::InvalidArgument, "plot size too small");

  const Mapper m(spec);
  const Rect f = m.frame();
  std::string out;
  auto w = std::back_inserter(out);

  fmt::format_to(w, "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
  fmt::format_to(w,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
                 "viewBox=\"0 0 {0} {1}\">\n",
                 spec.width_px, spec.height_px);
  if (!spec.title.empty()) fmt::format_to(w, "<title>{}</title>\n", escape(spec.title));
  fmt::format_to(w, "<defs><clipPath id=\"viewport\"><rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" "
                    "height=\"{:.3f}\"/></clipPath></defs>\n",
                 f.xmin, f.ymin, f.width(), f.height());
  fmt::format_to(w, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

  // axes
  fmt::format_to(w, "<g id=\"axes\" stroke=\"black\" stroke-width=\"0.75\" fill=\"none\">\n");
  fmt::format_to(w, "<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\"/>\n", f.xmin, f.ymin,
                 f.width(), f.height());
  const Rect& vp = spec.viewport;
  if (vp.ymin <= 0.0 && vp.ymax >= 0.0)
    fmt::format_to(w, "<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", f.xmin, m.y(0.0), f.xmax,
                   m.y(0.0));
  if (vp.xmin <= 0.0 && vp.xmax >= 0.0)
    fmt::format_to(w, "<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", m.x(0.0), f.ymin, m.x(0.0),
                   f.ymax);
  fmt::format_to(w, "</g>\n");

  std::size_t id = 0;
  for (const Layer& layer : spec.layers) {
    if (const auto* pl = std::get_if<PolylineLayer>(&layer)) {
      fmt::format_to(w, "<g id=\"layer-{}\" class=\"polyline\" clip-path=\"url(#viewport)\" {}>\n", id,
                     stroke_attrs(pl->style));
      for (const auto& seg : pl->geometry.segments) {
        if (seg.empty()) continue;
        out += "<path d=\"";
        for (std::size_t i = 0; i < seg.size(); ++i) {
          require_finite(seg[i]);
          fmt::format_to(w, "{}{:.3f} {:.3f}", i == 0 ? "M" : " L", m.x(seg[i].x), m.y(seg[i].y));
        }
        out += "\"/>\n";
      }
      fmt::format_to(w, "</g>\n");
    } else if (const auto* cl = std::get_if<CircleLayer>(&layer)) {
      require_finite(cl->center);
      fmt::format_to(w, "<g id=\"layer-{}\" class=\"circle\" clip-path=\"url(#viewport)\" {}>\n", id,
                     stroke_attrs(cl->style));
      fmt::format_to(w, "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\"/>\n</g>\n", m.x(cl->center.x),
                     m.y(cl->center.y), m.length(cl->radius));
    }
    ++id;
  }

  id = 0;
  for (const Layer& layer : spec.layers) {
    if (const auto* mk = std::get_if<MarkerLayer>(&layer)) {
      fmt::format_to(w, "<g id=\"layer-{}\" class=\"markers\" fill=\"{}\" stroke=\"none\">\n", id,
                     escape(mk->color));
      for (const Vec2& p : mk->points) {
        require_finite(p);
        fmt::format_to(w, "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.2f}\"/>\n", m.x(p.x), m.y(p.y),
                       mk->radius_px);
      }
      fmt::format_to(w, "</g>\n");
    }
    ++id;
  }
  out += "</svg>\n";

  if (spec.layers.empty()) throw EmptyPlotError(std::move(out));
  return out;
}

std::string figure_filename(const std::string& curve, const std::string& op, double d) {
  return fmt::format("{}_{}_{:g}.svg", curve, op, d);
}

}  // namespace envoff::render
