#include "cyclecert/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "cyclecert/errors.hpp"

namespace cyclecert {

namespace {

// Stroke widths are given in pixels, not scene units.
constexpr const char* kKeepStroke = " vector-effect=\"non-scaling-stroke\"";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Box {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  void add(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  bool empty() const { return !(x0 <= x1 && y0 <= y1); }
};

Box bounding_box(const Scene& scene) {
  Box b;
  for (const auto& [name, e] : scene.elements()) {
    if (const auto* p = std::get_if<Point>(&e)) {
      if (is_finite(*p)) b.add(*p);
    } else if (const auto* c = std::get_if<Cycle>(&e)) {
      const double r = c->radius();
      if (is_finite(c->center) && std::isfinite(r)) {
        b.add(c->center - Point{r, r});
        b.add(c->center + Point{r, r});
      }
    }
  }
  if (b.empty()) return {-1.0, -1.0, 1.0, 1.0};
  // A single point or an axis-parallel run still needs a 2-D window.
  const double extent = std::max(b.x1 - b.x0, b.y1 - b.y0);
  const double pad = extent > 0.0 ? extent / 2.0 : 1.0;
  if (b.x1 - b.x0 == 0.0) b.x0 -= pad, b.x1 += pad;
  if (b.y1 - b.y0 == 0.0) b.y0 -= pad, b.y1 += pad;
  return b;
}

// Segment of the line inside the box (Liang-Barsky on the line's parameter).
std::optional<std::pair<Point, Point>> clip(const OrientedLine& l, const Box& b) {
  const Point o = l.point_at(0.0);
  const Point d = l.direction();
  double lo = -INFINITY, hi = INFINITY;
  auto slab = [&](double origin, double dir, double min, double max) {
    if (std::abs(dir) < 1e-15) return origin >= min && origin <= max;
    double t0 = (min - origin) / dir, t1 = (max - origin) / dir;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    return lo <= hi;
  };
  if (!slab(o.x, d.x, b.x0, b.x1) || !slab(o.y, d.y, b.y0, b.y1)) return std::nullopt;
  return std::pair{o + d * lo, o + d * hi};
}

double parse_number(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v))
    throw GeometryError(ErrorKind::invalid_argument,
                        "style '" + std::string(key) + "' needs a number, got '" + std::string(value) + "'");
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw GeometryError(ErrorKind::invalid_argument,
                      "style '" + std::string(key) + "' needs true or false, got '" + std::string(value) + "'");
}

}  // namespace

Layer layer_of(const Element& e) {
  if (std::holds_alternative<Point>(e)) return Layer::points;
  if (std::holds_alternative<OrientedLine>(e)) return Layer::lines;
  if (const auto* c = std::get_if<Cycle>(&e); c && c->is_point()) return Layer::points;
  return Layer::circles;
}

void RenderStyle::set(std::string_view key, std::string_view value) {
  struct NumberField {
    const char* key;
    double RenderStyle::*field;
  };
  static const NumberField numbers[] = {
      {"width", &RenderStyle::width},
      {"height", &RenderStyle::height},
      {"margin", &RenderStyle::margin},
      {"circle_stroke", &RenderStyle::circle_stroke},
      {"line_stroke", &RenderStyle::line_stroke},
      {"parabola_stroke", &RenderStyle::parabola_stroke},
      {"point_radius", &RenderStyle::point_radius},
      {"font_size", &RenderStyle::font_size},
      {"label_dx", &RenderStyle::label_dx},
      {"label_dy", &RenderStyle::label_dy},
  };
  for (const auto& f : numbers) {
    if (key == f.key) {
      this->*f.field = parse_number(key, value);
      return;
    }
  }
  if (key == "label_points") {
    label_points = parse_bool(key, value);
  } else if (key == "label_curves") {
    label_curves = parse_bool(key, value);
  } else if (key == "parabola_samples") {
    const double n = parse_number(key, value);
    if (n != std::floor(n) || n < 2 || n > 1e6)
      throw GeometryError(ErrorKind::invalid_argument, "parabola_samples must be an integer of at least 2");
    parabola_samples = static_cast<int>(n);
  } else if (key == "circle_color" || key == "line_color" || key == "parabola_color" || key == "point_color") {
    if (value.empty() || value.find_first_of("<>&\"'") != std::string_view::npos)
      throw GeometryError(ErrorKind::invalid_argument, "bad color '" + std::string(value) + "'");
    std::string& slot = key == "circle_color"     ? circle_color
                        : key == "line_color"     ? line_color
                        : key == "parabola_color" ? parabola_color
                                                  : point_color;
    slot = value;
  } else {
    throw GeometryError(ErrorKind::invalid_argument, "unknown style key '" + std::string(key) + "'");
  }
}

void RenderStyle::validate() const {
  if (!(width > 0.0 && height > 0.0))
    throw GeometryError(ErrorKind::invalid_argument, "canvas size must be positive");
  if (!(margin >= 0.0) || !(width > 2.0 * margin && height > 2.0 * margin))
    throw GeometryError(ErrorKind::invalid_argument, "margin must leave a positive drawing area");
  for (double v : {circle_stroke, line_stroke, parabola_stroke, point_radius, font_size})
    if (!(v >= 0.0)) throw GeometryError(ErrorKind::invalid_argument, "sizes must be non-negative");
  if (parabola_samples < 2) throw GeometryError(ErrorKind::invalid_argument, "parabola_samples must be at least 2");
}

std::string render_svg(const Scene& scene, const RenderStyle& style) {
  style.validate();
  const Box box = bounding_box(scene);
  const double inner_w = style.width - 2.0 * style.margin;
  const double inner_h = style.height - 2.0 * style.margin;
  const double bw = box.x1 - box.x0, bh = box.y1 - box.y0;
  const double s = std::min(inner_w / bw, inner_h / bh);
  const double tx = style.margin + (inner_w - s * bw) / 2.0 - s * box.x0;
  const double ty = style.height - style.margin - (inner_h - s * bh) / 2.0 + s * box.y0;
  auto to_pixels = [&](Point p) { return Point{tx + s * p.x, ty - s * p.y}; };

  // Everything visible on the canvas, margin included, in scene units.
  const Box view{(0.0 - tx) / s, (ty - style.height) / s, (style.width - tx) / s, ty / s};

  std::string circles, lines, points, labels;
  auto label = [&](const std::string& name, Point anchor) {
    const Point px = to_pixels(anchor);
    labels += "    <text x=\"" + fmt(px.x + style.label_dx) + "\" y=\"" + fmt(px.y + style.label_dy) + "\">" +
              escape(name) + "</text>\n";
  };

  for (const auto& [name, e] : scene.elements()) {
    const std::string id = "id=\"" + escape(name) + "\"";
    if (const auto* p = std::get_if<Point>(&e)) {
      if (!is_finite(*p)) continue;
      points += "      <circle " + id + " cx=\"" + fmt(p->x) + "\" cy=\"" + fmt(p->y) + "\" r=\"" +
                fmt(style.point_radius / s) + "\"/>\n";
      if (style.label_points) label(name, *p);
    } else if (const auto* c = std::get_if<Cycle>(&e)) {
      if (c->is_point()) {
        points += "      <circle " + id + " cx=\"" + fmt(c->center.x) + "\" cy=\"" + fmt(c->center.y) + "\" r=\"" +
                  fmt(style.point_radius / s) + "\"/>\n";
        if (style.label_points) label(name, c->center);
        continue;
      }
      circles += "      <circle " + id + kKeepStroke + " cx=\"" + fmt(c->center.x) + "\" cy=\"" + fmt(c->center.y) + "\" r=\"" +
                 fmt(c->radius()) + "\"/>\n";
      if (style.label_curves) label(name, c->center + unit_vector(std::numbers::pi / 4) * c->radius());
    } else if (const auto* l = std::get_if<OrientedLine>(&e)) {
      const auto seg = clip(*l, view);
      if (!seg) continue;
      lines += "      <line " + id + kKeepStroke + " x1=\"" + fmt(seg->first.x) + "\" y1=\"" + fmt(seg->first.y) + "\" x2=\"" +
               fmt(seg->second.x) + "\" y2=\"" + fmt(seg->second.y) + "\"/>\n";
      if (style.label_curves) label(name, midpoint(seg->first, seg->second));
    } else if (const auto* par = std::get_if<Parabola>(&e)) {
      // Points over the directrix parameter u: foot(u) + n (d² + h²)/(2h).
      const OrientedLine& m = par->directrix;
      const double h = m.signed_distance(par->focus);
      if (h == 0.0) continue;
      const double u0 = m.parameter_of(par->focus);
      const double span = std::hypot(view.x1 - view.x0, view.y1 - view.y0);
      std::string pts;
      for (int i = 0; i < style.parabola_samples; ++i) {
        const double u = u0 - span + 2.0 * span * i / (style.parabola_samples - 1);
        const double d = u - u0;
        const Point q = m.point_at(u) + m.n * ((d * d + h * h) / (2.0 * h));
        if (i) pts += ' ';
        pts += fmt(q.x) + "," + fmt(q.y);
      }
      circles += "      <polyline " + id + kKeepStroke + " class=\"parabola\" stroke=\"" + style.parabola_color +
                 "\" stroke-width=\"" + fmt(style.parabola_stroke) + "\" points=\"" + pts + "\"/>\n";
      if (style.label_curves) label(name, (par->focus + m.foot(par->focus)) * 0.5);
    }
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width) + "\" height=\"" +
         fmt(style.height) + "\" viewBox=\"0 0 " + fmt(style.width) + " " + fmt(style.height) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "  <g id=\"scene\" transform=\"matrix(" + fmt(s) + " 0 0 " + fmt(-s) + " " + fmt(tx) + " " + fmt(ty) +
         ")\">\n";
  out += "    <g id=\"circles\" fill=\"none\" stroke=\"" + style.circle_color + "\" stroke-width=\"" +
         fmt(style.circle_stroke) + "\">\n" + circles + "    </g>\n";
  out += "    <g id=\"lines\" fill=\"none\" stroke=\"" + style.line_color + "\" stroke-width=\"" +
         fmt(style.line_stroke) + "\">\n" + lines + "    </g>\n";
  out += "    <g id=\"points\" fill=\"" + style.point_color + "\" stroke=\"none\">\n" + points + "    </g>\n";
  out += "  </g>\n";
  out += "  <g id=\"labels\" font-family=\"sans-serif\" font-size=\"" + fmt(style.font_size) + "\">\n" + labels +
         "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace cyclecert
