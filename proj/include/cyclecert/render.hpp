#pragma once

#include <string>
#include <string_view>

#include "cyclecert/scene.hpp"

namespace cyclecert {

/// Drawing order, bottom to top.
enum class Layer { circles, lines, points };

/// Parabolas go with the circles, point-cycles with the points.
Layer layer_of(const Element& e);

struct RenderStyle {
  double width = 800.0;  // canvas, pixels
  double height = 800.0;
  double margin = 40.0;
  double circle_stroke = 1.5;
  double line_stroke = 1.0;
  double parabola_stroke = 1.5;
  double point_radius = 3.0;
  double font_size = 14.0;
  double label_dx = 6.0;  // label offset from its anchor, pixels, y down
  double label_dy = -6.0;
  bool label_points = true;
  bool label_curves = false;
  int parabola_samples = 256;
  std::string circle_color = "#1f4e9c";
  std::string line_color = "#6b6b6b";
  std::string parabola_color = "#2e7d32";
  std::string point_color = "#b71c1c";

  /// Sets one field from text, e.g. ("width", "640"). Throws
  /// GeometryError(invalid_argument) for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  /// Throws unless the canvas is strictly larger than twice the margin and
  /// all sizes are non-negative.
  void validate() const;
};

/// Standalone SVG. The scene's y-up coordinates sit inside one group whose
/// transform flips to SVG's y-down frame; labels are drawn outside it so
/// text stays upright. The viewport is the bounding box of points and
/// circles plus the margin; lines are clipped to it. Output depends only on
/// the scene and the style.
std::string render_svg(const Scene& scene, const RenderStyle& style = {});

}  // namespace cyclecert
