#pragma once

#include <variant>

#include "cyclecert/errors.hpp"
#include "cyclecert/primitives.hpp"
#include "cyclecert/tolerance.hpp"

namespace cyclecert {

enum class Vertex { a, b, c };

/// Non-degenerate triangle. Construction rejects coincident or collinear
/// vertices and any triangle whose smallest angle is below kMinAngle.
class Triangle {
 public:
  static constexpr double kMinAngle = 0.05;

  Triangle(Point a, Point b, Point c);

  Point a() const { return a_; }
  Point b() const { return b_; }
  Point c() const { return c_; }
  Point vertex(Vertex v) const;

  /// Side lengths opposite each vertex.
  double side_a() const { return distance(b_, c_); }
  double side_b() const { return distance(a_, c_); }
  double side_c() const { return distance(a_, b_); }

  double min_angle() const;
  /// Largest pairwise vertex distance; the default residual scale.
  double diameter() const;

 private:
  Point a_, b_, c_;
};

/// Interior angles (radians) at a, b, c. Unchecked: usable before
/// constructing a Triangle.
double min_vertex_angle(Point a, Point b, Point c);

// --- triangle centers -------------------------------------------------------

/// Positive-radius circle through the three vertices.
Cycle circumcircle(const Triangle& t);
/// Circle through three arbitrary points; throws collinear_input.
Cycle circle_through(Point p, Point q, Point r);

Point incenter(const Triangle& t);
double inradius(const Triangle& t);
/// Center of the excircle opposite the selected vertex.
Point excenter(const Triangle& t, Vertex opposite);
double exradius(const Triangle& t, Vertex opposite);

// --- circles and points -----------------------------------------------------

/// Midpoint of the arc of `circle` between b and c that does not contain
/// `avoid`.
Point arc_midpoint(const Cycle& circle, Point b, Point c, Point avoid,
                   const ToleranceContext& ctx = {});

/// |p - center|² - r².
double power_of_point(Point p, const Cycle& c);

/// Center of the positive-ratio homothety taking c1's circle onto c2's
/// (the external similitude center). Orientation signs are ignored.
Point monge_positive_center(const Cycle& c1, const Cycle& c2, const ToleranceContext& ctx = {});

/// Unsigned angle p-vertex-q in [0, pi].
double angle_at(Point vertex, Point p, Point q);

// --- lines ------------------------------------------------------------------

/// Line through p and q whose positive side is on the left of p -> q.
OrientedLine line_through(Point p, Point q);
/// Line through p and q whose positive side contains `toward`.
OrientedLine line_through(Point p, Point q, Point toward);
/// Line with the given point and unit normal.
OrientedLine line_with_normal(Point on_line, Point normal);

Point perpendicular_foot(const OrientedLine& l, Point q);
double distance(const OrientedLine& l, Point q);
/// Throws parallel_lines when the normals are (anti)parallel.
Point intersect(const OrientedLine& l1, const OrientedLine& l2);

/// Second intersection of a line or circle with `circle` given one known
/// common point. Throws no_second_intersection at tangential contact.
Point second_intersection(const OrientedLine& line, const Cycle& circle, Point known,
                          const ToleranceContext& ctx = {});
Point second_intersection(const Cycle& first, const Cycle& circle, Point known,
                          const ToleranceContext& ctx = {});

// --- inversion --------------------------------------------------------------

using Shape = std::variant<Point, OrientedLine, Cycle>;

/// Inversion x -> center + k2 (x - center)/|x - center|². Orientation of
/// images follows the region map: a circle not containing the center flips
/// sign, one containing it keeps sign, and a line's positive half-plane
/// maps onto the matching side of its image.
Shape invert(Point center, double k2, const Shape& obj, const ToleranceContext& ctx = {});
Point invert(Point center, double k2, Point p);
/// Throws center_on_object when the image would be a line.
Cycle invert_to_cycle(Point center, double k2, const Cycle& c, const ToleranceContext& ctx = {});

}  // namespace cyclecert
