#pragma once

#include <cmath>

namespace cyclecert {

/// A point (or displacement vector) in the plane, in scene units.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(Point a) { return {-a.x, -a.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
inline Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point normalized(Point a) { return a / norm(a); }
/// Counter-clockwise quarter turn.
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point midpoint(Point a, Point b) { return (a + b) * 0.5; }
inline Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }
inline Point unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline bool is_finite(Point a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Oriented line {x : n·x = p}. The normal n points to the positive side;
/// the direction of travel is n turned clockwise, so the positive side is
/// on the left.
struct OrientedLine {
  Point n{0.0, 1.0};
  double p = 0.0;

  double signed_distance(Point q) const { return dot(n, q) - p; }
  Point direction() const { return {n.y, -n.x}; }
  Point foot(Point q) const { return q - n * signed_distance(q); }
  Point point_at(double s) const { return n * p + direction() * s; }
  double parameter_of(Point q) const { return dot(direction(), q); }
  OrientedLine flipped() const { return {-n, -p}; }
};

/// Oriented circle. The sign of r encodes orientation (positive means
/// counter-clockwise); r == 0 is a point-cycle.
struct Cycle {
  Point center;
  double r = 0.0;

  double radius() const { return std::abs(r); }
  bool is_point() const { return r == 0.0; }
  Point at_angle(double angle) const { return center + unit_vector(angle) * radius(); }
  Cycle flipped() const { return {center, -r}; }
};

/// Focus/directrix parabola.
struct Parabola {
  Point focus;
  OrientedLine directrix;
};

}  // namespace cyclecert
