#include "cyclecert/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cyclecert {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::degenerate_triangle: return "degenerate-triangle";
    case ErrorKind::points_not_on_circle: return "points-not-on-circle";
    case ErrorKind::coincident_points: return "coincident-points";
    case ErrorKind::point_at_center: return "point-at-center";
    case ErrorKind::center_on_object: return "center-on-object";
    case ErrorKind::equal_radii: return "equal-radii";
    case ErrorKind::inside_circle: return "inside-or-on-circle";
    case ErrorKind::no_solution: return "no-solution";
    case ErrorKind::parallel_lines: return "parallel-lines";
    case ErrorKind::not_tangent: return "not-tangent";
    case ErrorKind::under_determined: return "under-determined";
    case ErrorKind::collinear_input: return "collinear-input";
    case ErrorKind::rank_deficient: return "rank-deficient";
    case ErrorKind::off_conic: return "off-conic";
    case ErrorKind::no_second_intersection: return "no-second-intersection";
  }
  return "unknown";
}

ToleranceContext ToleranceContext::make(double eps_abs, double eps_rel, double scale) {
  if (!(eps_abs > 0.0) || !(eps_rel > 0.0) || !(scale > 0.0))
    throw GeometryError(ErrorKind::invalid_argument, "tolerances and scale must be positive");
  return {eps_abs, eps_rel, scale};
}

ToleranceContext ToleranceContext::with_scale(double s) const { return make(eps_abs, eps_rel, s); }

// --- Triangle ---------------------------------------------------------------

double angle_at(Point vertex, Point p, Point q) {
  const Point u = p - vertex;
  const Point v = q - vertex;
  if (norm2(u) == 0.0 || norm2(v) == 0.0)
    throw GeometryError(ErrorKind::coincident_points, "angle arm has zero length");
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

double min_vertex_angle(Point a, Point b, Point c) {
  return std::min({angle_at(a, b, c), angle_at(b, a, c), angle_at(c, a, b)});
}

Triangle::Triangle(Point a, Point b, Point c) : a_(a), b_(b), c_(c) {
  if (!is_finite(a) || !is_finite(b) || !is_finite(c))
    throw GeometryError(ErrorKind::degenerate_triangle, "non-finite vertex");
  if (a == b || b == c || a == c)
    throw GeometryError(ErrorKind::degenerate_triangle, "coincident vertices");
  const double d = diameter();
  if (std::abs(cross(b - a, c - a)) <= 1e-12 * d * d)
    throw GeometryError(ErrorKind::degenerate_triangle, "collinear vertices");
  if (min_angle() < kMinAngle)
    throw GeometryError(ErrorKind::degenerate_triangle, "minimum angle below 0.05 rad");
}

Point Triangle::vertex(Vertex v) const {
  switch (v) {
    case Vertex::a: return a_;
    case Vertex::b: return b_;
    case Vertex::c: return c_;
  }
  return a_;
}

double Triangle::min_angle() const { return min_vertex_angle(a_, b_, c_); }

double Triangle::diameter() const { return std::max({side_a(), side_b(), side_c()}); }

// --- centers ----------------------------------------------------------------

Cycle circle_through(Point p, Point q, Point r) {
  const Point u = q - p;
  const Point v = r - p;
  const double d = 2.0 * cross(u, v);
  const double span = std::max({norm2(u), norm2(v), norm2(r - q)});
  if (std::abs(d) <= 1e-14 * span)
    throw GeometryError(ErrorKind::collinear_input, "three points are collinear");
  const double uu = norm2(u);
  const double vv = norm2(v);
  const Point rel{(v.y * uu - u.y * vv) / d, (u.x * vv - v.x * uu) / d};
  const Point center = p + rel;
  const double radius = (distance(center, p) + distance(center, q) + distance(center, r)) / 3.0;
  return {center, radius};
}

Cycle circumcircle(const Triangle& t) { return circle_through(t.a(), t.b(), t.c()); }

Point incenter(const Triangle& t) {
  const double la = t.side_a(), lb = t.side_b(), lc = t.side_c();
  return (t.a() * la + t.b() * lb + t.c() * lc) / (la + lb + lc);
}

double inradius(const Triangle& t) {
  const double area2 = std::abs(cross(t.b() - t.a(), t.c() - t.a()));
  return area2 / (t.side_a() + t.side_b() + t.side_c());
}

Point excenter(const Triangle& t, Vertex opposite) {
  std::array<double, 3> w{t.side_a(), t.side_b(), t.side_c()};
  w[static_cast<int>(opposite)] *= -1.0;
  return (t.a() * w[0] + t.b() * w[1] + t.c() * w[2]) / (w[0] + w[1] + w[2]);
}

double exradius(const Triangle& t, Vertex opposite) {
  const double area = 0.5 * std::abs(cross(t.b() - t.a(), t.c() - t.a()));
  const double s = 0.5 * (t.side_a() + t.side_b() + t.side_c());
  const std::array<double, 3> sides{t.side_a(), t.side_b(), t.side_c()};
  return area / (s - sides[static_cast<int>(opposite)]);
}

// --- circles and points -----------------------------------------------------

Point arc_midpoint(const Cycle& circle, Point b, Point c, Point avoid, const ToleranceContext& ctx) {
  const double radius = circle.radius();
  const double tol = 10.0 * ctx.bar();
  for (Point q : {b, c, avoid}) {
    if (std::abs(distance(q, circle.center) - radius) > tol)
      throw GeometryError(ErrorKind::points_not_on_circle, "arc endpoint or witness is off the circle");
  }
  if (distance(b, c) <= ctx.bar())
    throw GeometryError(ErrorKind::coincident_points, "arc endpoints coincide");
  const Point chord = c - b;
  const double avoid_side = cross(chord, avoid - b);
  if (std::abs(avoid_side) <= ctx.bar() * norm(chord))
    throw GeometryError(ErrorKind::invalid_argument, "avoid witness lies on the chord");
  const Point u = perp(normalized(chord));
  const Point m1 = circle.center + u * radius;
  const Point m2 = circle.center - u * radius;
  return (cross(chord, m1 - b) * avoid_side < 0.0) ? m1 : m2;
}

double power_of_point(Point p, const Cycle& c) { return norm2(p - c.center) - c.r * c.r; }

Point monge_positive_center(const Cycle& c1, const Cycle& c2, const ToleranceContext& ctx) {
  const double r1 = c1.radius();
  const double r2 = c2.radius();
  if (std::abs(r1 - r2) <= ctx.bar())
    throw GeometryError(ErrorKind::equal_radii, "positive homothety center is at infinity");
  return (c1.center * r2 - c2.center * r1) / (r2 - r1);
}

// --- lines ------------------------------------------------------------------

OrientedLine line_through(Point p, Point q) {
  if (p == q) throw GeometryError(ErrorKind::coincident_points, "line through coincident points");
  const Point n = perp(normalized(q - p));
  return {n, dot(n, p)};
}

OrientedLine line_through(Point p, Point q, Point toward) {
  OrientedLine l = line_through(p, q);
  return l.signed_distance(toward) < 0.0 ? l.flipped() : l;
}

OrientedLine line_with_normal(Point on_line, Point normal) {
  const Point n = normalized(normal);
  return {n, dot(n, on_line)};
}

Point perpendicular_foot(const OrientedLine& l, Point q) { return l.foot(q); }

double distance(const OrientedLine& l, Point q) { return std::abs(l.signed_distance(q)); }

Point intersect(const OrientedLine& l1, const OrientedLine& l2) {
  const double det = cross(l1.n, l2.n);
  if (std::abs(det) < 1e-12) throw GeometryError(ErrorKind::parallel_lines, "lines do not meet");
  return {(l1.p * l2.n.y - l2.p * l1.n.y) / det, (l1.n.x * l2.p - l2.n.x * l1.p) / det};
}

Point second_intersection(const OrientedLine& line, const Cycle& circle, Point known,
                          const ToleranceContext& ctx) {
  const Point d = line.direction();
  const double t = -2.0 * dot(d, known - circle.center);
  if (std::abs(t) <= ctx.bar())
    throw GeometryError(ErrorKind::no_second_intersection, "line is tangent at the known point");
  return known + d * t;
}

Point second_intersection(const Cycle& first, const Cycle& circle, Point known,
                          const ToleranceContext& ctx) {
  const Point axis = circle.center - first.center;
  if (norm(axis) <= ctx.bar())
    throw GeometryError(ErrorKind::no_second_intersection, "concentric circles");
  const Point u = normalized(axis);
  const Point v = known - first.center;
  const Point reflected = first.center + u * (2.0 * dot(v, u)) - v;
  if (distance(reflected, known) <= ctx.bar())
    throw GeometryError(ErrorKind::no_second_intersection, "circles touch at the known point");
  return reflected;
}

// --- inversion --------------------------------------------------------------

Point invert(Point center, double k2, Point p) {
  const Point d = p - center;
  const double d2 = norm2(d);
  if (d2 == 0.0) throw GeometryError(ErrorKind::point_at_center, "cannot invert the center");
  return center + d * (k2 / d2);
}

namespace {

Shape invert_cycle(Point center, double k2, const Cycle& c, const ToleranceContext& ctx) {
  if (c.is_point()) return Cycle{invert(center, k2, c.center), 0.0};
  const double radius = c.radius();
  const double offset = distance(c.center, center);
  if (std::abs(offset - radius) <= ctx.bar()) {
    const Point u = normalized(c.center - center);
    const Point q = center + u * (k2 / (2.0 * radius));
    Point n = u * (k2 > 0.0 ? -1.0 : 1.0);
    if (c.r < 0.0) n = -n;
    return OrientedLine{n, dot(n, q)};
  }
  const double power = power_of_point(center, c);
  const Point image_center = center + (c.center - center) * (k2 / power);
  const double image_radius = std::abs(k2) * radius / std::abs(power);
  const double sign = (c.r > 0.0 ? 1.0 : -1.0) * (power > 0.0 ? -1.0 : 1.0);
  return Cycle{image_center, sign * image_radius};
}

Shape invert_line(Point center, double k2, const OrientedLine& l, const ToleranceContext& ctx) {
  const double side = l.signed_distance(center);
  if (std::abs(side) <= ctx.bar()) return l;
  const Point image_of_foot = invert(center, k2, l.foot(center));
  const double radius = 0.5 * distance(image_of_foot, center);
  return Cycle{midpoint(center, image_of_foot), side > 0.0 ? radius : -radius};
}

}  // namespace

Shape invert(Point center, double k2, const Shape& obj, const ToleranceContext& ctx) {
  if (k2 == 0.0) throw GeometryError(ErrorKind::invalid_argument, "inversion power must be nonzero");
  return std::visit(
      [&](const auto& o) -> Shape {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Point>)
          return invert(center, k2, o);
        else if constexpr (std::is_same_v<T, Cycle>)
          return invert_cycle(center, k2, o, ctx);
        else
          return invert_line(center, k2, o, ctx);
      },
      obj);
}

Cycle invert_to_cycle(Point center, double k2, const Cycle& c, const ToleranceContext& ctx) {
  const Shape image = invert(center, k2, Shape{c}, ctx);
  if (const auto* cyc = std::get_if<Cycle>(&image)) return *cyc;
  throw GeometryError(ErrorKind::center_on_object, "cycle passes through the inversion center");
}

}  // namespace cyclecert
