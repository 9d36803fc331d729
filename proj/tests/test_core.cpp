#include <doctest.h>

#include <cmath>

#include "cyclecert/core.hpp"
#include "oracles.hpp"

using namespace cyclecert;
using cyclecert::testing::circumcenter_oracle;
using cyclecert::testing::distance_to_line;
using cyclecert::testing::random_triangle;

namespace {

const Triangle kRight({0, 0}, {4, 0}, {0, 3});

Triangle equilateral() {
  return Triangle(unit_vector(0.0), unit_vector(2.0 * M_PI / 3.0), unit_vector(4.0 * M_PI / 3.0));
}

bool near(Point p, Point q, double tol = 1e-12) { return distance(p, q) <= tol; }

double bar(const Triangle& t) { return ToleranceContext{}.with_scale(t.diameter()).bar(); }

void check_equidistant(const Triangle& t, Point x, double r) {
  const double tol = bar(t);
  CHECK(std::abs(distance_to_line(t.a(), t.b(), x) - r) <= tol);
  CHECK(std::abs(distance_to_line(t.b(), t.c(), x) - r) <= tol);
  CHECK(std::abs(distance_to_line(t.c(), t.a(), x) - r) <= tol);
}

}  // namespace

TEST_CASE("triangle rejects degenerate input") {
  CHECK_THROWS_AS(Triangle({0, 0}, {0, 0}, {1, 1}), GeometryError);
  CHECK_THROWS_AS(Triangle({0, 0}, {1, 1}, {2, 2}), GeometryError);
  // Smallest angle below the 0.05 rad floor.
  CHECK_THROWS_AS(Triangle({0, 0}, {10, 0}, {5, 0.1}), GeometryError);
  try {
    Triangle({0, 0}, {1, 1}, {2, 2});
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::degenerate_triangle);
  }
}

TEST_CASE("circumcircle") {
  const Cycle c = circumcircle(kRight);
  CHECK(near(c.center, {2, 1.5}));
  CHECK(c.r == doctest::Approx(2.5).epsilon(1e-14));

  const Cycle e = circumcircle(equilateral());
  CHECK(near(e.center, {0, 0}));
  CHECK(e.r == doctest::Approx(1.0).epsilon(1e-14));

  const Triangle t({0, 0}, {5, 1}, {2, 7});
  const Point o = circumcenter_oracle(t.a(), t.b(), t.c());
  CHECK(near(circumcircle(t).center, o));
  CHECK(std::abs(circumcircle(t).r - distance(o, t.a())) <= 1e-12);
}

TEST_CASE("circle_through rejects collinear points") {
  CHECK_THROWS_AS(circle_through({0, 0}, {1, 0}, {2, 0}), GeometryError);
  const Cycle c = circle_through({1, 0}, {0, 1}, {-1, 0});
  CHECK(near(c.center, {0, 0}));
  CHECK(c.r == doctest::Approx(1.0));
}

TEST_CASE("incenter and inradius") {
  CHECK(near(incenter(kRight), {1, 1}));
  CHECK(inradius(kRight) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(near(incenter(equilateral()), {0, 0}, 1e-15));
}

TEST_CASE("excenter of the right triangle") {
  const Point j = excenter(kRight, Vertex::c);
  CHECK(near(j, {3, -3}));
  CHECK(exradius(kRight, Vertex::c) == doctest::Approx(3.0));
  // Distance 3 to y=0, x=0 and 3x+4y-12=0.
  CHECK(std::abs(j.y) == doctest::Approx(3.0));
  CHECK(std::abs(j.x) == doctest::Approx(3.0));
  CHECK(std::abs(3 * j.x + 4 * j.y - 12) / 5 == doctest::Approx(3.0));
}

TEST_CASE("excenter of an equilateral triangle is the vertex reflected through the opposite midpoint") {
  const Triangle t = equilateral();
  CHECK(near(excenter(t, Vertex::a), midpoint(t.b(), t.c()) * 2.0 - t.a()));
  CHECK(near(excenter(t, Vertex::b), midpoint(t.a(), t.c()) * 2.0 - t.b()));
  CHECK(near(excenter(t, Vertex::c), midpoint(t.a(), t.b()) * 2.0 - t.c()));
}

TEST_CASE("centers are equidistant from the side lines on random triangles") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Triangle t = random_triangle(rng);
    check_equidistant(t, incenter(t), inradius(t));
    for (Vertex v : {Vertex::a, Vertex::b, Vertex::c}) check_equidistant(t, excenter(t, v), exradius(t, v));
    const Cycle c = circumcircle(t);
    for (Point p : {t.a(), t.b(), t.c()}) CHECK(std::abs(distance(c.center, p) - c.r) <= bar(t));
  }
}

TEST_CASE("excenter lies on the internal bisector from its vertex") {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Triangle t = random_triangle(rng);
    const Point j = excenter(t, Vertex::b);
    CHECK(angle_at(t.b(), t.a(), j) == doctest::Approx(angle_at(t.b(), j, t.c())).epsilon(1e-9));
  }
}

TEST_CASE("arc midpoint") {
  const Cycle unit{{0, 0}, 1};
  CHECK(near(arc_midpoint(unit, {1, 0}, {-1, 0}, {0, 1}), {0, -1}));
  CHECK(near(arc_midpoint(unit, {1, 0}, {0, 1}, {-1, 0}), {std::sqrt(0.5), std::sqrt(0.5)}));
  CHECK_THROWS_AS(arc_midpoint(unit, {1, 0}, {1, 0}, {0, 1}), GeometryError);
  CHECK_THROWS_AS(arc_midpoint(unit, {2, 0}, {-1, 0}, {0, 1}), GeometryError);

  // Oracle: the two crossings of the perpendicular bisector of bc with the
  // circle; the answer is the one on the other side of bc from `avoid`.
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Cycle c = cyclecert::testing::random_cycle(rng, 0.3, 2.0);
    const double t1 = rng.uniform(0, 2 * M_PI), t2 = t1 + rng.uniform(0.3, 2 * M_PI - 0.3);
    const double ta = rng.uniform(t1 + 0.05, t2 - 0.05);
    const Point b = c.at_angle(t1), q = c.at_angle(t2), avoid = c.at_angle(ta);
    const Point u = normalized(perp(q - b));
    const Point m1 = c.center + u * c.radius(), m2 = c.center - u * c.radius();
    const double side_avoid = cross(q - b, avoid - b);
    const Point expected = cross(q - b, m1 - b) * side_avoid < 0 ? m1 : m2;
    CHECK(near(arc_midpoint(c, b, q, avoid), expected, 1e-12 * c.radius()));
  }
}

TEST_CASE("power of a point") {
  const Cycle unit{{0, 0}, 1};
  CHECK(power_of_point({5, 0}, unit) == doctest::Approx(24.0));
  CHECK(power_of_point(unit.at_angle(0.7), unit) == doctest::Approx(0.0).epsilon(1e-15));
  const Cycle c{{1, 2}, -3};
  CHECK(power_of_point({1, 2}, c) == doctest::Approx(-9.0));
}

TEST_CASE("inversion") {
  CHECK(near(invert({0, 0}, 1.0, Point{2, 0}), {0.5, 0}));
  const Shape image = invert({0, 0}, 1.0, Shape{Cycle{{1, 0}, 1}});
  const auto* l = std::get_if<OrientedLine>(&image);
  REQUIRE(l != nullptr);
  CHECK(std::abs(std::abs(l->n.x) - 1.0) <= 1e-12);
  CHECK(std::abs(l->signed_distance({0.5, 0.0})) <= 1e-12);
  CHECK_THROWS_AS(invert({0, 0}, 1.0, Point{0, 0}), GeometryError);
  CHECK_THROWS_AS(invert_to_cycle({0, 0}, 1.0, Cycle{{1, 0}, 1}), GeometryError);

  Rng rng(10);
  for (int i = 0; i < 2000; ++i) {
    const Point o = cyclecert::testing::random_point(rng);
    const double k2 = rng.uniform(0.2, 3.0) * (rng.coin() ? 1 : -1);
    Cycle c = cyclecert::testing::random_cycle(rng);
    if (std::abs(distance(c.center, o) - c.radius()) < 0.05) continue;
    const Cycle back = invert_to_cycle(o, k2, invert_to_cycle(o, k2, c));
    CHECK(distance(back.center, c.center) <= 1e-10);
    CHECK(std::abs(back.r - c.r) <= 1e-10);

    const OrientedLine l = cyclecert::testing::random_line(rng);
    if (std::abs(l.signed_distance(o)) < 0.05) continue;
    const Shape twice = invert(o, k2, invert(o, k2, Shape{l}));
    const auto* lb = std::get_if<OrientedLine>(&twice);
    REQUIRE(lb != nullptr);
    CHECK(distance(lb->n, l.n) <= 1e-10);
    CHECK(std::abs(lb->p - l.p) <= 1e-10);

    const Point p = cyclecert::testing::random_point(rng);
    if (distance(p, o) < 0.05) continue;
    CHECK(distance(invert(o, k2, invert(o, k2, p)), p) <= 1e-10);
  }
}

TEST_CASE("inversion maps points of a circle onto its image") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Point o = cyclecert::testing::random_point(rng);
    const Cycle c = cyclecert::testing::random_cycle(rng);
    if (std::abs(distance(c.center, o) - c.radius()) < 0.05) continue;
    const Cycle img = invert_to_cycle(o, 1.0, c);
    for (double a : {0.0, 1.0, 2.5, 4.0}) {
      const Point q = invert(o, 1.0, c.at_angle(a));
      CHECK(std::abs(distance(q, img.center) - img.radius()) <= 1e-9 * std::max(1.0, img.radius()));
    }
  }
}

TEST_CASE("positive homothety center") {
  CHECK(near(monge_positive_center({{0, 0}, 1}, {{3, 0}, 2}), {-3, 0}));
  CHECK(near(monge_positive_center({{1, 1}, 1}, {{1, 1}, 2}), {1, 1}));
  CHECK_THROWS_AS(monge_positive_center({{0, 0}, 1}, {{3, 0}, -1}), GeometryError);

  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const Cycle c1 = cyclecert::testing::random_cycle(rng), c2 = cyclecert::testing::random_cycle(rng);
    if (std::abs(c1.radius() - c2.radius()) < 0.05) continue;
    const Point h = monge_positive_center(c1, c2);
    const double k = c2.radius() / c1.radius();
    CHECK(distance(h + (c1.center - h) * k, c2.center) <= 1e-10 * std::max(1.0, distance(h, c1.center)));
  }
}

TEST_CASE("angle at a vertex") {
  CHECK(angle_at({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(M_PI / 2));
  CHECK(angle_at({0, 0}, {1, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(angle_at({0, 0}, {1, 0}, {-1, 1}) == doctest::Approx(3 * M_PI / 4));
  CHECK_THROWS_AS(angle_at({0, 0}, {0, 0}, {1, 0}), GeometryError);
}

TEST_CASE("lines") {
  const OrientedLine l = line_through({0, 0}, {1, 0});
  CHECK(near(l.n, {0, 1}));
  CHECK(l.signed_distance({3, 2}) == doctest::Approx(2.0));
  const OrientedLine m = line_through({0, 0}, {1, 0}, {0, -5});
  CHECK(m.signed_distance({0, -5}) > 0);
  CHECK(near(perpendicular_foot(l, {3, 2}), {3, 0}));
  CHECK(distance(l, {3, -2}) == doctest::Approx(2.0));
  CHECK(near(intersect(l, line_through({2, -1}, {2, 1})), {2, 0}));
  CHECK_THROWS_AS(intersect(l, line_through({0, 1}, {1, 1})), GeometryError);
  CHECK_THROWS_AS(line_through({1, 1}, {1, 1}), GeometryError);
}

TEST_CASE("second intersections") {
  const Cycle unit{{0, 0}, 1};
  CHECK(near(second_intersection(line_through({-2, 0}, {2, 0}), unit, {1, 0}), {-1, 0}));
  CHECK(near(second_intersection(Cycle{{1, 1}, 1}, unit, {1, 0}), {0, 1}));
  CHECK_THROWS_AS(second_intersection(line_through({1, -1}, {1, 1}), unit, {1, 0}), GeometryError);
}
