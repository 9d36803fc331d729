#include <doctest.h>

#include <cmath>
#include <vector>

#include "cyclecert/core.hpp"
#include "cyclecert/projective.hpp"
#include "oracles.hpp"

using namespace cyclecert;
using namespace cyclecert::testing;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::invalid_argument;
}

Point rotate(Point p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Rigid motion: rotate by `angle` then translate.
struct Motion {
  double angle;
  Point shift;
  Point apply(Point p) const { return rotate(p, angle) + shift; }
  OrientedLine apply(const OrientedLine& l) const {
    const Point n = rotate(l.n, angle);
    return {n, l.p + dot(n, shift)};
  }
};

}  // namespace

TEST_CASE("parabola membership") {
  const Parabola p{{0, 1}, {{0, 1}, -1}};
  CHECK(parabola_contains(p, {2, 1}));
  CHECK(parabola_contains(p, {0, 0}));
  CHECK_FALSE(parabola_contains(p, {1, 1}));
  CHECK(parabola_residual(p, {-2, 1}) == doctest::Approx(0.0));

  // Every point (u, u²/4) lies on x² = 4y.
  for (double u = -5; u <= 5; u += 0.25) CHECK(std::abs(parabola_residual(p, {u, u * u / 4})) <= 1e-12);
}

TEST_CASE("concurrency of three lines through the origin") {
  const std::vector<OrientedLine> lines{{{1, 0}, 0}, {{0, 1}, 0}, {normalized(Point{1, -1}), 0}};
  const ConcurrencyFit fit = fit_concurrency(lines);
  CHECK(norm(fit.point) <= 1e-15);
  CHECK(fit.max_residual <= 1e-15);
}

TEST_CASE("triangle side lines are not concurrent") {
  const Triangle t({0, 0}, {4, 0}, {0, 3});
  const std::vector<OrientedLine> sides{line_through(t.a(), t.b()), line_through(t.b(), t.c()),
                                        line_through(t.c(), t.a())};
  CHECK(fit_concurrency(sides).max_residual > 0.1);
}

TEST_CASE("concurrency rejects a single direction") {
  const std::vector<OrientedLine> lines{{{1, 0}, 0}, {{1, 0}, 1}, {{-1, 0}, 2}};
  CHECK(kind_of([&] { fit_concurrency(lines); }) == ErrorKind::under_determined);
}

TEST_CASE("concurrency recovers a common point under noise") {
  Rng rng(41);
  const Point target{2, 3};
  std::vector<OrientedLine> lines;
  for (int i = 0; i < 10; ++i) {
    const Point n = unit_vector(rng.uniform(0, M_PI));
    lines.push_back({n, dot(n, target) + rng.uniform(-1e-13, 1e-13)});
  }
  const ConcurrencyFit fit = fit_concurrency(lines);
  CHECK(distance(fit.point, target) <= 1e-10);
  CHECK(fit.max_residual <= 1e-12);
}

TEST_CASE("concurrency fit is equivariant under rigid motions") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<OrientedLine> lines;
    for (int i = 0; i < 5; ++i) lines.push_back(random_line(rng));
    const Motion m{rng.uniform(0, 2 * M_PI), random_point(rng, -3, 3)};
    std::vector<OrientedLine> moved;
    for (const auto& l : lines) moved.push_back(m.apply(l));
    const ConcurrencyFit a = fit_concurrency(lines);
    const ConcurrencyFit b = fit_concurrency(moved);
    if (norm(a.point) > 10) continue;
    CHECK(distance(m.apply(a.point), b.point) <= 1e-12 * std::max(1.0, norm(b.point)) * 10);
    CHECK(std::abs(a.max_residual - b.max_residual) <= 1e-12);
  }
}

TEST_CASE("circle fit") {
  const std::vector<Point> square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  const CircleFit fit = fit_concyclic(square);
  CHECK(norm(fit.circle.center) <= 1e-14);
  CHECK(fit.circle.r == doctest::Approx(std::sqrt(2.0)));
  CHECK(fit.max_residual <= 1e-14);

  const std::vector<Point> bent{{1, 1}, {-1, 1}, {-1, -1}, {1.1, -1}};
  CHECK(fit_concyclic(bent).max_residual >= 0.01);

  const std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  CHECK(kind_of([&] { fit_concyclic(line); }) == ErrorKind::collinear_input);
  const std::vector<Point> three{{0, 0}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(fit_concyclic(three), GeometryError);
}

TEST_CASE("circle fit agrees with the circumcentre oracle") {
  Rng rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const Triangle t = random_triangle(rng);
    const Point o = circumcenter_oracle(t.a(), t.b(), t.c());
    const double r = distance(o, t.a());
    if (r > 20) continue;
    const Point d = o + unit_vector(rng.uniform(0, 2 * M_PI)) * r;
    const std::vector<Point> pts{t.a(), t.b(), t.c(), d};
    const CircleFit fit = fit_concyclic(pts);
    CHECK(distance(fit.circle.center, o) <= 1e-9 * std::max(1.0, r));
    CHECK(fit.max_residual <= 1e-9);
  }
}

TEST_CASE("collinearity check") {
  const std::vector<Point> on{{0, 0}, {1, 1}, {3, 3}, {-2, -2}};
  CHECK(check_collinear(on).max_residual <= 1e-15);
  const std::vector<Point> off{{0, 0}, {1, 0}, {0, 1}};
  CHECK(check_collinear(off).max_residual > 0.1);
  const std::vector<Point> same{{1, 1}, {1, 1}, {1, 1}};
  CHECK_THROWS_AS(check_collinear(same), GeometryError);

  Rng rng(44);
  for (int trial = 0; trial < 1000; ++trial) {
    const Point p = random_point(rng), q = random_point(rng);
    if (distance(p, q) < 0.1) continue;
    std::vector<Point> pts{p, q};
    for (int i = 0; i < 4; ++i) pts.push_back(lerp(p, q, rng.uniform(-2, 3)));
    const Point bump = pts.back() + perp(normalized(q - p)) * 0.01;
    CHECK(check_collinear(pts).max_residual <= 1e-14 * 10);
    pts.push_back(bump);
    const ToleranceContext ctx = ToleranceContext{}.with_scale(1.0);
    const double oracle = distance_to_line(p, q, bump);
    CHECK(check_collinear(pts, ctx).max_residual >= 0.5 * oracle);
  }
}

TEST_CASE("involutions on a line") {
  const std::vector<std::pair<double, double>> reciprocal{{2, 0.5}, {3, 1.0 / 3}, {-4, -0.25}, {0.1, 10}};
  const InvolutionWitness a = fit_involution_on_line(reciprocal);
  CHECK(a.is_involution);
  REQUIRE(a.fitted_map);
  // x' = 1/x is a = 0, b = c.
  CHECK(std::abs((*a.fitted_map)[0]) <= 1e-12);
  CHECK(std::abs((*a.fitted_map)[1] - (*a.fitted_map)[2]) <= 1e-12);

  const std::vector<std::pair<double, double>> negation{{1, -1}, {2, -2}, {-0.5, 0.5}};
  CHECK(fit_involution_on_line(negation).is_involution);

  const std::vector<std::pair<double, double>> shift{{0, 1}, {1, 2}, {2, 3}, {5, 6}};
  CHECK_FALSE(fit_involution_on_line(shift).is_involution);

  const std::vector<std::pair<double, double>> repeated{{1, 2}, {1, 2}, {2, 1}};
  CHECK(kind_of([&] { fit_involution_on_line(repeated); }) == ErrorKind::rank_deficient);
  const std::vector<std::pair<double, double>> two{{1, 2}, {3, 4}};
  CHECK(kind_of([&] { fit_involution_on_line(two); }) == ErrorKind::rank_deficient);
}

TEST_CASE("random Mobius involutions on a line are recognised") {
  Rng rng(45);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), c = rng.uniform(-1, 1);
    if (std::abs(a * a + b * c) < 0.05) continue;
    std::vector<std::pair<double, double>> pairs;
    while (pairs.size() < 5) {
      const double x = rng.uniform(-3, 3);
      const double den = c * x - a;
      if (std::abs(den) < 0.1) continue;
      pairs.push_back({x, (a * x + b) / den});
    }
    const InvolutionWitness w = fit_involution_on_line(pairs);
    CHECK(w.is_involution);
    // Images of a fresh point agree with the generating map.
    const auto [fa, fb, fc] = *w.fitted_map;
    const double x = 0.37;
    if (std::abs(c * x - a) > 0.1)
      CHECK(std::abs((fa * x + fb) / (fc * x - fa) - (a * x + b) / (c * x - a)) <= 1e-8);
  }
}

TEST_CASE("antipodal pairs on a circle share the centre") {
  const Cycle c{{1, 2}, 3};
  std::vector<std::pair<Point, Point>> pairs;
  for (double t : {0.1, 1.0, 2.5, 4.0}) pairs.push_back({c.center + unit_vector(t) * 3, c.center - unit_vector(t) * 3});
  const InvolutionWitness w = involution_on_conic_via_chords(pairs, c);
  CHECK(w.is_involution);
  REQUIRE(w.fixed_point);
  CHECK(distance(*w.fixed_point, c.center) <= 1e-12);
}

TEST_CASE("reflection pairs give parallel chords") {
  const Cycle c{{0, 0}, 1};
  std::vector<std::pair<Point, Point>> pairs;
  for (double t : {0.3, 0.9, 1.4, 2.2}) pairs.push_back({unit_vector(t), unit_vector(-t)});
  const InvolutionWitness w = involution_on_conic_via_chords(pairs, c);
  CHECK(w.is_involution);
  CHECK_FALSE(w.fixed_point);
  REQUIRE(w.ideal_direction);
  CHECK(std::abs(w.ideal_direction->x) <= 1e-12);
}

TEST_CASE("chords through a fixed point recover it") {
  Rng rng(46);
  for (int trial = 0; trial < 500; ++trial) {
    const Cycle c = random_cycle(rng, 0.5, 2.0);
    const double rho = c.radius();
    const Point f = c.center + unit_vector(rng.uniform(0, 2 * M_PI)) * rng.uniform(0, 3 * rho);
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < 5; ++i) {
      const Point y = c.center + unit_vector(rng.uniform(0, 2 * M_PI)) * rho;
      if (distance(y, f) < 0.05) continue;
      // Second point of the line y-f on the circle, by the chord formula.
      const Point d = normalized(f - y);
      const Point y2 = y + d * (-2 * dot(y - c.center, d));
      if (distance(y, y2) < 0.05) continue;
      pairs.push_back({y, y2});
    }
    if (pairs.size() < 3) continue;
    const ToleranceContext ctx = ToleranceContext{}.with_scale(2 * rho);
    const InvolutionWitness w = involution_on_conic_via_chords(pairs, c, ctx);
    CHECK(w.is_involution);
    if (w.fixed_point) CHECK(distance(*w.fixed_point, f) <= 1e-9 * std::max(1.0, distance(f, c.center)));
  }
}

TEST_CASE("chord involution on a parabola and off-conic input") {
  const Parabola p{{0, 1}, {{0, 1}, -1}};
  auto at = [](double u) { return Point{u, u * u / 4}; };
  // Chords through the focus join parameters with u u' = -4.
  std::vector<std::pair<Point, Point>> pairs;
  for (double u : {1.0, 2.0, -3.0, 0.5}) pairs.push_back({at(u), at(-4 / u)});
  const InvolutionWitness w = involution_on_conic_via_chords(pairs, p);
  CHECK(w.is_involution);
  REQUIRE(w.fixed_point);
  CHECK(distance(*w.fixed_point, p.focus) <= 1e-12);

  pairs[1].first = {2, 1.5};
  CHECK(kind_of([&] { involution_on_conic_via_chords(pairs, p); }) == ErrorKind::off_conic);
}

TEST_CASE("induced point") {
  const Cycle outer{{0, 0}, 2}, inner{{1, 0}, 1};
  // A = (2, 0); A, pivot and x on the x-axis make the circle that line.
  CHECK(distance(induced_point(outer, inner, {0.5, 0}, {1, 0}), Point{-2, 0}) <= 1e-12);
  CHECK(kind_of([&] { induced_point(outer, Cycle{{0, 0}, 1}, {0, 1}, {1, 0}); }) == ErrorKind::not_tangent);

  // Mirror symmetry across the axis through A.
  const Point y1 = induced_point(outer, inner, {0.3, 0.4}, {-0.5, 0.2});
  const Point y2 = induced_point(outer, inner, {0.3, -0.4}, {-0.5, -0.2});
  CHECK(distance(y1, Point{y2.x, -y2.y}) <= 1e-12);
  CHECK(std::abs(norm(y1) - 2) <= 1e-12);
}

TEST_CASE("induced point agrees with the inversion oracle") {
  Rng rng(47);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Cycle outer{random_point(rng), rng.uniform(0.5, 2.0)};
    const double r_in = rng.uniform(0.1, 0.9) * outer.r;
    const Point dir = unit_vector(rng.uniform(0, 2 * M_PI));
    const Cycle inner{outer.center + dir * (outer.r - r_in), r_in};
    const Point a = outer.center + dir * outer.r;
    const Point pivot = outer.center + random_point(rng) * (0.5 * outer.r);
    const Point x = outer.center + random_point(rng) * (0.5 * outer.r);
    if (distance(pivot, a) < 0.05 || distance(x, a) < 0.05 || distance(x, pivot) < 0.05) continue;
    if (std::abs(cross(x - a, pivot - a)) < 1e-3) continue;
    const Point y = induced_point(outer, inner, pivot, x);
    const Point expected = induced_point_oracle(outer, a, pivot, x);
    if (distance(expected, a) < 1e-3) continue;
    CHECK(distance(y, expected) <= 1e-10 * 2 * outer.r);
    ++compared;
  }
  CHECK(compared > 500);
}
