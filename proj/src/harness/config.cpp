#include <algorithm>
#include <cmath>

#include "cyclecert/errors.hpp"
#include "cyclecert/harness.hpp"
#include "cyclecert/laguerre.hpp"
#include "cyclecert/solvers.hpp"

namespace cyclecert {

void CheckReport::expect(std::string description, double residual, double tolerance) {
  const bool ok = std::isfinite(residual) && std::abs(residual) <= tolerance;
  assertions.push_back({std::move(description), residual, tolerance, ok});
}

void CheckReport::mark_inapplicable(std::string reason) {
  applicable = false;
  inapplicable_reason = std::move(reason);
}

bool CheckReport::passed() const {
  return applicable && std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

double CheckReport::max_residual() const {
  double worst = 0.0;
  for (const auto& a : assertions) worst = std::max(worst, std::abs(a.residual));
  return worst;
}

GeneralizedConfig orient_configuration(const Triangle& tri, double wa, ConfigCase which,
                                       const ToleranceContext& ctx) {
  if (!(wa >= 0.0) || !std::isfinite(wa))
    throw GeometryError(ErrorKind::invalid_argument, "wa must be a finite non-negative radius");
  const Point a = tri.a(), b = tri.b(), c = tri.c();
  const ToleranceContext tc = ctx.with_scale(tri.diameter());
  const bool first = which == ConfigCase::case1;

  const OrientedLine bc = line_through(b, c, a);
  const OrientedLine ab = line_through(a, b, c).flipped();
  const OrientedLine ac = line_through(a, c, b).flipped();
  const Cycle omega_a =
      circle_tangent_to_two_lines_with_radius(ab, ac, wa, first ? RadiusSign::positive : RadiusSign::negative);
  const Cycle big = circle_through_two_points_tangent_to_cycle(
      b, c, omega_a, first ? TangencyBranch::internal : TangencyBranch::external, tc);
  if (!(big.r > 0.0)) throw GeometryError(ErrorKind::no_solution, "circle through B and C came out negative");
  const Point a_prime = omega_a.r == 0.0 ? a : tangency_point(big, omega_a);

  GeneralizedConfig g{tri, which, wa, bc, ab, ac, omega_a, big, a_prime, incenter(tri), tc, {}};
  Scene& s = g.scene;
  s.set("A", a);
  s.set("B", b);
  s.set("C", c);
  s.set("I", g.incenter);
  s.set("A'", a_prime);
  s.set("BC", bc);
  s.set("AB", ab);
  s.set("AC", ac);
  s.set("omega_a", omega_a);
  s.set("Omega", big);
  s.declare_incidence("B", "BC");
  s.declare_incidence("C", "BC");
  s.declare_incidence("A", "AB");
  s.declare_incidence("A", "AC");
  s.declare_incidence("B", "Omega");
  s.declare_incidence("C", "Omega");
  s.declare_incidence("A'", "Omega");
  s.declare_incidence("A'", "omega_a");
  s.declare_tangency("AB", "omega_a");
  s.declare_tangency("AC", "omega_a");
  s.declare_tangency("Omega", "omega_a");

  const double worst = s.max_constraint_residual();
  if (tc.normalize(worst) > kConicFactor * tc.eps_rel)
    throw GeometryError(ErrorKind::no_solution, "configuration failed its construction self-check");
  return g;
}

OrientedLine tangent_line_at(const GeneralizedConfig& g, double normal_angle) {
  const Point n = unit_vector(normal_angle);
  return {n, dot(n, g.omega_a.center) - g.omega_a.r};
}

std::optional<Cycle> inscribed_cycle(const OrientedLine& base, Point b, Point c, const OrientedLine& k,
                                     const Cycle& big, const ToleranceContext& ctx, std::string* why) {
  auto fail = [&](const char* reason) -> std::optional<Cycle> {
    if (why) *why = reason;
    return std::nullopt;
  };
  Point q;
  try {
    q = intersect(base, k);
  } catch (const GeometryError&) {
    return fail("tangent line is parallel to the base");
  }
  const double len2 = norm2(c - b);
  const double u = dot(q - b, c - b) / len2;
  const double margin = ctx.bar() / std::sqrt(len2);
  if (!(u > margin && u < 1.0 - margin)) return fail("tangent line meets the base outside the segment");

  std::vector<SolutionBranch> branches;
  try {
    branches = circle_tangent_to_line_line_cycle(base, k, big, {RadiusSign::positive, ctx.bar()}, ctx);
  } catch (const GeometryError&) {
    return fail("no positive inscribed cycle");
  }
  if (branches.size() != 1) return fail("inscribed cycle is not unique");
  if (branches.front().is_double) return fail("inscribed cycle branches collide");
  return branches.front().cycle;
}

}  // namespace cyclecert
