#include "cyclecert/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cyclecert/core.hpp"
#include "cyclecert/errors.hpp"
#include "cyclecert/laguerre.hpp"

namespace cyclecert {

namespace {

// Solves [n1; n2] x = (a1, a2).
Point solve_normals(const OrientedLine& l1, const OrientedLine& l2, double a1, double a2) {
  const double det = cross(l1.n, l2.n);
  return {(a1 * l2.n.y - a2 * l1.n.y) / det, (l1.n.x * a2 - l2.n.x * a1) / det};
}

void require_not_parallel(const OrientedLine& l1, const OrientedLine& l2) {
  if (std::abs(cross(l1.n, l2.n)) < 1e-12)
    throw GeometryError(ErrorKind::parallel_lines, "tangent lines are parallel");
}

bool keep(double r, const BranchFilter& f, const ToleranceContext& ctx) {
  switch (f.sign) {
    case RadiusSign::any: return std::abs(r) >= f.min_abs_radius;
    case RadiusSign::positive: return r > 0.0 && r >= f.min_abs_radius;
    case RadiusSign::negative: return r < 0.0 && -r >= f.min_abs_radius;
    case RadiusSign::non_negative: return std::abs(r) <= ctx.bar() || r >= std::max(f.min_abs_radius, 0.0);
  }
  return false;
}

}  // namespace

std::array<OrientedLine, 2> tangent_lines_from_point(Point p, const Cycle& c, const ToleranceContext& ctx) {
  const Point d = c.center - p;
  const double len = norm(d);
  const double rho = c.radius();
  if (len - rho <= ctx.bar())
    throw GeometryError(ErrorKind::inside_circle, "point is not outside the circle");
  const Point u = d / len;
  const double cos_t = c.r / len;
  const double sin_t = std::sqrt((len - rho) * (len + rho)) / len;
  std::array<OrientedLine, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double s = i == 0 ? sin_t : -sin_t;
    const Point n = u * cos_t + perp(u) * s;
    out[i] = {n, dot(n, p)};
  }
  return out;
}

Cycle circle_through_two_points_tangent_to_cycle(Point b, Point c, const Cycle& w, TangencyBranch branch,
                                                 const ToleranceContext& ctx) {
  if (distance(b, c) <= ctx.bar())
    throw GeometryError(ErrorKind::invalid_argument, "chord endpoints coincide");
  const Point m = midpoint(b, c);
  const double h = 0.5 * distance(b, c);
  const Point u = perp(normalized(c - b));
  const double rho = w.radius();
  const Point d = m - w.center;
  // Centre m + s u; tangency reads alpha + beta s = -/+ 2 rho R with
  // R = sqrt(h² + s²), which squares to a quadratic in s.
  const double alpha = norm2(d) - h * h - rho * rho;
  const double beta = 2.0 * dot(d, u);
  const double qa = beta * beta - 4.0 * rho * rho;
  const double disc = alpha * alpha + h * h * beta * beta - 4.0 * rho * rho * h * h;

  std::vector<double> roots;
  if (rho == 0.0) {
    if (beta == 0.0) throw GeometryError(ErrorKind::collinear_input, "point-cycle lies on the chord line");
    roots.push_back(-alpha / beta);
  } else {
    if (disc < 0.0) throw GeometryError(ErrorKind::no_solution, "no circle through both points touches the cycle");
    const double root = 2.0 * rho * std::sqrt(disc);
    if (std::abs(qa) <= 1e-12 * (beta * beta + 4.0 * rho * rho)) {
      if (alpha * beta != 0.0) roots.push_back((4.0 * rho * rho * h * h - alpha * alpha) / (2.0 * alpha * beta));
    } else {
      roots.push_back((-alpha * beta + root) / qa);
      roots.push_back((-alpha * beta - root) / qa);
    }
  }

  const bool internal = branch == TangencyBranch::internal;
  double best_s = 0.0;
  double best_r = std::numeric_limits<double>::infinity();
  for (double s : roots) {
    if (!std::isfinite(s)) continue;
    const double big_r = std::hypot(h, s);
    const double lin = alpha + beta * s;
    const double slack = 1e-12 * (std::abs(alpha) + std::abs(beta * s) + rho * big_r);
    const bool ok = internal ? (lin <= slack && big_r >= rho) : (lin >= -slack);
    if (ok && big_r < best_r) {
      best_r = big_r;
      best_s = s;
    }
  }
  if (!std::isfinite(best_r))
    throw GeometryError(ErrorKind::no_solution, internal ? "no internally tangent circle" : "no externally tangent circle");

  double sign = 1.0;
  if (w.r != 0.0) {
    const double ws = w.r > 0.0 ? 1.0 : -1.0;
    sign = internal ? ws : -ws;
  }
  return {m + u * best_s, sign * best_r};
}

std::vector<SolutionBranch> circle_tangent_to_line_line_cycle(const OrientedLine& l1, const OrientedLine& l2,
                                                              const Cycle& big, BranchFilter filter,
                                                              const ToleranceContext& ctx) {
  require_not_parallel(l1, l2);
  // Oriented contact with both lines pins the centre to c0 + r w.
  const Point c0 = solve_normals(l1, l2, l1.p, l2.p);
  const Point w = solve_normals(l1, l2, 1.0, 1.0);
  const Point d = c0 - big.center;
  const double qa = norm2(w) - 1.0;
  const double qb = 2.0 * (dot(d, w) + big.r);
  const double qc = norm2(d) - big.r * big.r;
  const double disc = qb * qb - 4.0 * qa * qc;
  const double collide = 1e-14 * ctx.scale * ctx.scale;

  std::vector<std::pair<double, bool>> roots;
  if (disc < -collide) {
    throw GeometryError(ErrorKind::no_solution, "no cycle touches both lines and the cycle with these orientations");
  } else if (disc <= collide) {
    roots.emplace_back(-qb / (2.0 * qa), true);
  } else {
    const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    const double r1 = q / qa;
    const double r2 = qc / q;
    roots.emplace_back(std::max(r1, r2), false);
    roots.emplace_back(std::min(r1, r2), false);
  }

  std::vector<SolutionBranch> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double r = roots[i].first;
    if (!std::isfinite(r) || !keep(r, filter, ctx)) continue;
    SolutionBranch br;
    br.index = static_cast<int>(i);
    br.cycle = {c0 + w * r, r};
    br.is_double = roots[i].second;
    br.residuals = {oriented_residual(l1, br.cycle), oriented_residual(l2, br.cycle),
                    oriented_residual(br.cycle, big)};
    if (!oriented_tangent(l1, br.cycle, ctx) || !oriented_tangent(l2, br.cycle, ctx) ||
        !oriented_tangent(br.cycle, big, ctx))
      continue;
    br.foot1 = tangency_point(l1, br.cycle);
    br.foot2 = tangency_point(l2, br.cycle);
    br.contact = br.cycle.r == big.r ? br.cycle.center : tangency_point(big, br.cycle);
    out.push_back(br);
  }
  if (out.empty()) throw GeometryError(ErrorKind::no_solution, "no branch is consistent with the orientation flags");
  return out;
}

Cycle circle_tangent_to_two_lines_with_radius(const OrientedLine& l1, const OrientedLine& l2, double radius,
                                              RadiusSign side) {
  require_not_parallel(l1, l2);
  if (radius < 0.0) throw GeometryError(ErrorKind::invalid_argument, "radius must be non-negative");
  if (side != RadiusSign::positive && side != RadiusSign::negative)
    throw GeometryError(ErrorKind::invalid_argument, "side must be positive or negative");
  const double r = side == RadiusSign::positive ? radius : -radius;
  return {solve_normals(l1, l2, l1.p + r, l2.p + r), r};
}

}  // namespace cyclecert
