#include "cyclecert/projective.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cyclecert/core.hpp"
#include "cyclecert/errors.hpp"
#include "cyclecert/laguerre.hpp"

namespace cyclecert {

double parabola_residual(const Parabola& p, Point q) {
  return distance(q, p.focus) - std::abs(p.directrix.signed_distance(q));
}

bool parabola_contains(const Parabola& p, Point q, const ToleranceContext& ctx) {
  return std::abs(parabola_residual(p, q)) <= ctx.bar();
}

ConcurrencyFit fit_concurrency(std::span<const OrientedLine> lines, const ToleranceContext& ctx) {
  if (lines.size() < 2) throw GeometryError(ErrorKind::under_determined, "need at least two lines");
  Eigen::MatrixXd a(lines.size(), 2);
  Eigen::VectorXd b(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    a(i, 0) = lines[i].n.x;
    a(i, 1) = lines[i].n.y;
    b(i) = lines[i].p;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(1) <= 1e-9 * sv(0)) throw GeometryError(ErrorKind::under_determined, "lines are all parallel");
  const Eigen::Vector2d x = svd.solve(b);
  ConcurrencyFit fit{{x(0), x(1)}, 0.0};
  for (const auto& l : lines) fit.max_residual = std::max(fit.max_residual, std::abs(l.signed_distance(fit.point)));
  fit.max_residual = ctx.normalize(fit.max_residual);
  return fit;
}

LineFit check_collinear(std::span<const Point> points, const ToleranceContext& ctx) {
  if (points.size() < 2) throw GeometryError(ErrorKind::invalid_argument, "need at least two points");
  if (points[0] == points[1]) throw GeometryError(ErrorKind::coincident_points, "anchor points coincide");
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (const double d = norm2(points[i] - points[j]); d > best) {
        best = d;
        bi = i;
        bj = j;
      }
  LineFit fit{line_through(points[bi], points[bj]), 0.0};
  for (Point q : points) fit.max_residual = std::max(fit.max_residual, std::abs(fit.line.signed_distance(q)));
  fit.max_residual = ctx.normalize(fit.max_residual);
  return fit;
}

CircleFit fit_concyclic(std::span<const Point> points, const ToleranceContext& ctx) {
  if (points.size() < 4) throw GeometryError(ErrorKind::invalid_argument, "need at least four points");
  Point centroid;
  for (Point q : points) centroid = centroid + q;
  centroid = centroid / static_cast<double>(points.size());
  double spread = 0.0;
  for (Point q : points) spread = std::max(spread, distance(q, centroid));
  if (spread == 0.0) throw GeometryError(ErrorKind::collinear_input, "all points coincide");
  {
    const LineFit lf = check_collinear(points, ToleranceContext{ctx.eps_abs, ctx.eps_rel, spread});
    if (lf.max_residual <= 1e-12) throw GeometryError(ErrorKind::collinear_input, "points are collinear");
  }

  // x² + y² + D x + E y + F = 0 on centred, unit-spread coordinates.
  Eigen::MatrixXd a(points.size(), 3);
  Eigen::VectorXd b(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point q = (points[i] - centroid) / spread;
    a(i, 0) = q.x;
    a(i, 1) = q.y;
    a(i, 2) = 1.0;
    b(i) = -norm2(q);
  }
  const Eigen::Vector3d s = a.colPivHouseholderQr().solve(b);
  const Point c{-0.5 * s(0), -0.5 * s(1)};
  const double r2 = norm2(c) - s(2);
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw GeometryError(ErrorKind::collinear_input, "no finite circle fits");
  CircleFit fit{{centroid + c * spread, std::sqrt(r2) * spread}, 0.0};
  for (Point q : points)
    fit.max_residual = std::max(fit.max_residual, std::abs(distance(q, fit.circle.center) - fit.circle.r));
  fit.max_residual = ctx.normalize(fit.max_residual);
  return fit;
}

InvolutionWitness fit_involution_on_line(std::span<const std::pair<double, double>> pairs,
                                         const ToleranceContext& ctx) {
  if (pairs.size() < 3) throw GeometryError(ErrorKind::rank_deficient, "need at least three pairs");
  double s = 0.0;
  for (const auto& [x, y] : pairs) s = std::max({s, std::abs(x), std::abs(y)});
  if (s == 0.0) s = 1.0;

  Eigen::MatrixXd rows(pairs.size(), 3);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double x = pairs[i].first / s;
    const double y = pairs[i].second / s;
    rows(i, 0) = -(x + y);
    rows(i, 1) = -1.0;
    rows(i, 2) = x * y;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(1) <= 1e-10 * sv(0)) throw GeometryError(ErrorKind::rank_deficient, "pairs do not determine a relation");
  const Eigen::Vector3d v = svd.matrixV().col(2);

  InvolutionWitness w;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    w.pairs.push_back({{pairs[i].first, 0.0}, {pairs[i].second, 0.0}});
    const double res = std::abs(rows.row(i).dot(v)) / rows.row(i).norm();
    w.residuals.push_back(res);
    w.max_residual = std::max(w.max_residual, res);
  }
  Eigen::Vector3d coeffs(v(0) / s, v(1), v(2) / (s * s));
  coeffs.normalize();
  w.fitted_map = std::array<double, 3>{coeffs(0), coeffs(1), coeffs(2)};
  w.is_involution = w.max_residual <= 10.0 * ctx.eps_rel;
  return w;
}

double conic_residual(const Conic& conic, Point q) {
  if (const auto* c = std::get_if<Cycle>(&conic)) return std::abs(distance(q, c->center) - c->radius());
  return std::abs(parabola_residual(std::get<Parabola>(conic), q));
}

InvolutionWitness involution_on_conic_via_chords(std::span<const std::pair<Point, Point>> pairs,
                                                 const Conic& conic, const ToleranceContext& ctx) {
  if (pairs.size() < 3) throw GeometryError(ErrorKind::under_determined, "need at least three pairs");
  InvolutionWitness w;
  std::vector<OrientedLine> chords;
  for (const auto& [y, y2] : pairs) {
    if (conic_residual(conic, y) > 10.0 * ctx.bar() || conic_residual(conic, y2) > 10.0 * ctx.bar())
      throw GeometryError(ErrorKind::off_conic, "pair point is not on the conic");
    if (distance(y, y2) <= ctx.bar()) throw GeometryError(ErrorKind::coincident_points, "pair members coincide");
    chords.push_back(line_through(y, y2));
    w.pairs.emplace_back(y, y2);
  }

  double spread = 0.0;
  for (const auto& l : chords) spread = std::max(spread, std::abs(cross(l.n, chords.front().n)));
  if (spread <= 1e-9) {
    w.ideal_direction = chords.front().direction();
    for (const auto& l : chords) w.residuals.push_back(std::abs(cross(l.n, chords.front().n)));
    w.max_residual = spread;
  } else {
    const ConcurrencyFit fit = fit_concurrency(chords, ctx);
    w.fixed_point = fit.point;
    for (const auto& l : chords) w.residuals.push_back(ctx.normalize(std::abs(l.signed_distance(fit.point))));
    w.max_residual = fit.max_residual;
  }
  w.is_involution = w.max_residual <= 10.0 * ctx.eps_rel;
  return w;
}

Point induced_point(const Cycle& outer, const Cycle& inner, Point pivot, Point x, const ToleranceContext& ctx) {
  if (outer.r == inner.r || std::abs(oriented_residual(outer, inner)) > 10.0 * ctx.bar())
    throw GeometryError(ErrorKind::not_tangent, "cycles are not in oriented contact");
  const Point a = tangency_point(outer, inner);
  if (distance(pivot, a) <= ctx.bar()) throw GeometryError(ErrorKind::coincident_points, "pivot is the contact point");
  if (distance(x, a) <= ctx.bar()) throw GeometryError(ErrorKind::coincident_points, "sample is the contact point");
  const Point u = x - a;
  const Point v = pivot - a;
  if (std::abs(cross(u, v)) <= 1e-12 * norm(u) * norm(v))
    return second_intersection(line_through(a, x), outer, a, ctx);
  return second_intersection(circle_through(a, x, pivot), outer, a, ctx);
}

}  // namespace cyclecert
