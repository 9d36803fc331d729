#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cyclecert/primitives.hpp"
#include "cyclecert/tolerance.hpp"

namespace cyclecert {

// All `max_residual` values below are normalised by ctx.scale.

/// |q - focus| - dist(q, directrix), in scene units.
double parabola_residual(const Parabola& p, Point q);
bool parabola_contains(const Parabola& p, Point q, const ToleranceContext& ctx = {});

struct ConcurrencyFit {
  Point point;
  double max_residual = 0.0;
};

/// Least-squares common point of the lines. Throws under_determined when
/// fewer than two distinct directions are present.
ConcurrencyFit fit_concurrency(std::span<const OrientedLine> lines, const ToleranceContext& ctx = {});

struct CircleFit {
  Cycle circle;
  double max_residual = 0.0;
};

/// Algebraic (Kasa) circle fit with a geometric max residual. Needs at least
/// four points; throws collinear_input when they lie on a line.
CircleFit fit_concyclic(std::span<const Point> points, const ToleranceContext& ctx = {});

struct LineFit {
  OrientedLine line;
  double max_residual = 0.0;
};

/// Line through the two mutually farthest points and the largest distance of
/// any point from it. Throws coincident_points when the first two coincide.
LineFit check_collinear(std::span<const Point> points, const ToleranceContext& ctx = {});

struct InvolutionWitness {
  std::vector<std::pair<Point, Point>> pairs;
  /// (a, b, c) of x' = (a x + b)/(c x - a), unit norm, for line carriers.
  std::optional<std::array<double, 3>> fitted_map;
  std::vector<double> residuals;
  /// Frégier point for conic carriers.
  std::optional<Point> fixed_point;
  /// Set instead of fixed_point when all chords are parallel.
  std::optional<Point> ideal_direction;
  double max_residual = 0.0;
  bool is_involution = false;
};

/// Fits the symmetric bilinear relation c x x' - a (x + x') - b = 0 to
/// parameter pairs on a line. Needs three pairs; throws rank_deficient when
/// the pairs do not pin down a unique relation.
InvolutionWitness fit_involution_on_line(std::span<const std::pair<double, double>> pairs,
                                         const ToleranceContext& ctx = {});

using Conic = std::variant<Cycle, Parabola>;

double conic_residual(const Conic& conic, Point q);

/// Involution test on a conic through chord concurrency. Pair members must
/// be distinct and within 10x tolerance of the conic (off_conic otherwise).
InvolutionWitness involution_on_conic_via_chords(std::span<const std::pair<Point, Point>> pairs,
                                                 const Conic& conic, const ToleranceContext& ctx = {});

/// Second intersection Y of the circle through (A, x, pivot) with `outer`,
/// where A is the contact point of `outer` and `inner`. When A, x, pivot are
/// collinear the circle is that line. Throws not_tangent if the cycles are
/// not in oriented contact, and no_second_intersection when the circle
/// touches `outer` at A.
Point induced_point(const Cycle& outer, const Cycle& inner, Point pivot, Point x,
                    const ToleranceContext& ctx = {});

}  // namespace cyclecert
