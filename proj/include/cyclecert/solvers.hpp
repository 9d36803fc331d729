#pragma once

#include <array>
#include <vector>

#include "cyclecert/primitives.hpp"
#include "cyclecert/tolerance.hpp"

namespace cyclecert {

/// The two lines through p in oriented contact with c. Their contact points
/// are c.center - c.r * n. For a point-cycle both entries are the same line
/// with opposite orientations. Throws inside_circle unless p is strictly
/// outside c.
std::array<OrientedLine, 2> tangent_lines_from_point(Point p, const Cycle& c,
                                                     const ToleranceContext& ctx = {});

enum class TangencyBranch { internal, external };

/// Circle through b and c tangent to w, with w inside it (internal) or
/// outside it (external). The result is oriented to be in oriented contact
/// with w: same sign as w for internal, opposite for external, positive when
/// w is a point-cycle. When both roots of the branch are valid the smaller
/// circle is returned.
Cycle circle_through_two_points_tangent_to_cycle(Point b, Point c, const Cycle& w, TangencyBranch branch,
                                                 const ToleranceContext& ctx = {});

enum class RadiusSign { any, positive, negative, non_negative };

struct BranchFilter {
  RadiusSign sign = RadiusSign::any;
  /// Branches with |r| below this (scene units) are dropped, except that
  /// RadiusSign::non_negative keeps point-cycles.
  double min_abs_radius = 0.0;
};

struct SolutionBranch {
  int index = 0;
  Cycle cycle;
  /// Oriented-contact residuals against l1, l2 and the big cycle.
  std::array<double, 3> residuals{};
  /// The two roots collided; one branch stands for both.
  bool is_double = false;
  Point foot1;    // contact with l1
  Point foot2;    // contact with l2
  Point contact;  // contact with the big cycle
};

/// Cycles in oriented contact with two non-parallel oriented lines and a
/// cycle. The centre is restricted to the bisector selected by the line
/// orientations, which turns the problem into one quadratic in the signed
/// radius. Branches are returned in decreasing radius order and are
/// re-verified against the oriented-contact predicates.
/// Throws parallel_lines, or no_solution when nothing survives the filter.
std::vector<SolutionBranch> circle_tangent_to_line_line_cycle(const OrientedLine& l1, const OrientedLine& l2,
                                                              const Cycle& big, BranchFilter filter = {},
                                                              const ToleranceContext& ctx = {});

/// Cycle of the given radius in oriented contact with both lines, on their
/// positive sides (RadiusSign::positive) or negative sides (negative).
Cycle circle_tangent_to_two_lines_with_radius(const OrientedLine& l1, const OrientedLine& l2, double radius,
                                              RadiusSign side);

}  // namespace cyclecert
