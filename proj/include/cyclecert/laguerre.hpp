#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cyclecert/primitives.hpp"
#include "cyclecert/scene.hpp"
#include "cyclecert/tolerance.hpp"

namespace cyclecert {

// Sign convention: a line (n, p) and a cycle (c, r) are in oriented
// contact iff n·c - p = r. Dilation by t adds t to every radius and
// subtracts t from every line offset, so contact is preserved exactly.

/// n·center - p - r; zero iff oriented contact.
double oriented_residual(const OrientedLine& l, const Cycle& c);
/// |c1 - c2| - |r1 - r2|; zero iff oriented contact.
double oriented_residual(const Cycle& c1, const Cycle& c2);

bool oriented_tangent(const OrientedLine& l, const Cycle& c, const ToleranceContext& ctx = {});
bool oriented_tangent(const Cycle& c1, const Cycle& c2, const ToleranceContext& ctx = {});

/// Contact point of a line with a cycle in oriented contact: c - r n.
Point tangency_point(const OrientedLine& l, const Cycle& c);
/// Contact point of two cycles in oriented contact, (r1 c2 - r2 c1)/(r1 - r2).
/// Throws not_tangent for equal radii (coincident cycles).
Point tangency_point(const Cycle& c1, const Cycle& c2);

Cycle dilate(const Cycle& c, double t);
OrientedLine dilate(const OrientedLine& l, double t);

struct DisplacedPair {
  std::string first;   // element names of the tangent pair
  std::string second;
  Point before;
  Point after;
};

struct DilationWitness {
  double t = 0.0;
  Scene pre;
  Scene post;
  /// Contact points of every declared oriented tangency before and after.
  std::vector<DisplacedPair> displaced_pairs;
};

/// Applies the dilation to every cycle and line of the scene; points and
/// parabolas are unchanged.
std::pair<Scene, DilationWitness> dilate(const Scene& s, double t);

/// Contact points of the named line and cycle before and after.
/// Throws not_tangent if the pair is not in oriented contact in both scenes.
std::pair<Point, Point> tangency_displacement(const Scene& before, const Scene& after,
                                              const std::string& line_id,
                                              const std::string& cycle_id,
                                              const ToleranceContext& ctx = {});

}  // namespace cyclecert
