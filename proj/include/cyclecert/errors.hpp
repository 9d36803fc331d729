#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclecert {

enum class ErrorKind {
  invalid_argument,
  degenerate_triangle,
  points_not_on_circle,
  coincident_points,
  point_at_center,
  center_on_object,
  equal_radii,
  inside_circle,
  no_solution,
  parallel_lines,
  not_tangent,
  under_determined,
  collinear_input,
  rank_deficient,
  off_conic,
  no_second_intersection,
};

std::string_view to_string(ErrorKind kind);

/// Every geometric precondition failure in the library is reported through
/// this exception; `kind()` lets callers separate "hypothesis not met" from
/// programming errors.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cyclecert
