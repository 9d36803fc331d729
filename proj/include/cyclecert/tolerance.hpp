#pragma once

namespace cyclecert {

/// Absolute/relative tolerances plus the scene diameter used to normalise
/// residuals. A predicate accepts an absolute residual up to `bar()`;
/// reports compare residual/scale against multiples of `eps_rel`.
struct ToleranceContext {
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;
  double scale = 1.0;

  /// Throws GeometryError(invalid_argument) unless all three are positive.
  static ToleranceContext make(double eps_abs, double eps_rel, double scale);

  double bar() const { return eps_abs + eps_rel * scale; }
  double normalize(double residual) const { return residual / scale; }
  ToleranceContext with_scale(double s) const;
};

}  // namespace cyclecert
