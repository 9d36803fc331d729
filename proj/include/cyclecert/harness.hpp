#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclecert/core.hpp"
#include "cyclecert/primitives.hpp"
#include "cyclecert/scene.hpp"
#include "cyclecert/tolerance.hpp"

namespace cyclecert {

enum class ConfigCase { case1 = 1, case2 = 2 };

struct Assertion {
  std::string description;
  double residual = 0.0;   // normalised
  double tolerance = 0.0;  // normalised
  bool pass = false;
};

struct CheckReport {
  std::string scenario;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  bool applicable = true;
  std::string inapplicable_reason;
  std::vector<Assertion> assertions;
  std::map<std::string, Point> witnesses;
  /// Measurements that carry no pass bar.
  std::map<std::string, double> info;
  Scene scene;

  void expect(std::string description, double residual, double tolerance);
  void mark_inapplicable(std::string reason);
  /// Applicable and every assertion passes. Inapplicable reports are neither
  /// passes nor failures; callers filter on `applicable` first.
  bool passed() const;
  double max_residual() const;
};

// Tolerance multipliers, as multiples of ctx.eps_rel on normalised residuals.
inline constexpr double kTightFactor = 1.0;     // collinearity, angles, powers
inline constexpr double kConicFactor = 10.0;    // circle fits, parabola and conic membership
inline constexpr double kPencilFactor = 100.0;  // concurrency of fitted pencils

/// Triangle, the lines BC, AB, AC and the circles ω_a, Ω of one of the two
/// generalized configurations, oriented so that every tangency is an
/// oriented contact:
///   BC points toward A; AB and AC point away from the triangle;
///   Ω has positive radius; ω_a has radius +wa in case 1 and -wa in case 2.
/// Case 1 puts ω_a beyond A and Ω internally tangent to it; case 2 puts ω_a
/// inside angle A and Ω externally tangent. wa = 0 gives the circumcircle.
struct GeneralizedConfig {
  Triangle tri;
  ConfigCase which = ConfigCase::case1;
  double wa = 0.0;
  OrientedLine bc, ab, ac;
  Cycle omega_a;
  Cycle big;
  Point a_prime;
  Point incenter;
  ToleranceContext ctx;
  Scene scene;
};

/// Throws GeometryError when a construction step fails or its self-check
/// does not hold.
GeneralizedConfig orient_configuration(const Triangle& tri, double wa, ConfigCase which,
                                       const ToleranceContext& ctx = {});

/// Tangent line to ω_a whose unit normal has the given angle.
OrientedLine tangent_line_at(const GeneralizedConfig& g, double normal_angle);

/// The positive cycle touching `base` (as a segment from b to c), `k` and
/// `big`. Empty when k meets the base line outside the open segment, or
/// when the positive branch is not unique. `why` receives the reason.
std::optional<Cycle> inscribed_cycle(const OrientedLine& base, Point b, Point c, const OrientedLine& k,
                                     const Cycle& big, const ToleranceContext& ctx,
                                     std::string* why = nullptr);

// --- scenarios --------------------------------------------------------------

CheckReport classical_thebault(const Triangle& tri, double d, const ToleranceContext& ctx = {});

enum class CevianSide { toward_b, toward_c };

CheckReport sawayama_lemma(const Triangle& tri, double d, CevianSide side = CevianSide::toward_b,
                           const ToleranceContext& ctx = {});

/// The Sawayama circle for several cevians of one triangle: each E-F line
/// must pass through the incenter, and all of them through one point.
CheckReport sawayama_sweep(const Triangle& tri, const std::vector<double>& ds,
                           CevianSide side = CevianSide::toward_b, const ToleranceContext& ctx = {});

/// Circle below BC (opposite A) touching BC, AD and the circumcircle.
CheckReport sawayama_alt(const Triangle& tri, double d, const ToleranceContext& ctx = {});

CheckReport bisector_lemma(const Triangle& tri, double wa, ConfigCase which, const ToleranceContext& ctx = {});

CheckReport generalized_sawayama(const Triangle& tri, double wa, ConfigCase which,
                                 const std::vector<double>& k_angles, const ToleranceContext& ctx = {});

/// F, I', E, P, A' for the tangent line at `k_angle`, with I' fitted from
/// the lines D-E of `companion_angles`.
CheckReport concyclic_lemma(const Triangle& tri, double wa, ConfigCase which, double k_angle,
                            const std::vector<double>& companion_angles, const ToleranceContext& ctx = {});

struct CircleInvolution {
  enum class Kind { identity, reflection, fregier };
  Kind kind = Kind::identity;
  /// Axis direction angle (reflection) or the Frégier point (fregier).
  double axis_angle = 0.0;
  Point pivot;

  Point apply(const Cycle& carrier, Point x) const;
};

/// `outer` and `inner` in oriented internal contact at A; samples X on
/// `inner` at the given angles.
CheckReport involution_lemma(const Cycle& outer, const Cycle& inner, Point b, const CircleInvolution& f,
                             const std::vector<double>& sample_angles, const ToleranceContext& ctx = {});

/// P runs over t.point_at(s) for s in p_params.
CheckReport generalized_thebault(const Triangle& tri, double wa, ConfigCase which, const OrientedLine& t,
                                 const std::vector<double>& p_params, bool remark = true,
                                 const ToleranceContext& ctx = {});

/// Whether the position P on t yields both circles ω1, ω2.
bool thebault_position_applicable(const GeneralizedConfig& g, const OrientedLine& t, double s);

/// A line t clear of ω_a, above A as seen from BC: `lift` is its extra
/// height in units of A's height, `tilt` its angle to BC (dropped if the
/// tilted line would meet ω_a).
OrientedLine thebault_guide_line(const GeneralizedConfig& g, double tilt, double lift);

// --- fuzzing ----------------------------------------------------------------

const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

/// Seed of trial i of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// One randomized, well-conditioned trial of the named scenario. Throws
/// invalid_argument for an unknown name.
CheckReport run_trial(const std::string& name, std::uint64_t trial_seed, const ToleranceContext& ctx = {});

struct FuzzResult {
  std::vector<CheckReport> reports;  // in trial order
  std::size_t applicable = 0;
  std::size_t passed = 0;
  double pass_rate() const { return applicable == 0 ? 1.0 : static_cast<double>(passed) / applicable; }
  double max_residual() const;
};

/// `workers` == 0 picks the hardware concurrency. Results do not depend on it.
FuzzResult fuzz(const std::string& name, std::size_t trials, std::uint64_t seed,
                const ToleranceContext& ctx = {}, unsigned workers = 1);

// --- serialization ----------------------------------------------------------

/// {"schema": 1, "reports": [...]}.
std::string reports_to_json(const std::vector<CheckReport>& reports, int indent = 2);

}  // namespace cyclecert
