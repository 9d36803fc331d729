#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "cyclecert/errors.hpp"
#include "cyclecert/harness.hpp"
#include "cyclecert/random.hpp"

namespace cyclecert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFuzzMinAngle = 0.15;

Triangle random_triangle(Rng& rng) {
  for (;;) {
    const Point a{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Point b{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Point c{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (min_vertex_angle(a, b, c) >= kFuzzMinAngle) return Triangle(a, b, c);
  }
}

ConfigCase random_case(Rng& rng) { return rng.coin() ? ConfigCase::case1 : ConfigCase::case2; }

double random_wa(Rng& rng, const Triangle& tri) { return rng.uniform(0.0, 0.4) * inradius(tri); }

// Normal angles of tangent lines to omega_a that admit the inscribed cycle.
std::vector<double> screened_angles(Rng& rng, const GeneralizedConfig& g, std::size_t wanted) {
  std::vector<double> out;
  for (int attempt = 0; attempt < 400 && out.size() < wanted; ++attempt) {
    const double phi = rng.uniform(0.0, kTwoPi);
    const OrientedLine k = tangent_line_at(g, phi);
    if (inscribed_cycle(g.bc, g.tri.b(), g.tri.c(), k, g.big, g.ctx)) out.push_back(phi);
  }
  return out;
}

CheckReport trial_classical(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  return classical_thebault(tri, rng.uniform(0.05, 0.95), ctx);
}

CheckReport trial_sawayama(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  const double d = rng.uniform(0.05, 0.95);
  return sawayama_lemma(tri, d, rng.coin() ? CevianSide::toward_b : CevianSide::toward_c, ctx);
}

CheckReport trial_sawayama_alt(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  return sawayama_alt(tri, rng.uniform(0.05, 0.95), ctx);
}

CheckReport trial_bisector(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  const double wa = random_wa(rng, tri);
  return bisector_lemma(tri, wa, random_case(rng), ctx);
}

CheckReport trial_generalized_sawayama(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  const double wa = random_wa(rng, tri);
  const ConfigCase which = random_case(rng);
  std::vector<double> angles;
  try {
    angles = screened_angles(rng, orient_configuration(tri, wa, which, ctx), 8);
  } catch (const GeometryError&) {
  }
  return generalized_sawayama(tri, wa, which, angles, ctx);
}

CheckReport trial_concyclic(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  const double wa = random_wa(rng, tri);
  const ConfigCase which = random_case(rng);
  std::vector<double> angles;
  try {
    angles = screened_angles(rng, orient_configuration(tri, wa, which, ctx), 9);
  } catch (const GeometryError&) {
  }
  const double k = angles.empty() ? 0.0 : angles.back();
  if (!angles.empty()) angles.pop_back();
  return concyclic_lemma(tri, wa, which, k, angles, ctx);
}

CheckReport trial_involution(Rng& rng, const ToleranceContext& ctx) {
  const Point center{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const double big_r = rng.uniform(0.5, 1.5);
  const double small_r = big_r * rng.uniform(0.2, 0.8);
  const Point toward_a = unit_vector(rng.uniform(0.0, kTwoPi));
  const Cycle outer{center, big_r};
  const Cycle inner{center + toward_a * (big_r - small_r), small_r};
  const Point a = center + toward_a * big_r;

  // B away from both circles' boundaries and from A.
  Point b;
  for (;;) {
    b = center + unit_vector(rng.uniform(0.0, kTwoPi)) * (big_r * rng.uniform(0.0, 2.0));
    const bool clear_outer = std::abs(distance(b, center) - big_r) > 0.1 * big_r;
    const bool clear_inner = std::abs(distance(b, inner.center) - small_r) > 0.1 * small_r;
    if (clear_outer && clear_inner && distance(b, a) > 0.2 * big_r) break;
  }

  CircleInvolution f;
  if (rng.below(4) == 0) {
    f.kind = CircleInvolution::Kind::reflection;
    f.axis_angle = rng.uniform(0.0, std::numbers::pi);
  } else {
    f.kind = CircleInvolution::Kind::fregier;
    f.pivot = inner.center + unit_vector(rng.uniform(0.0, kTwoPi)) * (0.8 * small_r * std::sqrt(rng.uniform()));
  }
  std::vector<double> samples(7);
  for (auto& s : samples) s = rng.uniform(0.0, kTwoPi);
  return involution_lemma(outer, inner, b, f, samples, ctx);
}

CheckReport trial_generalized_thebault(Rng& rng, const ToleranceContext& ctx) {
  const Triangle tri = random_triangle(rng);
  const double wa = random_wa(rng, tri);
  const ConfigCase which = random_case(rng);
  const double tilt = rng.uniform(-0.3, 0.3);
  const double lift = rng.uniform(0.3, 0.6);
  OrientedLine t{{0.0, 1.0}, 0.0};
  std::vector<double> params;
  try {
    const GeneralizedConfig g = orient_configuration(tri, wa, which, ctx);
    t = thebault_guide_line(g, tilt, lift);
    for (int attempt = 0; attempt < 200 && params.size() < 6; ++attempt) {
      const Point x = lerp(tri.b(), tri.c(), rng.uniform(0.02, 0.98));
      const Point p = intersect(t, line_through(g.omega_a.center, x));
      const double s = t.parameter_of(p);
      if (thebault_position_applicable(g, t, s)) params.push_back(s);
    }
  } catch (const GeometryError&) {
  }
  return generalized_thebault(tri, wa, which, t, params, true, ctx);
}

struct Entry {
  std::string name;
  std::function<CheckReport(Rng&, const ToleranceContext&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"classical_thebault", trial_classical},
      {"sawayama_lemma", trial_sawayama},
      {"sawayama_alt", trial_sawayama_alt},
      {"bisector_lemma", trial_bisector},
      {"generalized_sawayama", trial_generalized_sawayama},
      {"concyclic_lemma", trial_concyclic},
      {"involution_lemma", trial_involution},
      {"generalized_thebault", trial_generalized_thebault},
  };
  return entries;
}

}  // namespace

OrientedLine thebault_guide_line(const GeneralizedConfig& g, double tilt, double lift) {
  const double h_a = g.bc.signed_distance(g.tri.a());
  const double top = std::max(h_a, g.bc.signed_distance(g.omega_a.center) + g.omega_a.radius());
  const Point base = g.tri.a() + g.bc.n * (top - h_a + lift * h_a);
  const Point along = g.bc.direction() * std::cos(tilt) + g.bc.n * std::sin(tilt);
  OrientedLine t = line_with_normal(base, perp(along));
  if (std::abs(t.signed_distance(g.omega_a.center)) <= g.omega_a.radius() + g.ctx.bar())
    t = line_with_normal(base, g.bc.n);
  return t;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

bool is_scenario(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return true;
  return false;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

CheckReport run_trial(const std::string& name, std::uint64_t seed, const ToleranceContext& ctx) {
  for (const auto& e : registry()) {
    if (e.name != name) continue;
    Rng rng(seed);
    CheckReport rep = e.run(rng, ctx);
    rep.seed = seed;
    return rep;
  }
  throw GeometryError(ErrorKind::invalid_argument, "unknown scenario '" + name + "'");
}

double FuzzResult::max_residual() const {
  double worst = 0.0;
  for (const auto& r : reports)
    if (r.applicable) worst = std::max(worst, r.max_residual());
  return worst;
}

FuzzResult fuzz(const std::string& name, std::size_t trials, std::uint64_t seed, const ToleranceContext& ctx,
                unsigned workers) {
  if (!is_scenario(name)) throw GeometryError(ErrorKind::invalid_argument, "unknown scenario '" + name + "'");
  FuzzResult result;
  result.reports.resize(trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(trials, 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      CheckReport rep = run_trial(name, trial_seed(seed, i), ctx);
      rep.params["trial"] = static_cast<double>(i);
      result.reports[i] = std::move(rep);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (const auto& r : result.reports) {
    if (!r.applicable) continue;
    ++result.applicable;
    if (r.passed()) ++result.passed;
  }
  return result;
}

}  // namespace cyclecert
