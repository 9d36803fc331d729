#include <algorithm>
#include <cmath>
#include <string>

#include "cyclecert/errors.hpp"
#include "cyclecert/harness.hpp"
#include "cyclecert/laguerre.hpp"
#include "cyclecert/projective.hpp"
#include "cyclecert/solvers.hpp"

namespace cyclecert {

namespace {

double tol(const ToleranceContext& tc, double factor) { return factor * tc.eps_rel; }

void put_triangle(CheckReport& rep, const Triangle& tri) {
  rep.params["ax"] = tri.a().x;
  rep.params["ay"] = tri.a().y;
  rep.params["bx"] = tri.b().x;
  rep.params["by"] = tri.b().y;
  rep.params["cx"] = tri.c().x;
  rep.params["cy"] = tri.c().y;
}

void put_config(CheckReport& rep, const Triangle& tri, double wa, ConfigCase which) {
  put_triangle(rep, tri);
  rep.params["wa"] = wa;
  rep.params["case"] = static_cast<double>(which);
}

void self_check(CheckReport& rep, const Scene& s, const ToleranceContext& tc) {
  rep.expect("construction self-check", tc.normalize(s.max_constraint_residual()), tol(tc, kConicFactor));
}

std::string indexed(const char* stem, std::size_t i) { return stem + std::to_string(i + 1); }

// Cevian circles of the classical configurations: BC towards A, the cevian
// AD towards the requested vertex, circumcircle positive.
struct Cevian {
  Point d;
  OrientedLine bc;
  OrientedLine ad;
  Cycle big;
  std::optional<Cycle> circle;
  std::string why;
};

Cevian cevian_circle(const Triangle& tri, double d, CevianSide side, bool below, const ToleranceContext& tc) {
  Cevian cv;
  if (!(d > 0.0 && d < 1.0)) {
    cv.why = "cevian foot must lie strictly inside BC";
    return cv;
  }
  cv.d = lerp(tri.b(), tri.c(), d);
  cv.bc = line_through(tri.b(), tri.c(), tri.a());
  if (below) cv.bc = cv.bc.flipped();
  cv.ad = line_through(tri.a(), cv.d, side == CevianSide::toward_b ? tri.b() : tri.c());
  cv.big = circumcircle(tri);
  cv.circle = inscribed_cycle(cv.bc, tri.b(), tri.c(), cv.ad, cv.big, tc, &cv.why);
  return cv;
}

template <class F>
CheckReport guarded(CheckReport rep, F&& body) {
  try {
    body(rep);
  } catch (const GeometryError& e) {
    rep.mark_inapplicable(e.what());
  }
  return rep;
}

CheckReport named(const char* scenario) {
  CheckReport rep;
  rep.scenario = scenario;
  return rep;
}

}  // namespace

CheckReport classical_thebault(const Triangle& tri, double d, const ToleranceContext& ctx) {
  return guarded(named("classical_thebault"), [&](CheckReport& rep) {
    put_triangle(rep, tri);
    rep.params["d"] = d;
    const ToleranceContext tc = ctx.with_scale(tri.diameter());
    const Cevian first = cevian_circle(tri, d, CevianSide::toward_b, false, tc);
    if (!first.circle) return rep.mark_inapplicable(first.why);
    const Cevian second = cevian_circle(tri, d, CevianSide::toward_c, false, tc);
    if (!second.circle) return rep.mark_inapplicable(second.why);
    const Cycle o1 = *first.circle, o2 = *second.circle;
    if (distance(o1.center, o2.center) <= tc.bar()) return rep.mark_inapplicable("O1 and O2 coincide");
    const Point i = incenter(tri);

    Scene& s = rep.scene;
    s.set("A", tri.a());
    s.set("B", tri.b());
    s.set("C", tri.c());
    s.set("D", first.d);
    s.set("I", i);
    s.set("O1", o1.center);
    s.set("O2", o2.center);
    s.set("BC", first.bc);
    s.set("AD", first.ad);
    s.set("DA", second.ad);
    s.set("Omega", first.big);
    s.set("omega1", o1);
    s.set("omega2", o2);
    s.set("incircle", Cycle{i, inradius(tri)});
    for (const char* v : {"A", "B", "C"}) s.declare_incidence(v, "Omega");
    s.declare_incidence("D", "BC");
    s.declare_incidence("D", "AD");
    s.declare_tangency("BC", "omega1");
    s.declare_tangency("AD", "omega1");
    s.declare_tangency("omega1", "Omega");
    s.declare_tangency("BC", "omega2");
    s.declare_tangency("DA", "omega2");
    s.declare_tangency("omega2", "Omega");
    s.declare_tangency("BC", "incircle");
    self_check(rep, s, tc);

    const Point pts[] = {o1.center, i, o2.center};
    rep.expect("O1, I, O2 collinear", check_collinear(pts, tc).max_residual, tol(tc, kTightFactor));
    rep.witnesses["O1"] = o1.center;
    rep.witnesses["O2"] = o2.center;
    rep.witnesses["I"] = i;
    rep.witnesses["D"] = first.d;
  });
}

CheckReport sawayama_lemma(const Triangle& tri, double d, CevianSide side, const ToleranceContext& ctx) {
  return guarded(named("sawayama_lemma"), [&](CheckReport& rep) {
    put_triangle(rep, tri);
    rep.params["d"] = d;
    rep.params["side"] = side == CevianSide::toward_b ? 0.0 : 1.0;
    const ToleranceContext tc = ctx.with_scale(tri.diameter());
    const Cevian cv = cevian_circle(tri, d, side, false, tc);
    if (!cv.circle) return rep.mark_inapplicable(cv.why);
    const Point e = tangency_point(cv.bc, *cv.circle);
    const Point f = tangency_point(cv.ad, *cv.circle);
    if (distance(e, f) <= tc.bar()) return rep.mark_inapplicable("E and F coincide");
    const Point i = incenter(tri);

    Scene& s = rep.scene;
    s.set("A", tri.a());
    s.set("B", tri.b());
    s.set("C", tri.c());
    s.set("D", cv.d);
    s.set("I", i);
    s.set("E", e);
    s.set("F", f);
    s.set("BC", cv.bc);
    s.set("AD", cv.ad);
    s.set("Omega", cv.big);
    s.set("omega", *cv.circle);
    for (const char* v : {"A", "B", "C"}) s.declare_incidence(v, "Omega");
    s.declare_incidence("E", "BC");
    s.declare_incidence("F", "AD");
    s.declare_tangency("BC", "omega");
    s.declare_tangency("AD", "omega");
    s.declare_tangency("omega", "Omega");
    self_check(rep, s, tc);

    const Point pts[] = {e, f, i};
    rep.expect("E, F, I collinear", check_collinear(pts, tc).max_residual, tol(tc, kTightFactor));
    rep.witnesses["E"] = e;
    rep.witnesses["F"] = f;
    rep.witnesses["I"] = i;
  });
}

CheckReport sawayama_sweep(const Triangle& tri, const std::vector<double>& ds, CevianSide side,
                           const ToleranceContext& ctx) {
  return guarded(named("sawayama_sweep"), [&](CheckReport& rep) {
    put_triangle(rep, tri);
    rep.params["side"] = side == CevianSide::toward_b ? 0.0 : 1.0;
    const ToleranceContext tc = ctx.with_scale(tri.diameter());
    const Point i = incenter(tri);
    std::vector<OrientedLine> lines;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      rep.params[indexed("d", j)] = ds[j];
      const Cevian cv = cevian_circle(tri, ds[j], side, false, tc);
      if (!cv.circle) continue;
      const Point e = tangency_point(cv.bc, *cv.circle);
      const Point f = tangency_point(cv.ad, *cv.circle);
      if (distance(e, f) <= tc.bar()) continue;
      lines.push_back(line_through(e, f));
      rep.scene.set(indexed("EF", j), lines.back());
    }
    rep.info["applicable_cevians"] = static_cast<double>(lines.size());
    if (lines.size() < 3) return rep.mark_inapplicable("fewer than three applicable cevians");
    const ConcurrencyFit fit = fit_concurrency(lines, tc);
    rep.expect("lines EF concurrent", fit.max_residual, tol(tc, kConicFactor));
    rep.expect("common point is the incenter", tc.normalize(distance(fit.point, i)), tol(tc, kConicFactor));
    rep.witnesses["I'"] = fit.point;
    rep.witnesses["I"] = i;
  });
}

CheckReport sawayama_alt(const Triangle& tri, double d, const ToleranceContext& ctx) {
  return guarded(named("sawayama_alt"), [&](CheckReport& rep) {
    put_triangle(rep, tri);
    rep.params["d"] = d;
    const ToleranceContext tc = ctx.with_scale(tri.diameter());
    const Cevian cv = cevian_circle(tri, d, CevianSide::toward_b, true, tc);
    if (!cv.circle) return rep.mark_inapplicable(cv.why);
    const Cycle w = *cv.circle;
    const Point e = tangency_point(cv.bc, w);
    const Point f = tangency_point(cv.ad, w);
    const Point p = tangency_point(cv.big, w);
    if (distance(e, f) <= tc.bar()) return rep.mark_inapplicable("E and F coincide");
    const Point m = arc_midpoint(cv.big, tri.b(), tri.c(), p, tc);
    const Point jc = excenter(tri, Vertex::c);

    Scene& s = rep.scene;
    s.set("A", tri.a());
    s.set("B", tri.b());
    s.set("C", tri.c());
    s.set("D", cv.d);
    s.set("E", e);
    s.set("F", f);
    s.set("P", p);
    s.set("M", m);
    s.set("J_c", jc);
    s.set("BC", cv.bc);
    s.set("AD", cv.ad);
    s.set("Omega", cv.big);
    s.set("omega", w);
    for (const char* v : {"A", "B", "C", "P", "M"}) s.declare_incidence(v, "Omega");
    s.declare_incidence("E", "BC");
    s.declare_incidence("F", "AD");
    s.declare_incidence("P", "omega");
    s.declare_tangency("BC", "omega");
    s.declare_tangency("AD", "omega");
    s.declare_tangency("omega", "Omega");
    self_check(rep, s, tc);

    const double mb = distance(m, tri.b());
    const double power = mb * mb - distance(m, e) * distance(m, p);
    rep.expect("MB^2 = ME * MP", power / (tc.scale * tc.scale), tol(tc, kTightFactor));
    rep.expect("MJ_c = MB", tc.normalize(distance(m, jc) - mb), tol(tc, kTightFactor));
    const Point pts[] = {e, f, jc};
    rep.expect("E, F, J_c collinear", check_collinear(pts, tc).max_residual, tol(tc, kTightFactor));
    rep.witnesses["M"] = m;
    rep.witnesses["P"] = p;
    rep.witnesses["J_c"] = jc;
  });
}

CheckReport bisector_lemma(const Triangle& tri, double wa, ConfigCase which, const ToleranceContext& ctx) {
  return guarded(named("bisector_lemma"), [&](CheckReport& rep) {
    put_config(rep, tri, wa, which);
    GeneralizedConfig g = orient_configuration(tri, wa, which, ctx);
    const ToleranceContext& tc = g.ctx;
    rep.scene = g.scene;
    self_check(rep, rep.scene, tc);
    const double left = angle_at(g.a_prime, tri.b(), g.incenter);
    const double right = angle_at(g.a_prime, g.incenter, tri.c());
    rep.expect("angle B A' I = angle I A' C", left - right, tol(tc, kTightFactor));
    rep.witnesses["A'"] = g.a_prime;
    rep.witnesses["I"] = g.incenter;
    rep.info["half_angle"] = left;
  });
}

namespace {

struct SawayamaLine {
  OrientedLine k;
  Cycle omega;
  Point d, e;
};

std::optional<SawayamaLine> generalized_line(const GeneralizedConfig& g, double angle, std::string* why) {
  SawayamaLine sl;
  sl.k = tangent_line_at(g, angle);
  auto w = inscribed_cycle(g.bc, g.tri.b(), g.tri.c(), sl.k, g.big, g.ctx, why);
  if (!w) return std::nullopt;
  sl.omega = *w;
  sl.d = tangency_point(g.bc, sl.omega);
  sl.e = tangency_point(sl.k, sl.omega);
  if (distance(sl.d, sl.e) <= g.ctx.bar()) {
    if (why) *why = "D and E coincide";
    return std::nullopt;
  }
  return sl;
}

void add_line(Scene& s, const SawayamaLine& sl, std::size_t j) {
  const std::string k = indexed("k", j), w = indexed("omega", j), d = indexed("D", j), e = indexed("E", j);
  s.set(k, sl.k);
  s.set(w, sl.omega);
  s.set(d, sl.d);
  s.set(e, sl.e);
  s.declare_tangency(k, "omega_a");
  s.declare_tangency(k, w);
  s.declare_tangency("BC", w);
  s.declare_tangency(w, "Omega");
  s.declare_incidence(d, "BC");
  s.declare_incidence(e, k);
}

}  // namespace

CheckReport generalized_sawayama(const Triangle& tri, double wa, ConfigCase which,
                                 const std::vector<double>& k_angles, const ToleranceContext& ctx) {
  return guarded(named("generalized_sawayama"), [&](CheckReport& rep) {
    put_config(rep, tri, wa, which);
    GeneralizedConfig g = orient_configuration(tri, wa, which, ctx);
    const ToleranceContext& tc = g.ctx;
    rep.scene = g.scene;
    std::vector<OrientedLine> lines;
    std::size_t skipped = 0;
    for (std::size_t j = 0; j < k_angles.size(); ++j) {
      rep.params[indexed("k", j)] = k_angles[j];
      const auto sl = generalized_line(g, k_angles[j], nullptr);
      if (!sl) {
        ++skipped;
        continue;
      }
      add_line(rep.scene, *sl, j);
      lines.push_back(line_through(sl->d, sl->e));
    }
    rep.info["inapplicable_lines"] = static_cast<double>(skipped);
    if (lines.size() < 3) return rep.mark_inapplicable("fewer than three applicable tangent lines");
    self_check(rep, rep.scene, tc);
    const ConcurrencyFit fit = fit_concurrency(lines, tc);
    rep.expect("lines DE concurrent", fit.max_residual, tol(tc, kPencilFactor));
    rep.expect("common point is the incenter", tc.normalize(distance(fit.point, g.incenter)),
               tol(tc, kPencilFactor));
    rep.scene.set("I'", fit.point);
    rep.witnesses["I'"] = fit.point;
    rep.witnesses["I"] = g.incenter;
  });
}

CheckReport concyclic_lemma(const Triangle& tri, double wa, ConfigCase which, double k_angle,
                            const std::vector<double>& companion_angles, const ToleranceContext& ctx) {
  return guarded(named("concyclic_lemma"), [&](CheckReport& rep) {
    put_config(rep, tri, wa, which);
    rep.params["k"] = k_angle;
    const CheckReport companion = generalized_sawayama(tri, wa, which, companion_angles, ctx);
    for (std::size_t j = 0; j < companion_angles.size(); ++j)
      rep.params[indexed("companion", j)] = companion_angles[j];
    if (!companion.applicable) return rep.mark_inapplicable("companion run: " + companion.inapplicable_reason);
    const Point i_prime = companion.witnesses.at("I'");

    GeneralizedConfig g = orient_configuration(tri, wa, which, ctx);
    const ToleranceContext& tc = g.ctx;
    std::string why;
    const auto sl = generalized_line(g, k_angle, &why);
    if (!sl) return rep.mark_inapplicable(why);
    const Point f = tangency_point(sl->k, g.omega_a);
    const Point p = tangency_point(g.big, sl->omega);

    rep.scene = g.scene;
    add_line(rep.scene, *sl, 0);
    rep.scene.set("F", f);
    rep.scene.set("P", p);
    rep.scene.set("I'", i_prime);
    rep.scene.declare_incidence("F", "k1");
    rep.scene.declare_incidence("P", "Omega");
    rep.scene.declare_incidence("P", "omega1");
    self_check(rep, rep.scene, tc);

    const Point pts[] = {f, i_prime, sl->e, p, g.a_prime};
    const CircleFit fit = fit_concyclic(pts, tc);
    rep.expect("F, I', E, P, A' concyclic", fit.max_residual, tol(tc, kConicFactor));
    rep.scene.set("circle_FIEPA", fit.circle);
    rep.witnesses["F"] = f;
    rep.witnesses["I'"] = i_prime;
    rep.witnesses["E"] = sl->e;
    rep.witnesses["P"] = p;
    rep.witnesses["A'"] = g.a_prime;
  });
}

Point CircleInvolution::apply(const Cycle& carrier, Point x) const {
  switch (kind) {
    case Kind::identity:
      return x;
    case Kind::reflection: {
      const Point u = unit_vector(axis_angle);
      const Point v = x - carrier.center;
      return carrier.center + u * (2.0 * dot(u, v)) - v;
    }
    case Kind::fregier:
      return second_intersection(line_through(x, pivot), carrier, x);
  }
  return x;
}

CheckReport involution_lemma(const Cycle& outer, const Cycle& inner, Point b, const CircleInvolution& f,
                             const std::vector<double>& sample_angles, const ToleranceContext& ctx) {
  return guarded(named("involution_lemma"), [&](CheckReport& rep) {
    rep.params["outer_x"] = outer.center.x;
    rep.params["outer_y"] = outer.center.y;
    rep.params["outer_r"] = outer.r;
    rep.params["inner_x"] = inner.center.x;
    rep.params["inner_y"] = inner.center.y;
    rep.params["inner_r"] = inner.r;
    rep.params["bx"] = b.x;
    rep.params["by"] = b.y;
    rep.params["f_kind"] = static_cast<double>(f.kind);
    rep.params["f_axis"] = f.axis_angle;
    rep.params["f_px"] = f.pivot.x;
    rep.params["f_py"] = f.pivot.y;
    for (std::size_t j = 0; j < sample_angles.size(); ++j) rep.params[indexed("x", j)] = sample_angles[j];

    const ToleranceContext tc = ctx.with_scale(2.0 * outer.radius());
    if (!(outer.radius() > inner.radius()) || !oriented_tangent(outer, inner, tc))
      return rep.mark_inapplicable("cycles are not in internal oriented contact");
    const Point a = tangency_point(outer, inner);
    if (distance(a, b) <= tc.bar()) return rep.mark_inapplicable("B coincides with A");

    Scene& s = rep.scene;
    s.set("Omega", outer);
    s.set("omega", inner);
    s.set("A", a);
    s.set("B", b);
    s.declare_tangency("Omega", "omega");
    s.declare_incidence("A", "Omega");
    s.declare_incidence("A", "omega");

    // Samples too close to A give circles (A X B) that nearly touch Omega.
    const double near = 1e-6 * tc.scale;
    std::vector<std::pair<Point, Point>> pairs;
    std::size_t skipped = 0;
    for (double theta : sample_angles) {
      const Point x = inner.at_angle(theta);
      const Point x2 = f.apply(inner, x);
      if (distance(x, a) <= near || distance(x2, a) <= near) {
        ++skipped;
        continue;
      }
      if (f.kind != CircleInvolution::Kind::identity && distance(x, x2) <= near) {
        ++skipped;
        continue;
      }
      try {
        const Point y = induced_point(outer, inner, b, x, tc);
        const Point y2 = induced_point(outer, inner, b, x2, tc);
        const std::size_t j = pairs.size();
        s.set(indexed("X", j), x);
        s.set(indexed("X'", j), x2);
        s.set(indexed("Y", j), y);
        s.set(indexed("Y'", j), y2);
        s.declare_incidence(indexed("X", j), "omega");
        s.declare_incidence(indexed("X'", j), "omega");
        s.declare_incidence(indexed("Y", j), "Omega");
        s.declare_incidence(indexed("Y'", j), "Omega");
        pairs.emplace_back(y, y2);
      } catch (const GeometryError&) {
        ++skipped;
      }
    }
    rep.info["inapplicable_samples"] = static_cast<double>(skipped);
    self_check(rep, s, tc);

    if (f.kind == CircleInvolution::Kind::identity) {
      double worst = 0.0;
      for (const auto& [y, y2] : pairs) worst = std::max(worst, distance(y, y2));
      rep.info["identity"] = 1.0;
      rep.expect("identity involution: Y' = Y", tc.normalize(worst), tol(tc, kTightFactor));
      return;
    }
    std::vector<std::pair<Point, Point>> chords;
    for (const auto& pr : pairs)
      if (distance(pr.first, pr.second) > tc.bar()) chords.push_back(pr);
    if (chords.size() < 3) return rep.mark_inapplicable("fewer than three usable sample pairs");

    const InvolutionWitness w = involution_on_conic_via_chords(chords, Conic{outer}, tc);
    rep.expect("chords YY' concurrent on Omega", w.max_residual, tol(tc, kConicFactor));
    if (w.fixed_point) {
      rep.witnesses["Q"] = *w.fixed_point;
    } else if (w.ideal_direction) {
      rep.witnesses["Q_direction"] = *w.ideal_direction;
    }

    // Inverting at A sends Omega to a line; the induced map must be a
    // bilinear involution of that line's parameter.
    const double k2 = tc.scale * tc.scale;
    const Shape image = invert(a, k2, Shape{outer}, tc);
    const auto* axis = std::get_if<OrientedLine>(&image);
    if (!axis) throw GeometryError(ErrorKind::center_on_object, "Omega did not invert to a line");
    std::vector<std::pair<double, double>> params;
    for (const auto& [y, y2] : chords)
      params.emplace_back(axis->parameter_of(invert(a, k2, y)), axis->parameter_of(invert(a, k2, y2)));
    const InvolutionWitness lw = fit_involution_on_line(params, tc);
    rep.expect("bilinear involution after inversion at A", lw.max_residual, tol(tc, kConicFactor));
  });
}

namespace {

struct ThebaultPair {
  Point p;
  OrientedLine k, l;
  Cycle w1, w2;
};

std::optional<ThebaultPair> thebault_pair(const GeneralizedConfig& g, const OrientedLine& t, double s,
                                          std::string* why) {
  ThebaultPair tp;
  tp.p = t.point_at(s);
  if (power_of_point(tp.p, g.omega_a) <= g.ctx.bar() * g.ctx.scale) {
    if (why) *why = "P is not outside omega_a";
    return std::nullopt;
  }
  const auto tangents = tangent_lines_from_point(tp.p, g.omega_a, g.ctx);
  tp.k = tangents[0];
  tp.l = tangents[1];
  const auto w1 = inscribed_cycle(g.bc, g.tri.b(), g.tri.c(), tp.k, g.big, g.ctx, why);
  if (!w1) return std::nullopt;
  const auto w2 = inscribed_cycle(g.bc, g.tri.b(), g.tri.c(), tp.l, g.big, g.ctx, why);
  if (!w2) return std::nullopt;
  tp.w1 = *w1;
  tp.w2 = *w2;
  if (distance(tp.w1.center, tp.w2.center) <= g.ctx.bar()) {
    if (why) *why = "O1 and O2 coincide";
    return std::nullopt;
  }
  return tp;
}

bool separated(const GeneralizedConfig& g, const OrientedLine& t) {
  return std::abs(t.signed_distance(g.omega_a.center)) > g.omega_a.radius() + g.ctx.bar();
}

// The fixed point read off the two positions of P where one tangent is a
// side of the triangle and its circle shrinks to a vertex. The other
// tangent may meet BC outside the segment, where two positive circles
// exist; the one meant is found by following the circle along t from the
// nearest applicable position.
std::optional<Point> remark_point(const GeneralizedConfig& g, const OrientedLine& t,
                                  const std::vector<double>& applicable) {
  if (applicable.empty()) return std::nullopt;
  std::vector<OrientedLine> lines;
  const std::pair<const OrientedLine*, Point> sides[] = {{&g.ac, g.tri.c()}, {&g.ab, g.tri.b()}};
  for (const auto& [side, vertex] : sides) {
    try {
      const double target = t.parameter_of(intersect(*side, t));
      const double start = *std::min_element(applicable.begin(), applicable.end(), [&](double x, double y) {
        return std::abs(x - target) < std::abs(y - target);
      });
      const auto at_target = tangent_lines_from_point(t.point_at(target), g.omega_a, g.ctx);
      const int other =
          std::abs(cross(at_target[0].n, side->n)) < std::abs(cross(at_target[1].n, side->n)) ? 1 : 0;
      auto tp = thebault_pair(g, t, start, nullptr);
      if (!tp) return std::nullopt;
      Point center = other == 0 ? tp->w1.center : tp->w2.center;
      constexpr int kSteps = 128;
      for (int i = 1; i <= kSteps; ++i) {
        const double s = start + (target - start) * i / kSteps;
        const auto k = tangent_lines_from_point(t.point_at(s), g.omega_a, g.ctx)[other];
        const auto branches = circle_tangent_to_line_line_cycle(g.bc, k, g.big, {}, g.ctx);
        const auto nearest = std::min_element(branches.begin(), branches.end(), [&](const auto& x, const auto& y) {
          return distance(x.cycle.center, center) < distance(y.cycle.center, center);
        });
        center = nearest->cycle.center;
      }
      if (distance(center, vertex) <= g.ctx.bar()) return std::nullopt;
      lines.push_back(line_through(vertex, center));
    } catch (const GeometryError&) {
      return std::nullopt;
    }
  }
  try {
    return intersect(lines[0], lines[1]);
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

}  // namespace

bool thebault_position_applicable(const GeneralizedConfig& g, const OrientedLine& t, double s) {
  if (!separated(g, t)) return false;
  try {
    return thebault_pair(g, t, s, nullptr).has_value();
  } catch (const GeometryError&) {
    return false;
  }
}

CheckReport generalized_thebault(const Triangle& tri, double wa, ConfigCase which, const OrientedLine& t,
                                 const std::vector<double>& p_params, bool remark, const ToleranceContext& ctx) {
  return guarded(named("generalized_thebault"), [&](CheckReport& rep) {
    put_config(rep, tri, wa, which);
    rep.params["t_nx"] = t.n.x;
    rep.params["t_ny"] = t.n.y;
    rep.params["t_p"] = t.p;
    for (std::size_t j = 0; j < p_params.size(); ++j) rep.params[indexed("p", j)] = p_params[j];

    GeneralizedConfig g = orient_configuration(tri, wa, which, ctx);
    const ToleranceContext& tc = g.ctx;
    if (!separated(g, t)) return rep.mark_inapplicable("line t meets omega_a");
    const Parabola parabola{g.big.center, {g.bc.n, g.bc.p + g.big.r}};

    Scene& s = rep.scene;
    s = g.scene;
    s.set("t", t);
    s.set("m", parabola.directrix);
    s.set("parabola", parabola);

    std::vector<OrientedLine> lines;
    std::vector<std::pair<Point, Point>> chords;
    std::vector<double> used;
    double parabola_worst = 0.0;
    std::size_t skipped = 0;
    for (double param : p_params) {
      std::optional<ThebaultPair> tp;
      try {
        tp = thebault_pair(g, t, param, nullptr);
      } catch (const GeometryError&) {
      }
      if (!tp) {
        ++skipped;
        continue;
      }
      const std::size_t j = lines.size();
      const std::string w1 = indexed("omega1_", j), w2 = indexed("omega2_", j);
      const std::string k = indexed("k", j), l = indexed("l", j);
      const std::string o1 = indexed("O1_", j), o2 = indexed("O2_", j), p = indexed("P", j);
      s.set(p, tp->p);
      s.set(k, tp->k);
      s.set(l, tp->l);
      s.set(w1, tp->w1);
      s.set(w2, tp->w2);
      s.set(o1, tp->w1.center);
      s.set(o2, tp->w2.center);
      s.declare_incidence(p, "t");
      s.declare_incidence(p, k);
      s.declare_incidence(p, l);
      for (const auto& [line, circle] : {std::pair{k, w1}, std::pair{l, w2}}) {
        s.declare_tangency(line, "omega_a");
        s.declare_tangency(line, circle);
        s.declare_tangency("BC", circle);
        s.declare_tangency(circle, "Omega");
      }
      parabola_worst = std::max({parabola_worst, std::abs(parabola_residual(parabola, tp->w1.center)),
                                 std::abs(parabola_residual(parabola, tp->w2.center))});
      lines.push_back(line_through(tp->w1.center, tp->w2.center));
      chords.emplace_back(tp->w1.center, tp->w2.center);
      used.push_back(param);
    }
    rep.info["inapplicable_positions"] = static_cast<double>(skipped);
    if (lines.size() < 3) return rep.mark_inapplicable("fewer than three applicable positions of P");
    self_check(rep, s, tc);

    rep.expect("O1, O2 on the parabola", tc.normalize(parabola_worst), tol(tc, kConicFactor));
    const ConcurrencyFit fit = fit_concurrency(lines, tc);
    rep.expect("lines O1O2 concurrent", fit.max_residual, tol(tc, kPencilFactor));
    const InvolutionWitness w = involution_on_conic_via_chords(chords, Conic{parabola}, tc);
    rep.expect("O1 -> O2 is an involution on the parabola", w.max_residual, tol(tc, kPencilFactor));

    s.set("I'", fit.point);
    rep.witnesses["I'"] = fit.point;
    rep.witnesses["I"] = g.incenter;
    rep.info["incenter_distance"] = tc.normalize(distance(fit.point, g.incenter));
    if (remark) {
      if (const auto rp = remark_point(g, t, used)) {
        rep.witnesses["remark_point"] = *rp;
        rep.info["remark_distance"] = tc.normalize(distance(fit.point, *rp));
      }
    }
  });
}

}  // namespace cyclecert
