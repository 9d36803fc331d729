#include "cyclecert/laguerre.hpp"

#include <cmath>

#include "cyclecert/errors.hpp"

namespace cyclecert {

double oriented_residual(const OrientedLine& l, const Cycle& c) { return l.signed_distance(c.center) - c.r; }

double oriented_residual(const Cycle& c1, const Cycle& c2) {
  return distance(c1.center, c2.center) - std::abs(c1.r - c2.r);
}

bool oriented_tangent(const OrientedLine& l, const Cycle& c, const ToleranceContext& ctx) {
  return std::abs(oriented_residual(l, c)) <= ctx.bar();
}

bool oriented_tangent(const Cycle& c1, const Cycle& c2, const ToleranceContext& ctx) {
  return std::abs(oriented_residual(c1, c2)) <= ctx.bar();
}

Point tangency_point(const OrientedLine& l, const Cycle& c) { return c.center - l.n * c.r; }

Point tangency_point(const Cycle& c1, const Cycle& c2) {
  const double dr = c1.r - c2.r;
  if (dr == 0.0) throw GeometryError(ErrorKind::not_tangent, "equal signed radii have no contact point");
  return (c2.center * c1.r - c1.center * c2.r) / dr;
}

Cycle dilate(const Cycle& c, double t) { return {c.center, c.r + t}; }

OrientedLine dilate(const OrientedLine& l, double t) { return {l.n, l.p - t}; }

std::pair<Scene, DilationWitness> dilate(const Scene& s, double t) {
  Scene out;
  for (const auto& [name, e] : s.elements()) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Cycle> || std::is_same_v<T, OrientedLine>)
            out.set(name, dilate(v, t));
          else
            out.set(name, v);
        },
        e);
  }
  for (const auto& tg : s.tangencies()) out.declare_tangency(tg.first, tg.second, tg.sense);
  for (const auto& in : s.incidences()) out.declare_incidence(in.point, in.carrier);

  DilationWitness w;
  w.t = t;
  for (const auto& tg : s.tangencies()) {
    if (tg.sense != TangencySense::oriented) continue;
    const Element& a0 = s.at(tg.first);
    const Element& b0 = s.at(tg.second);
    const Element& a1 = out.at(tg.first);
    const Element& b1 = out.at(tg.second);
    const auto* la = std::get_if<OrientedLine>(&a0);
    const auto* lb = std::get_if<OrientedLine>(&b0);
    const auto* ca = std::get_if<Cycle>(&a0);
    const auto* cb = std::get_if<Cycle>(&b0);
    if (la && cb) {
      w.displaced_pairs.push_back({tg.first, tg.second, tangency_point(*la, *cb),
                                   tangency_point(std::get<OrientedLine>(a1), std::get<Cycle>(b1))});
    } else if (lb && ca) {
      w.displaced_pairs.push_back({tg.first, tg.second, tangency_point(*lb, *ca),
                                   tangency_point(std::get<OrientedLine>(b1), std::get<Cycle>(a1))});
    } else if (ca && cb && ca->r != cb->r) {
      w.displaced_pairs.push_back({tg.first, tg.second, tangency_point(*ca, *cb),
                                   tangency_point(std::get<Cycle>(a1), std::get<Cycle>(b1))});
    }
  }
  w.pre = s;
  w.post = out;
  return {std::move(out), std::move(w)};
}

std::pair<Point, Point> tangency_displacement(const Scene& before, const Scene& after,
                                              const std::string& line_id,
                                              const std::string& cycle_id,
                                              const ToleranceContext& ctx) {
  const auto& l0 = before.get<OrientedLine>(line_id);
  const auto& c0 = before.get<Cycle>(cycle_id);
  const auto& l1 = after.get<OrientedLine>(line_id);
  const auto& c1 = after.get<Cycle>(cycle_id);
  if (!oriented_tangent(l0, c0, ctx) || !oriented_tangent(l1, c1, ctx))
    throw GeometryError(ErrorKind::not_tangent, line_id + " and " + cycle_id + " are not in oriented contact");
  return {tangency_point(l0, c0), tangency_point(l1, c1)};
}

}  // namespace cyclecert
