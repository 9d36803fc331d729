#include "cyclecert/scene.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cyclecert/laguerre.hpp"
#include "cyclecert/projective.hpp"

namespace cyclecert {

void Scene::set(const std::string& name, Element e) {
  if (auto it = index_.find(name); it != index_.end()) {
    elements_[it->second].second = std::move(e);
    return;
  }
  index_.emplace(name, elements_.size());
  elements_.emplace_back(name, std::move(e));
}

const Element& Scene::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw GeometryError(ErrorKind::invalid_argument, "scene has no element '" + name + "'");
  return elements_[it->second].second;
}

void Scene::declare_tangency(const std::string& a, const std::string& b, TangencySense sense) {
  at(a);
  at(b);
  tangencies_.push_back({a, b, sense});
}

void Scene::declare_incidence(const std::string& point, const std::string& carrier) {
  get<Point>(point);
  at(carrier);
  incidences_.push_back({point, carrier});
}

namespace {

// Points take part in tangencies as point-cycles.
std::optional<Cycle> as_cycle(const Element& e) {
  if (const auto* c = std::get_if<Cycle>(&e)) return *c;
  if (const auto* p = std::get_if<Point>(&e)) return Cycle{*p, 0.0};
  return std::nullopt;
}

}  // namespace

double incidence_residual(Point q, const Element& carrier) {
  return std::visit(
      [&](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Point>)
          return distance(q, c);
        else if constexpr (std::is_same_v<T, OrientedLine>)
          return std::abs(c.signed_distance(q));
        else if constexpr (std::is_same_v<T, Cycle>)
          return std::abs(distance(q, c.center) - c.radius());
        else
          return std::abs(parabola_residual(c, q));
      },
      carrier);
}

double tangency_residual(const Element& a, const Element& b, TangencySense sense) {
  const auto* la = std::get_if<OrientedLine>(&a);
  const auto* lb = std::get_if<OrientedLine>(&b);
  const auto ca = as_cycle(a);
  const auto cb = as_cycle(b);
  if (la && cb) {
    return sense == TangencySense::oriented
               ? std::abs(oriented_residual(*la, *cb))
               : std::abs(std::abs(la->signed_distance(cb->center)) - cb->radius());
  }
  if (lb && ca) return tangency_residual(b, a, sense);
  if (ca && cb) {
    if (sense == TangencySense::oriented) return std::abs(oriented_residual(*ca, *cb));
    const double d = distance(ca->center, cb->center);
    return std::min(std::abs(d - std::abs(ca->radius() - cb->radius())),
                    std::abs(d - (ca->radius() + cb->radius())));
  }
  throw GeometryError(ErrorKind::invalid_argument, "tangency needs a line or cycle on each side");
}

std::vector<ConstraintResidual> Scene::constraint_residuals() const {
  std::vector<ConstraintResidual> out;
  out.reserve(tangencies_.size() + incidences_.size());
  for (const auto& t : tangencies_) {
    out.push_back({"tangent(" + t.first + ", " + t.second + ")",
                   tangency_residual(at(t.first), at(t.second), t.sense)});
  }
  for (const auto& i : incidences_) {
    out.push_back({"on(" + i.point + ", " + i.carrier + ")",
                   incidence_residual(get<Point>(i.point), at(i.carrier))});
  }
  return out;
}

double Scene::max_constraint_residual() const {
  double worst = 0.0;
  for (const auto& r : constraint_residuals()) worst = std::max(worst, r.residual);
  return worst;
}

bool Scene::satisfied(const ToleranceContext& ctx) const {
  return max_constraint_residual() <= ctx.bar();
}

}  // namespace cyclecert
