#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cyclecert/errors.hpp"
#include "cyclecert/primitives.hpp"
#include "cyclecert/tolerance.hpp"

namespace cyclecert {

using Element = std::variant<Point, OrientedLine, Cycle, Parabola>;

enum class TangencySense { oriented, unoriented };

struct Tangency {
  std::string first;
  std::string second;
  TangencySense sense = TangencySense::oriented;
};

struct Incidence {
  std::string point;
  std::string carrier;
};

struct ConstraintResidual {
  std::string description;
  double residual = 0.0;  // absolute, scene units
};

/// Named primitives plus the tangencies/incidences they are declared to
/// satisfy. Elements keep first-insertion order so that anything iterating a
/// scene (rendering, serialisation) is deterministic.
class Scene {
 public:
  /// Inserts or replaces; a replaced element keeps its original position.
  void set(const std::string& name, Element e);
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const Element& at(const std::string& name) const;

  template <class T>
  const T& get(const std::string& name) const;

  const std::vector<std::pair<std::string, Element>>& elements() const { return elements_; }
  bool empty() const { return elements_.empty(); }

  void declare_tangency(const std::string& a, const std::string& b,
                        TangencySense sense = TangencySense::oriented);
  void declare_incidence(const std::string& point, const std::string& carrier);
  const std::vector<Tangency>& tangencies() const { return tangencies_; }
  const std::vector<Incidence>& incidences() const { return incidences_; }

  /// One entry per declared constraint.
  std::vector<ConstraintResidual> constraint_residuals() const;
  double max_constraint_residual() const;
  bool satisfied(const ToleranceContext& ctx) const;

 private:
  std::vector<std::pair<std::string, Element>> elements_;
  std::map<std::string, std::size_t> index_;
  std::vector<Tangency> tangencies_;
  std::vector<Incidence> incidences_;
};

/// Signed/absolute residual helpers shared by the scene and the predicates.
double incidence_residual(Point q, const Element& carrier);
double tangency_residual(const Element& a, const Element& b, TangencySense sense);

template <class T>
const T& Scene::get(const std::string& name) const {
  const Element& e = at(name);
  if (const T* v = std::get_if<T>(&e)) return *v;
  throw GeometryError(ErrorKind::invalid_argument, "scene element '" + name + "' has a different type");
}

}  // namespace cyclecert
