#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <variant>

#include "cyclecert/core.hpp"
#include "cyclecert/dsl.hpp"
#include "cyclecert/laguerre.hpp"
#include "cyclecert/projective.hpp"
#include "cyclecert/random.hpp"
#include "cyclecert/solvers.hpp"

namespace cyclecert::dsl {

namespace {

using Value = std::variant<double, Point, OrientedLine, Cycle>;

const char* type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "point";
    case 2: return "line";
    default: return "circle";
  }
}

template <class T>
const char* type_name_of() {
  if constexpr (std::is_same_v<T, double>) return "number";
  else if constexpr (std::is_same_v<T, Point>) return "point";
  else if constexpr (std::is_same_v<T, OrientedLine>) return "line";
  else return "circle";
}

struct Binding {
  Value value;
  bool family = false;
  std::vector<Value> members;
};

struct EvalError {
  Diagnostic diag;
};

[[noreturn]] void error_at(const Span& span, std::string message) {
  throw EvalError{{Severity::error, std::move(message), span, std::nullopt}};
}

Element to_element(const Value& v) {
  return std::visit(
      [](const auto& x) -> Element {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return Point{};
        else return x;
      },
      v);
}

class Evaluator {
 public:
  Evaluator(const ToleranceContext& ctx, std::uint64_t seed) : ctx_(ctx), rng_(seed) {}

  EvalResult run(const AstNode& program) {
    try {
      for (const auto& st : program.args) statement(st, nullptr);
    } catch (const EvalError& e) {
      out_.diagnostics.push_back(e.diag);
    }
    for (const auto& name : order_) {
      const Binding& b = env_.at(name);
      if (!b.family) {
        if (!std::holds_alternative<double>(b.value)) out_.scene.set(name, to_element(b.value));
        continue;
      }
      for (std::size_t i = 0; i < b.members.size(); ++i)
        if (!std::holds_alternative<double>(b.members[i]))
          out_.scene.set(name + "_" + std::to_string(i + 1), to_element(b.members[i]));
    }
    return std::move(out_);
  }

 private:
  ToleranceContext ctx_;
  Rng rng_;
  std::map<std::string, Binding> env_;
  std::vector<std::string> order_;
  EvalResult out_;

  // Per-sample context of a sweep: the reports of its check statements.
  struct SweepFrame {
    std::string var;
    double value = 0.0;
    std::map<const AstNode*, std::size_t> reports;
  };

  void bind(const std::string& name, Value v) {
    if (!env_.count(name)) order_.push_back(name);
    env_[name] = Binding{std::move(v), false, {}};
  }

  void statement(const AstNode& st, SweepFrame* frame) {
    switch (st.kind) {
      case NodeKind::point_def: define<Point>(st); break;
      case NodeKind::line_def: define<OrientedLine>(st); break;
      case NodeKind::circle_def: define<Cycle>(st); break;
      case NodeKind::let_def: bind(st.name, guarded_eval(st.args[0], st)); break;
      case NodeKind::check: check(st, frame); break;
      case NodeKind::sweep: sweep(st); break;
      default: error_at(st.span, "not a statement");
    }
  }

  template <class T>
  void define(const AstNode& st) {
    Value v = guarded_eval(st.args[0], st);
    if (!std::holds_alternative<T>(v))
      error_at(st.args[0].span, std::string("'") + st.name + "' is declared as a " + type_name_of<T>() +
                                    " but the expression is a " + type_name(v));
    bind(st.name, std::move(v));
  }

  Value guarded_eval(const AstNode& e, const AstNode& st) {
    try {
      return eval(e);
    } catch (const GeometryError& g) {
      error_at(st.span, "cannot construct '" + st.name + "': " + g.what());
    }
  }

  void sweep(const AstNode& st) {
    const AstNode& range = st.args[0];
    const double lo = number(range.args[0]);
    const double hi = number(range.args[1]);
    const double count = number(range.args[2]);
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e6)
      error_at(range.args[2].span, "sample count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);

    const auto outer = env_;
    const auto outer_order = order_;
    std::map<std::string, std::vector<Value>> families;
    std::vector<std::string> family_order{st.name};
    SweepFrame frame{st.name, 0.0, {}};
    for (std::size_t i = 0; i < n; ++i) {
      env_ = outer;
      order_ = outer_order;
      frame.value = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      bind(st.name, frame.value);
      for (const auto& inner : st.args[1].args) statement(inner, &frame);
      for (std::size_t k = outer_order.size(); k < order_.size(); ++k) {
        const std::string& name = order_[k];
        if (i == 0 && name != st.name) family_order.push_back(name);
        families[name].push_back(env_.at(name).value);
      }
    }
    env_ = outer;
    order_ = outer_order;
    for (const auto& name : family_order) {
      order_.push_back(name);
      env_[name] = Binding{Value{}, true, std::move(families[name])};
    }
  }

  // --- expressions ----------------------------------------------------------

  double number(const AstNode& e) { return as<double>(eval(e), e.span); }

  template <class T>
  T as(const Value& v, const Span& span) {
    if (const T* x = std::get_if<T>(&v)) return *x;
    error_at(span, std::string("expected a ") + type_name_of<T>() + ", found a " + type_name(v));
  }

  template <class T>
  T arg(const AstNode& call, std::size_t i) {
    return as<T>(eval(call.args[i]), call.args[i].span);
  }

  const Binding& lookup(const AstNode& e) {
    auto it = env_.find(e.name);
    if (it == env_.end()) error_at(e.span, "undefined name '" + e.name + "'");
    return it->second;
  }

  Value eval(const AstNode& e) {
    switch (e.kind) {
      case NodeKind::number:
        return e.value;
      case NodeKind::name: {
        const Binding& b = lookup(e);
        if (b.family) error_at(e.span, "'" + e.name + "' is a sweep family; only variadic checks accept it");
        return b.value;
      }
      case NodeKind::tuple:
        return Point{number(e.args[0]), number(e.args[1])};
      case NodeKind::negate: {
        const Value v = eval(e.args[0]);
        if (const auto* d = std::get_if<double>(&v)) return -*d;
        if (const auto* p = std::get_if<Point>(&v)) return -*p;
        error_at(e.span, std::string("cannot negate a ") + type_name(v));
      }
      case NodeKind::binary:
        return binary(e);
      case NodeKind::call:
        return call(e);
      case NodeKind::keyword_arg:
        error_at(e.span, "keyword argument '" + e.name + "' is not accepted here");
      default:
        error_at(e.span, "not an expression");
    }
  }

  Value binary(const AstNode& e) {
    const Value l = eval(e.args[0]);
    const Value r = eval(e.args[1]);
    const char op = e.name[0];
    const auto* ld = std::get_if<double>(&l);
    const auto* rd = std::get_if<double>(&r);
    const auto* lp = std::get_if<Point>(&l);
    const auto* rp = std::get_if<Point>(&r);
    if (ld && rd) {
      switch (op) {
        case '+': return *ld + *rd;
        case '-': return *ld - *rd;
        case '*': return *ld * *rd;
        default:
          if (*rd == 0.0) error_at(e.span, "division by zero");
          return *ld / *rd;
      }
    }
    if (lp && rp && op == '+') return *lp + *rp;
    if (lp && rp && op == '-') return *lp - *rp;
    if (lp && rd && op == '*') return *lp * *rd;
    if (ld && rp && op == '*') return *rp * *ld;
    if (lp && rd && op == '/') {
      if (*rd == 0.0) error_at(e.span, "division by zero");
      return *lp / *rd;
    }
    error_at(e.span, std::string("operator '") + op + "' does not apply to a " + type_name(l) + " and a " +
                         type_name(r));
  }

  // Positional arguments only (keyword arguments are looked up separately).
  std::vector<const AstNode*> positional(const AstNode& call) {
    std::vector<const AstNode*> out;
    for (const auto& a : call.args)
      if (a.kind != NodeKind::keyword_arg) out.push_back(&a);
    return out;
  }

  const AstNode* keyword(const AstNode& call, std::string_view key) {
    for (const auto& a : call.args)
      if (a.kind == NodeKind::keyword_arg && a.name == key) return &a.args[0];
    return nullptr;
  }

  void allow_keywords(const AstNode& call, std::initializer_list<std::string_view> keys) {
    for (const auto& a : call.args) {
      if (a.kind != NodeKind::keyword_arg) continue;
      if (std::find(keys.begin(), keys.end(), a.name) == keys.end())
        error_at(a.span, "'" + call.name + "' has no argument '" + a.name + "'");
    }
  }

  void arity(const AstNode& call, std::size_t lo, std::size_t hi) {
    const std::size_t n = positional(call).size();
    if (n < lo || n > hi) {
      const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
      error_at(call.span, "'" + call.name + "' takes " + want + " arguments, got " + std::to_string(n));
    }
  }

  template <class T>
  T pos(const AstNode& call, std::size_t i) {
    const AstNode* a = positional(call)[i];
    return as<T>(eval(*a), a->span);
  }

  std::string flag(const AstNode& call, std::size_t i, std::initializer_list<std::string_view> allowed) {
    const AstNode* a = positional(call)[i];
    if (a->kind == NodeKind::name && std::find(allowed.begin(), allowed.end(), a->name) != allowed.end())
      return a->name;
    std::string list;
    for (auto s : allowed) list += (list.empty() ? "" : ", ") + std::string(s);
    error_at(a->span, "expected one of: " + list);
  }

  Value call(const AstNode& c) {
    const std::string& f = c.name;
    if (f != "through" && f != "tangent2" && f != "apollonius_llc") allow_keywords(c, {});

    // numbers
    if (f == "pi") return arity(c, 0, 0), std::numbers::pi;
    if (f == "sqrt") {
      arity(c, 1, 1);
      const double x = pos<double>(c, 0);
      if (x < 0.0) error_at(c.span, "square root of a negative number");
      return std::sqrt(x);
    }
    if (f == "sin") return arity(c, 1, 1), std::sin(pos<double>(c, 0));
    if (f == "cos") return arity(c, 1, 1), std::cos(pos<double>(c, 0));
    if (f == "tan") return arity(c, 1, 1), std::tan(pos<double>(c, 0));
    if (f == "abs") return arity(c, 1, 1), std::abs(pos<double>(c, 0));
    if (f == "atan2") return arity(c, 2, 2), std::atan2(pos<double>(c, 0), pos<double>(c, 1));
    if (f == "rand") {
      arity(c, 2, 2);
      const double lo = pos<double>(c, 0), hi = pos<double>(c, 1);
      return rng_.uniform(lo, hi);
    }
    if (f == "radius") return arity(c, 1, 1), pos<Cycle>(c, 0).radius();
    if (f == "dist") return arity(c, 2, 2), distance(pos<Point>(c, 0), pos<Point>(c, 1));
    if (f == "x") return arity(c, 1, 1), pos<Point>(c, 0).x;
    if (f == "y") return arity(c, 1, 1), pos<Point>(c, 0).y;
    if (f == "angle") return arity(c, 3, 3), angle_at(pos<Point>(c, 0), pos<Point>(c, 1), pos<Point>(c, 2));
    if (f == "power") return arity(c, 2, 2), power_of_point(pos<Point>(c, 0), pos<Cycle>(c, 1));
    if (f == "inradius") return arity(c, 3, 3), cyclecert::inradius(triangle(c));

    // points
    if (f == "incenter") return arity(c, 3, 3), cyclecert::incenter(triangle(c));
    if (f == "circumcenter") return arity(c, 3, 3), circumcircle(triangle(c)).center;
    if (f == "excenter") {
      arity(c, 4, 4);
      const std::string v = flag(c, 3, {"a", "b", "c"});
      return cyclecert::excenter(triangle(c), v == "a" ? Vertex::a : v == "b" ? Vertex::b : Vertex::c);
    }
    if (f == "midpoint") return arity(c, 2, 2), cyclecert::midpoint(pos<Point>(c, 0), pos<Point>(c, 1));
    if (f == "lerp") return arity(c, 3, 3), cyclecert::lerp(pos<Point>(c, 0), pos<Point>(c, 1), pos<double>(c, 2));
    if (f == "unit") return arity(c, 1, 1), unit_vector(pos<double>(c, 0));
    if (f == "center") return arity(c, 1, 1), pos<Cycle>(c, 0).center;
    if (f == "along") return arity(c, 2, 2), pos<OrientedLine>(c, 0).point_at(pos<double>(c, 1));
    if (f == "foot") return arity(c, 2, 2), perpendicular_foot(pos<OrientedLine>(c, 0), pos<Point>(c, 1));
    if (f == "meet") return arity(c, 2, 2), intersect(pos<OrientedLine>(c, 0), pos<OrientedLine>(c, 1));
    if (f == "contact") {
      arity(c, 2, 2);
      const auto args = positional(c);
      const Value a = eval(*args[0]), b = eval(*args[1]);
      if (const auto* l = std::get_if<OrientedLine>(&a)) return tangency_point(*l, as<Cycle>(b, args[1]->span));
      if (const auto* l = std::get_if<OrientedLine>(&b)) return tangency_point(*l, as<Cycle>(a, args[0]->span));
      return tangency_point(as<Cycle>(a, args[0]->span), as<Cycle>(b, args[1]->span));
    }
    if (f == "arc_mid")
      return arity(c, 4, 4),
             arc_midpoint(pos<Cycle>(c, 0), pos<Point>(c, 1), pos<Point>(c, 2), pos<Point>(c, 3), ctx_for_points());
    if (f == "on_circle") return arity(c, 2, 2), pos<Cycle>(c, 0).at_angle(pos<double>(c, 1));
    if (f == "second") {
      arity(c, 3, 3);
      const auto args = positional(c);
      const Value first = eval(*args[0]);
      const Cycle circle = pos<Cycle>(c, 1);
      const Point known = pos<Point>(c, 2);
      if (const auto* l = std::get_if<OrientedLine>(&first))
        return second_intersection(*l, circle, known, ctx_for_points());
      return second_intersection(as<Cycle>(first, args[0]->span), circle, known, ctx_for_points());
    }
    if (f == "induced")
      return arity(c, 4, 4), induced_point(pos<Cycle>(c, 0), pos<Cycle>(c, 1), pos<Point>(c, 2), pos<Point>(c, 3),
                                           ctx_for_points());
    if (f == "monge") return arity(c, 2, 2), monge_positive_center(pos<Cycle>(c, 0), pos<Cycle>(c, 1));

    // lines
    if (f == "through") {
      arity(c, 2, 2);
      allow_keywords(c, {"toward"});
      const Point p = pos<Point>(c, 0), q = pos<Point>(c, 1);
      if (distance(p, q) == 0.0) error_at(c.span, "through() needs two distinct points");
      if (const AstNode* t = keyword(c, "toward")) return line_through(p, q, as<Point>(eval(*t), t->span));
      return line_through(p, q);
    }
    if (f == "tangent_from") {
      arity(c, 3, 3);
      const double which = pos<double>(c, 2);
      if (which != 1.0 && which != 2.0) error_at(positional(c)[2]->span, "tangent index must be 1 or 2");
      return tangent_lines_from_point(pos<Point>(c, 0), pos<Cycle>(c, 1), ctx_for_points())[which == 1.0 ? 0 : 1];
    }
    if (f == "tangent_line") {
      arity(c, 2, 2);
      const Cycle w = pos<Cycle>(c, 0);
      const Point n = unit_vector(pos<double>(c, 1));
      return OrientedLine{n, dot(n, w.center) - w.r};
    }
    if (f == "parallel") {
      arity(c, 2, 2);
      const OrientedLine l = pos<OrientedLine>(c, 0);
      return line_with_normal(pos<Point>(c, 1), l.n);
    }
    if (f == "offset") {
      arity(c, 2, 2);
      OrientedLine l = pos<OrientedLine>(c, 0);
      l.p += pos<double>(c, 1);
      return l;
    }
    if (f == "flip" || f == "dilate") {
      arity(c, f == "flip" ? 1 : 2, f == "flip" ? 1 : 2);
      const auto args = positional(c);
      const Value v = eval(*args[0]);
      const double t = f == "dilate" ? pos<double>(c, 1) : 0.0;
      if (const auto* l = std::get_if<OrientedLine>(&v)) return f == "flip" ? l->flipped() : cyclecert::dilate(*l, t);
      const Cycle w = as<Cycle>(v, args[0]->span);
      return f == "flip" ? w.flipped() : cyclecert::dilate(w, t);
    }

    // circles
    if (f == "circum") return arity(c, 3, 3), circle_through(pos<Point>(c, 0), pos<Point>(c, 1), pos<Point>(c, 2));
    if (f == "cycle") return arity(c, 2, 2), Cycle{pos<Point>(c, 0), pos<double>(c, 1)};
    if (f == "tangent2") {
      arity(c, 3, 3);
      allow_keywords(c, {"radius"});
      const AstNode* r = keyword(c, "radius");
      if (!r) error_at(c.span, "tangent2 needs radius=");
      const std::string side = flag(c, 2, {"positive", "negative", "case1", "case2"});
      const bool positive = side == "positive" || side == "case1";
      return circle_tangent_to_two_lines_with_radius(pos<OrientedLine>(c, 0), pos<OrientedLine>(c, 1),
                                                     as<double>(eval(*r), r->span),
                                                     positive ? RadiusSign::positive : RadiusSign::negative);
    }
    if (f == "through2_tangent") {
      arity(c, 4, 4);
      const std::string b = flag(c, 3, {"internal", "external", "case1", "case2"});
      const bool internal = b == "internal" || b == "case1";
      return circle_through_two_points_tangent_to_cycle(pos<Point>(c, 0), pos<Point>(c, 1), pos<Cycle>(c, 2),
                                                        internal ? TangencyBranch::internal : TangencyBranch::external,
                                                        ctx_for_points());
    }
    if (f == "apollonius_llc") {
      arity(c, 3, 4);
      allow_keywords(c, {"branch"});
      RadiusSign sign = RadiusSign::any;
      if (positional(c).size() == 4) {
        const std::string s = flag(c, 3, {"positive", "negative", "any"});
        sign = s == "positive" ? RadiusSign::positive : s == "negative" ? RadiusSign::negative : RadiusSign::any;
      }
      const ToleranceContext tc = ctx_for_points();
      const auto branches = circle_tangent_to_line_line_cycle(pos<OrientedLine>(c, 0), pos<OrientedLine>(c, 1),
                                                              pos<Cycle>(c, 2), {sign, tc.bar()}, tc);
      if (const AstNode* b = keyword(c, "branch")) {
        const double k = as<double>(eval(*b), b->span);
        if (k != std::floor(k) || k < 1.0 || k > static_cast<double>(branches.size()))
          error_at(b->span, "branch must be 1.." + std::to_string(branches.size()));
        return branches[static_cast<std::size_t>(k) - 1].cycle;
      }
      if (branches.size() != 1)
        error_at(c.span, std::to_string(branches.size()) + " branches satisfy the flags; choose one with branch=");
      return branches.front().cycle;
    }
    error_at(c.span, "unknown function '" + f + "'");
  }

  Triangle triangle(const AstNode& c) { return Triangle(pos<Point>(c, 0), pos<Point>(c, 1), pos<Point>(c, 2)); }

  // --- checks ---------------------------------------------------------------

  // Bounding-box diagonal of every point currently bound.
  double scene_scale() const {
    double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
    auto visit = [&](const Value& v) {
      if (const auto* p = std::get_if<Point>(&v)) {
        lo_x = std::min(lo_x, p->x);
        lo_y = std::min(lo_y, p->y);
        hi_x = std::max(hi_x, p->x);
        hi_y = std::max(hi_y, p->y);
      }
    };
    for (const auto& [name, b] : env_) {
      if (b.family)
        for (const auto& m : b.members) visit(m);
      else
        visit(b.value);
    }
    const double d = std::hypot(hi_x - lo_x, hi_y - lo_y);
    return std::isfinite(d) && d > 0.0 ? d : 1.0;
  }

  ToleranceContext ctx_for_points() const { return ctx_.with_scale(scene_scale()); }

  // Positional arguments with sweep families expanded in place.
  std::vector<std::pair<Value, Span>> expanded(const AstNode& call, std::size_t from) {
    std::vector<std::pair<Value, Span>> out;
    const auto args = positional(call);
    for (std::size_t i = from; i < args.size(); ++i) {
      const AstNode& a = *args[i];
      if (a.kind == NodeKind::name) {
        const Binding& b = lookup(a);
        if (b.family) {
          for (const auto& m : b.members) out.emplace_back(m, a.span);
          continue;
        }
      }
      out.emplace_back(eval(a), a.span);
    }
    return out;
  }

  template <class T>
  std::vector<T> all_of(const std::vector<std::pair<Value, Span>>& vs) {
    std::vector<T> out;
    for (const auto& [v, span] : vs) out.push_back(as<T>(v, span));
    return out;
  }

  void at_least(const AstNode& call, std::size_t have, std::size_t need) {
    if (have < need)
      error_at(call.span, "'" + call.name + "' needs at least " + std::to_string(need) + " arguments, got " +
                              std::to_string(have));
  }

  void check(const AstNode& st, SweepFrame* frame) {
    const AstNode& c = st.args[0];
    allow_keywords(c, {"tol"});
    const ToleranceContext tc = ctx_for_points();
    double residual = 0.0;
    double factor = kTightFactor;
    std::map<std::string, Point> witnesses;
    try {
      const std::string& k = c.name;
      if (k == "collinear") {
        const auto pts = all_of<Point>(expanded(c, 0));
        at_least(c, pts.size(), 3);
        residual = check_collinear(pts, tc).max_residual;
      } else if (k == "concyclic") {
        const auto pts = all_of<Point>(expanded(c, 0));
        at_least(c, pts.size(), 4);
        const CircleFit fit = fit_concyclic(pts, tc);
        residual = fit.max_residual;
        witnesses["center"] = fit.circle.center;
        factor = kConicFactor;
      } else if (k == "concurrent") {
        const auto lines = all_of<OrientedLine>(expanded(c, 0));
        at_least(c, lines.size(), 3);
        const ConcurrencyFit fit = fit_concurrency(lines, tc);
        residual = fit.max_residual;
        witnesses["point"] = fit.point;
        factor = kPencilFactor;
      } else if (k == "tangent") {
        arity(c, 2, 3);
        TangencySense sense = TangencySense::oriented;
        if (positional(c).size() == 3) sense = flag(c, 2, {"oriented", "unoriented"}) == "oriented"
                                                   ? TangencySense::oriented
                                                   : TangencySense::unoriented;
        const auto args = positional(c);
        residual = tc.normalize(tangency_residual(to_checked_element(*args[0]), to_checked_element(*args[1]), sense));
        factor = kConicFactor;
      } else if (k == "on") {
        arity(c, 2, 2);
        residual = tc.normalize(incidence_residual(pos<Point>(c, 0), to_checked_element(*positional(c)[1])));
        factor = kConicFactor;
      } else if (k == "equal") {
        arity(c, 2, 2);
        residual = tc.normalize(std::abs(pos<double>(c, 0) - pos<double>(c, 1)));
      } else if (k == "bisector") {
        arity(c, 4, 4);
        const Point v = pos<Point>(c, 0), b = pos<Point>(c, 1), cc = pos<Point>(c, 2), i = pos<Point>(c, 3);
        residual = std::abs(angle_at(v, b, i) - angle_at(v, i, cc));
      } else if (k == "on_parabola") {
        at_least(c, positional(c).size(), 3);
        const Parabola par{pos<Point>(c, 0), pos<OrientedLine>(c, 1)};
        for (const Point q : all_of<Point>(expanded(c, 2)))
          residual = std::max(residual, std::abs(parabola_residual(par, q)));
        residual = tc.normalize(residual);
        factor = kConicFactor;
      } else if (k == "involution") {
        at_least(c, positional(c).size(), 3);
        const Cycle conic = pos<Cycle>(c, 0);
        const auto pairs = involution_pairs(c);
        at_least(c, pairs.size(), 3);
        const InvolutionWitness w = involution_on_conic_via_chords(pairs, Conic{conic}, tc);
        residual = w.max_residual;
        if (w.fixed_point) witnesses["fixed_point"] = *w.fixed_point;
        factor = kConicFactor;
      }
    } catch (const GeometryError& g) {
      error_at(c.span, "check '" + c.name + "' could not be evaluated: " + g.what());
    }

    double tolerance = factor * tc.eps_rel;
    if (const AstNode* t = keyword(c, "tol")) tolerance = as<double>(eval(*t), t->span);

    std::string desc = pretty_print(c);
    CheckReport* rep;
    if (frame) {
      auto it = frame->reports.find(&st);
      if (it == frame->reports.end()) {
        it = frame->reports.emplace(&st, out_.reports.size()).first;
        out_.reports.push_back(new_report(c, tc));
      }
      rep = &out_.reports[it->second];
      char buf[64];
      std::snprintf(buf, sizeof buf, " [%s=%.6g]", frame->var.c_str(), frame->value);
      desc += buf;
    } else {
      out_.reports.push_back(new_report(c, tc));
      rep = &out_.reports.back();
    }
    rep->expect(desc, residual, tolerance);
    for (const auto& [name, p] : witnesses)
      rep->witnesses[frame ? name + "_" + std::to_string(rep->assertions.size()) : name] = p;
  }

  CheckReport new_report(const AstNode& c, const ToleranceContext& tc) {
    CheckReport r;
    r.scenario = "script";
    r.params["line"] = c.span.line;
    r.params["scale"] = tc.scale;
    return r;
  }

  Element to_checked_element(const AstNode& a) {
    const Value v = eval(a);
    if (std::holds_alternative<double>(v)) error_at(a.span, "expected a point, line or circle, found a number");
    return to_element(v);
  }

  // involution(C, Y, Y') zips two families; otherwise arguments alternate.
  std::vector<std::pair<Point, Point>> involution_pairs(const AstNode& c) {
    const auto args = positional(c);
    std::vector<std::pair<Point, Point>> out;
    if (args.size() == 3 && args[1]->kind == NodeKind::name && args[2]->kind == NodeKind::name) {
      const Binding& a = lookup(*args[1]);
      const Binding& b = lookup(*args[2]);
      if (a.family && b.family) {
        if (a.members.size() != b.members.size()) error_at(c.span, "families have different lengths");
        for (std::size_t i = 0; i < a.members.size(); ++i)
          out.emplace_back(as<Point>(a.members[i], args[1]->span), as<Point>(b.members[i], args[2]->span));
        return out;
      }
    }
    const auto pts = all_of<Point>(expanded(c, 1));
    if (pts.size() % 2 != 0) error_at(c.span, "involution needs points in pairs");
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) out.emplace_back(pts[i], pts[i + 1]);
    return out;
  }
};

}  // namespace

bool EvalResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::error) return false;
  return true;
}

bool EvalResult::all_passed() const {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return true;
}

EvalResult evaluate(const AstNode& program, const ToleranceContext& ctx, std::uint64_t seed) {
  return Evaluator(ctx, seed).run(program);
}

}  // namespace cyclecert::dsl
