#include <json.hpp>

#include "cyclecert/harness.hpp"

namespace cyclecert {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const CheckReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["params"] = Json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["seed"] = r.seed;
  j["applicable"] = r.applicable;
  if (!r.applicable) j["reason"] = r.inapplicable_reason;
  j["pass"] = r.passed();
  j["assertions"] = Json::array();
  for (const auto& a : r.assertions)
    j["assertions"].push_back({{"desc", a.description}, {"residual", a.residual}, {"tolerance", a.tolerance},
                               {"pass", a.pass}});
  j["witnesses"] = Json::object();
  for (const auto& [k, p] : r.witnesses) j["witnesses"][k] = {p.x, p.y};
  j["info"] = Json::object();
  for (const auto& [k, v] : r.info) j["info"][k] = v;
  return j;
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports, int indent) {
  Json root;
  root["schema"] = 1;
  root["reports"] = Json::array();
  for (const auto& r : reports) root["reports"].push_back(to_json(r));
  return root.dump(indent);
}

}  // namespace cyclecert
