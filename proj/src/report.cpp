#include "mlnf/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace mlnf {

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}
}  // namespace

void IdentityReport::note(const std::string& key, double value) {
  parameters[key] = fmt17(value);
}

void IdentityReport::note(const std::string& key, const std::string& value) {
  parameters[key] = value;
}

void IdentityReport::finalize() {
  converged = residual <= tolerance;
  for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
    if (sweep[i + 1].second > 10.0 * sweep[i].second &&
        sweep[i + 1].second > tolerance)
      converged = false;
  }
}

std::string report_to_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["residual"] = fmt17(r.residual);
  j["tolerance"] = fmt17(r.tolerance);
  j["converged"] = r.converged;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  nlohmann::ordered_json sw = nlohmann::ordered_json::array();
  for (const auto& [level, res] : r.sweep)
    sw.push_back({{"level", level}, {"residual", fmt17(res)}});
  j["sweep"] = sw;
  return j.dump(2);
}

std::string sweep_to_csv(const IdentityReport& r) {
  std::string out = "level,residual\n";
  for (const auto& [level, res] : r.sweep) {
    out += std::to_string(level);
    out += ",";
    out += fmt17(res);
    out += "\n";
  }
  return out;
}

}  // namespace mlnf
