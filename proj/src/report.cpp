#include "report.hpp"

#include <json.hpp>

#include <sstream>

namespace ffc {

void Report::add(const std::string& name, bool pass, const std::string& detail) {
  checks.push_back({name, pass, detail});
}

void Report::merge(const std::string& prefix, const Report& sub) {
  for (const auto& c : sub.checks) checks.push_back({prefix + "." + c.name, c.pass, c.detail});
}

bool Report::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  return os.str();
}

std::string Report::json_str() const {
  nlohmann::json j;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return j.dump(2);
}

}  // namespace ffc
