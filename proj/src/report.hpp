#pragma once

#include <string>
#include <vector>

namespace ffc {

// Structured pass/fail report; text and JSON renderings come from the same data.
struct Report {
  struct Check {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Check> checks;

  void add(const std::string& name, bool pass, const std::string& detail = "");
  void merge(const std::string& prefix, const Report& sub);
  bool all_pass() const;
  std::string text() const;
  std::string json_str() const;
};

}  // namespace ffc
