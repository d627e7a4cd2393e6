#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mubkit {

/// One named check: its worst observed deviation and the verdict.
struct CheckResult {
  std::string check;
  double worst_deviation = 0.0;
  bool pass = false;
};

/// Ordered collection of check results; passes iff every entry passes.
struct Report {
  std::vector<CheckResult> checks;

  void add(std::string name, double worst_deviation, bool pass) {
    checks.push_back({std::move(name), worst_deviation, pass});
  }

  void append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.check == name) return &c;
    return nullptr;
  }
};

inline nlohmann::json to_json(const CheckResult& c) {
  return {{"check", c.check},
          {"worst_deviation", c.worst_deviation},
          {"pass", c.pass}};
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : r.checks) out.push_back(to_json(c));
  return out;
}

}  // namespace mubkit
