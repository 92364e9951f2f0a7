// Check reports: line-oriented text plus a stable machine-readable document.

#ifndef CTXCAT_REPORT_HPP
#define CTXCAT_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace ctxcat {

struct Check {
  std::string id;
  bool pass = false;
  std::string trace;  // counterexample or note; empty when passing
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool complete = true;  // false when a budget ran out mid-enumeration

  void add(std::string id, bool pass, std::string trace = "") {
    checks.push_back(Check{std::move(id), pass, std::move(trace)});
  }

  void merge(const Report& other) {
    for (auto& c : other.checks) checks.push_back(c);
    complete = complete && other.complete;
  }

  bool ok() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  int failures() const {
    int n = 0;
    for (auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }

  std::string to_text() const {
    std::string s;
    s += "suite " + suite + (complete ? "" : " (incomplete)") + "\n";
    for (auto& c : checks) {
      s += (c.pass ? "  pass  " : "  FAIL  ") + c.id;
      if (!c.trace.empty()) s += "  -- " + c.trace;
      s += "\n";
    }
    s += (ok() ? "ok" : "failed") + std::string(": ") + std::to_string(checks.size() - failures()) + "/" +
         std::to_string(checks.size()) + " checks\n";
    return s;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["complete"] = complete;
    j["total"] = checks.size();
    j["failures"] = failures();
    auto arr = nlohmann::ordered_json::array();
    for (auto& c : checks) {
      nlohmann::ordered_json e;
      e["law"] = c.id;
      e["status"] = c.pass ? "pass" : "fail";
      if (!c.trace.empty()) e["trace"] = c.trace;
      arr.push_back(e);
    }
    j["checks"] = arr;
    return j;
  }
};

}  // namespace ctxcat

#endif  // CTXCAT_REPORT_HPP
