#include "qgb/report.hpp"

#include <sstream>

namespace qgb {

Json scalar_json(const Scalar& s) { return s.to_string(); }

Json CheckResult::to_json() const {
  Json j;
  j["check"] = check;
  j["subjects"] = subjects;
  j["samples"] = samples;
  j["discarded"] = discarded;
  j["passed"] = passed;
  j["max_residual"] = residual.to_string();
  j["first_failure"] = first_failure;
  if (!details.empty()) j["details"] = details;
  return j;
}

bool SuiteReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

Json SuiteReport::to_json() const {
  Json j;
  j["schema"] = kReportSchema;
  j["suite"] = suite;
  j["seed"] = seed;
  j["samples"] = samples;
  Json arr = Json::array();
  int failed = 0;
  for (const auto& c : checks) {
    arr.push_back(c.to_json());
    if (!c.passed) ++failed;
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"checks", checks.size()}, {"failed", failed}, {"passed", failed == 0}};
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.check;
    for (const auto& s : c.subjects) os << ' ' << s;
    os << "  samples=" << c.samples << " discarded=" << c.discarded
       << " residual=" << c.residual.to_string();
    if (c.details.contains("error")) os << "  error: " << c.details["error"].get<std::string>();
    os << '\n';
    if (!c.passed) ++failed;
  }
  os << suite << ": " << (checks.size() - failed) << '/' << checks.size() << " passed\n";
  return os.str();
}

}  // namespace qgb
