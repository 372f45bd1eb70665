#pragma once

#include <string>
#include <vector>

namespace twistbeam::verify {

struct CheckResult {
  std::string name;
  double value;     // measured error or deviation
  double tolerance; // pass iff value <= tolerance
  bool pass;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
  std::string to_json() const;
};

// Suites: "basis", "fields", "dipole", "forces", "all".
// tol_scale inflates every tolerance (default 1 = contract values).
// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& name, double tol_scale = 1.0);

} // namespace twistbeam::verify
