#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace boxembed {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool within_widened = false;  // pass under the widened bounds
  std::string detail;           // measured vs expected values
  double seconds = 0.0;
};

/// Runs the whole acceptance suite. tol_scale >= 1 widens every tolerance
/// band; results report both the strict and the widened verdict.
std::vector<CriterionResult> run_acceptance(double tol_scale = 1.0,
                                            std::uint64_t seed = 12345,
                                            std::ostream* log = nullptr);

/// Prints one PASS/FAIL line per criterion; returns the number of strict
/// failures (warnings when warn_only, i.e. a widened pass, are not counted).
int report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out,
                      bool warn_only_when_widened_pass = false);

}  // namespace boxembed
