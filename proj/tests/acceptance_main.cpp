#include <cstdio>

#include "logbbm/acceptance.hpp"

// Runs the full verification battery and prints one line per criterion.  The
// process exit status is the overall verdict, which is what ctest consumes.
int main() {
  const auto report = logbbm::run_all_checks({});
  for (const auto& r : report.criteria) {
    std::printf("%s %2d  %-34s %8.2f s  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.details.c_str());
  }
  std::printf("%s\n", report.all_pass ? "all checks passed" : "CHECKS FAILED");
  return report.all_pass ? 0 : 1;
}
