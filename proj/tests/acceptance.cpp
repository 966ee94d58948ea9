// One line per acceptance criterion.  Exit status is 0 when every failing row is
// a declared conflict (quoted value contradicted by an exhaustive computation),
// so regressions still fail the build while known conflicts stay visible as FAIL.
#include <cstdio>
#include <cstring>
#include <string>

#include "bloch_forge/suite.hpp"

int main(int argc, char** argv) {
  bf::SuiteOptions opts;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
  int unexpected = 0;
  for (int id : bf::suite_criteria()) {
    auto c = bf::run_criterion(id, opts);
    std::string detail;
    for (const auto& r : c.rows) {
      if (r.pass) continue;
      detail += detail.empty() ? " | " : "; ";
      detail += r.claim + " expected " + r.expected + " got " + r.computed;
      if (r.declared_conflict) detail += " [declared conflict]";
    }
    if (!c.within_time()) detail += " | over time limit";
    std::printf("%s criterion %d: %s (%zu/%zu rows, %.2f s of %.0f s)%s\n", c.pass() ? "PASS" : "FAIL", c.id,
                c.title.c_str(), c.passed_rows(), c.rows.size(), c.elapsed_s, c.limit_s, detail.c_str());
    std::fflush(stdout);
    if (!c.pass() && !c.only_declared_failures()) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
