// Runs the full criterion battery and prints one verdict line each; exits
// nonzero if any criterion fails.  `maxgraph suite` runs the same battery
// with artifact output.
#include <cstdio>
#include <exception>

#include <maxgraph/experiments.hpp>

int main() {
  int failures = 0;
  try {
    const auto results = maxgraph::run_all_criteria();
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& r = results[k];
      std::printf("[%2zu/%zu] %s %-24s %s\n", k + 1, results.size(),
                  r.pass ? "PASS" : "FAIL", r.anchor.c_str(),
                  r.detail.c_str());
      if (!r.pass) ++failures;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "criterion battery aborted: %s\n", e.what());
    return 2;
  }
  if (failures > 0) std::printf("RESULT: %d criterion(s) failing\n", failures);
  return failures == 0 ? 0 : 1;
}
