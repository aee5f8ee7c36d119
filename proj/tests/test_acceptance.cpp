// The project gate: runs every acceptance criterion in full symbolic mode
// and prints one pass/fail line per criterion. All expected values are
// pinned exactly inside the suite; there are no tolerances anywhere.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <iostream>

#include "vopa/acceptance.hpp"

using namespace vopa;

TEST_CASE("acceptance criteria") {
  std::vector<CriterionResult> results = run_acceptance();
  REQUIRE(results.size() == 9);
  for (const CriterionResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name
              << " (" << r.detail << ") [" << r.millis << " ms]" << std::endl;
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}
