#pragma once

// The project gate: nine checks covering validation of the solved table,
// Jacobi closure on every generator triple, the staged constraint pipeline,
// the decoupling relations, the coset Virasoro field, commutant corrections,
// the vanishing locus of the decoupling coefficient, the extension
// numerology, and the calculus property suites. Every expected value is
// pinned exactly in the implementation; nothing is approximate.

#include <ostream>
#include <string>
#include <vector>

namespace vopa {

struct AcceptanceOptions {
  // Runs the closure sweep on exact specializations at k = 1, 2, 5/7
  // instead of symbolically over the whole parameter field.
  bool fast = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  long millis = 0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

// One pass/fail line per criterion; returns true when all of them passed.
bool report_acceptance(std::ostream& os, const AcceptanceOptions& opt = {});

}  // namespace vopa
