#pragma once

// Exact linear algebra over the rational function field. Used to solve the
// affine constraint systems coming from Jacobi defects, skew-symmetry of
// self-pairs, and commutant conditions.

#include <map>
#include <string>
#include <vector>

#include "vopa/expr.hpp"

namespace vopa {

using Matrix = std::vector<std::vector<RationalFunction>>;

// Exact determinant by Gaussian elimination; throws on non-square input.
RationalFunction determinant(Matrix m);

struct LinearSolution {
  bool consistent = true;
  std::string inconsistency;        // failing equation, when not consistent
  // Pivot unknown id -> affine value in the free unknowns.
  std::map<int, Coeff> assignment;
  std::vector<int> free_vars;       // in ascending id order
  bool unique() const { return consistent && free_vars.empty(); }
};

// Collects equations "coefficient = 0" where the coefficient is affine in
// unknowns; a nonzero constant row makes the system inconsistent.
class LinearSystem {
 public:
  // One equation. Constant zero coefficients are dropped.
  void add(const Coeff& c);
  // One equation per word of e (the statement "e = 0").
  void add_all(const Expression& e);
  int num_rows() const { return static_cast<int>(rows_.size()); }

  LinearSolution solve() const;

 private:
  std::vector<Coeff> rows_;
};

}  // namespace vopa
