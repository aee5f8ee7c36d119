#pragma once

// Exact arithmetic around the simple current extensions of the Heisenberg
// cosets: coprimality gates, level maps between the two coset realizations,
// conformal and quantum dimensions of the extending current, the summand
// decomposition of the extended algebra, and the boundary normalization data.
// The parameters are n >= 2 (the rank-style index) and r >= 1.

#include <string>
#include <vector>

#include "vopa/rational.hpp"

namespace vopa {

struct GateReport {
  int n = 0, r = 0;
  bool base = false;     // gcd(n+1, n+r) == 1
  bool nr_even = false;  // n*r even (integer lattice weights)
  bool theorem = false;  // gcd(n-1, n+1) == 1 or gcd(n-1, n+r) == 1
  std::string detail;    // which gcds were hit, for diagnostics
};
GateReport gates(int n, int r);

// ell = (n+r)/(n+1) - n and its conjugate k' = (n+r)/(r-1) - r; the second
// is a pole at r = 1.
struct LevelData {
  Rational ell;
  Rational k_conj;
};
LevelData levels(int n, int r);

struct SimpleCurrentData {
  Rational conf_dim;                  // (n-1) r / (2n)
  int qdim = 1;                       // (-1)^r
  Rational lattice_generator_weight;  // r / (2n)
};
SimpleCurrentData simple_current_data(int n, int r);

struct Summand {
  int s = 0;
  Rational lattice_coset_weight;   // r s^2 / (2n)
  Rational simple_current_weight;  // r s (n-s) / (2n)
  Rational lowest_weight;          // min(s r / 2, (n-s) r / 2)
};

struct ExtensionData {
  int n = 0, r = 0;
  Rational ell, k_conj;
  long lattice_scale = 0;  // the extension lattice is sqrt(nr) Z
  std::vector<Summand> summands;  // s = 0 .. n-1
  bool integer_graded = false;    // iff r is even
  int qdim_generator = 1;
  GateReport gate;
};

// Throws when the theorem gate fails (naming it); a failed base gate is
// only recorded in the report, since the decomposition numerology still
// evaluates.
ExtensionData extension_decomposition(int n, int r);

// Normalization data of the boundary OPE at rank n, as functions of k:
// the pairing constant prod_{i=1}^{n-1} (i (k + n - 1) - 1) and the level
// (n-1)k/n + n - 2 of the residual Heisenberg field.
struct BoundaryData {
  RationalFunction pairing_constant;
  RationalFunction heis_level;
};
BoundaryData boundary_ope_data(int n);

}  // namespace vopa
