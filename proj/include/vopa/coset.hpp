#pragma once

// U(1)-orbifold and Heisenberg-coset constructions over the five-generator
// algebra: the bilinear fields U_{i,j} = :d^i G+ d^j G-:, the decoupling
// relations with their canonical leading coefficients, commutant corrections
// making orbifold elements commute with J, and the coset Virasoro field.

#include <string>
#include <vector>

#include "vopa/engine.hpp"

namespace vopa {

// :d^i G+ d^j G-: as a canonical Expression; weight i+j+4, charge 0.
Expression u_field(const Presentation& p, int i, int j);

struct TailTerm {
  RationalFunction coefficient;
  std::string monomial;  // readable factorization over {J, T, W, U_{0,i}}
  Expression value;      // canonical form of that monomial
};

struct DecouplingResult {
  int n = 0;
  RationalFunction coefficient;  // of U_{0,n+5}
  Expression combination;        // canonical form of :U00 U1n: - :U0n U10:
  // Decomposition of combination - coefficient*U_{0,n+5} over normally
  // ordered monomials in {J, T, W, U_{0,i}} with i < n+5 and their
  // derivatives, so coefficient*U_{0,n+5} - combination + tail_value() = 0.
  std::vector<TailTerm> tail;
  Expression tail_value() const;
};

// n(9+n)(2+k)(5+2k)(8+3k) / (120(4+n)(5+n)); at n=1 this is
// (2+k)(5+2k)(8+3k)/360.
RationalFunction decoupling_coefficient_formula(int n);

// Leading coefficient alone, extracted by the alternating-sum functional on
// the two-letter :d^t G+ d^(m-t) G-: slice, which kills every derivative and
// every longer word (this is why the coefficient is canonical).
RationalFunction decoupling_coefficient(const OpeEngine& eng, int n);

// Full relation with the tail decomposition. The tail is found level by
// level in the total generator weight of the words (contractions strictly
// lower it, reorderings and derivatives preserve it): words of a fixed
// non-G letter content are matched against the monomials whose top terms
// live there, which keeps every linear solve small.
DecouplingResult decoupling_relation(const OpeEngine& eng, int n);

// Smallest omega (free coordinates of the solution space set to zero, in
// basis order) supported outside the words of e with J_(m)(e + omega) = 0
// for all m >= 1. Throws "no nontrivial commutant representative" when the
// constraints cannot be satisfied.
Expression commutant_correction(const OpeEngine& eng, const Expression& e);

struct CosetVirasoro {
  Expression field;  // T^C
  RationalFunction central_charge;
};
CosetVirasoro coset_virasoro(const OpeEngine& eng);

// Checks t_(0)t = Dt, t_(1)t = 2t, t_(2)t = 0 and that every higher pole is
// a multiple of the identity at pole 4 (and zero above); returns twice the
// pole-4 coefficient. Throws naming the failing pole otherwise.
RationalFunction central_charge_of(const OpeEngine& eng, const Expression& t);

}  // namespace vopa
