#pragma once

// Symbolic states of a vertex algebra: formal sums of right-nested normally
// ordered words in derivatives of generators, with coefficients that are
// rational functions of the parameter plus an optional affine part in named
// unknowns (used while an OPE table is being solved for).

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vopa/rational.hpp"

namespace vopa {

// Half-integer arithmetic for conformal weights, stored as twice the value.
class HalfInt {
 public:
  constexpr HalfInt() : tw_(0) {}
  constexpr HalfInt(long n) : tw_(2 * n) {}  // NOLINT: integers convert implicitly
  static constexpr HalfInt from_twice(long tw) {
    HalfInt h;
    h.tw_ = tw;
    return h;
  }

  constexpr long twice() const { return tw_; }
  constexpr bool is_integer() const { return tw_ % 2 == 0; }
  // Largest integer <= value (floor(-3/2) = -2).
  long floor() const { return tw_ >= 0 ? tw_ / 2 : (tw_ - 1) / 2; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.tw_ + b.tw_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.tw_ - b.tw_); }
  constexpr HalfInt operator-() const { return from_twice(-tw_); }
  HalfInt& operator+=(HalfInt o) {
    tw_ += o.tw_;
    return *this;
  }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  Rational to_rational() const { return Rational(tw_, 2); }
  std::string str() const;

 private:
  long tw_;
};

// One factor of a normally ordered word: the der-th derivative of a generator.
// Generators are identified by their index in the owning presentation.
//
// The canonical order on letters sorts by generator index, and for equal
// generators puts higher derivatives first, so that e.g. :(D J) J: is the
// canonical spelling and :J (D J): is not.
struct Letter {
  int der = 0;
  int gen = 0;

  friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
    if (a.gen != b.gen) return a.gen <=> b.gen;
    return b.der <=> a.der;  // higher derivative first
  }
  friend bool operator==(const Letter& a, const Letter& b) = default;
};

// A right-nested normally ordered word :l1 l2 ... lp: (empty word = vacuum).
struct Word {
  std::vector<Letter> letters;

  bool is_vacuum() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  bool is_canonical() const;
  int total_der() const;

  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;
};

Word make_word(std::initializer_list<Letter> ls);

// Order used for printing and for basis enumeration: lower total derivative
// order first, then lexicographically larger letter sequence first.
bool basis_less(const Word& a, const Word& b);

// Coefficient that is affine in a set of unknowns: c0 + sum ci * u_i with
// c0, ci in the rational function field. Products are rejected when they
// would leave the affine class.
class Coeff {
 public:
  Coeff() = default;
  Coeff(RationalFunction c) : c0_(std::move(c)) {}  // NOLINT
  Coeff(long c) : c0_(c) {}                         // NOLINT
  Coeff(const Rational& c) : c0_(c) {}              // NOLINT
  static Coeff unknown(int id);

  bool is_zero() const { return c0_.is_zero() && lin_.empty(); }
  bool is_constant() const { return lin_.empty(); }
  const RationalFunction& constant_part() const { return c0_; }
  const std::map<int, RationalFunction>& linear_part() const { return lin_; }

  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  // Throws "nonlinear in unknowns" when both factors carry unknowns.
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.c0_ == b.c0_ && a.lin_ == b.lin_;
  }
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  // Replaces unknowns by affine values; ids absent from the map are kept.
  Coeff substitute(const std::map<int, Coeff>& assignment) const;
  // Applies f to every rational-function coefficient (e.g. specialization).
  Coeff map_coeffs(const std::function<RationalFunction(const RationalFunction&)>& f) const;

  std::string str(const std::function<std::string(int)>& unknown_name) const;

 private:
  void set_lin(int id, const RationalFunction& v);
  RationalFunction c0_;
  std::map<int, RationalFunction> lin_;
};

// Finite sum of words with affine coefficients. Terms with zero coefficient
// are never stored.
class Expression {
 public:
  Expression() = default;
  static Expression vacuum(const Coeff& c = Coeff(1));
  static Expression term(const Word& w, const Coeff& c = Coeff(1));

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  auto begin() const { return t_.begin(); }
  auto end() const { return t_.end(); }
  Coeff coeff(const Word& w) const;

  void add(const Word& w, const Coeff& c);
  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  Expression operator-() const;
  Expression scaled(const Coeff& c) const;

  Expression substitute(const std::map<int, Coeff>& assignment) const;
  Expression map_coeffs(const std::function<RationalFunction(const RationalFunction&)>& f) const;

  // Words listed in basis order (used by printers and solvers).
  std::vector<Word> words_in_basis_order() const;

  friend bool operator==(const Expression& a, const Expression& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

 private:
  std::map<Word, Coeff> t_;
};

}  // namespace vopa
