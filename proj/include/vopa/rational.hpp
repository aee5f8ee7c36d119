#pragma once

// Exact coefficient arithmetic: arbitrary-precision rationals, dense
// polynomials in one formal parameter, and canonical rational functions.
// Every value is kept in a unique normal form so that equality is literal
// representation equality:
//   - Rational: reduced fraction, positive denominator (mpq invariant)
//   - Polynomial: trailing coefficient nonzero (zero = empty coefficient list)
//   - RationalFunction: gcd(num, den) = 1 and den monic; zero = 0/1

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace vopa {

// Single error type for the whole library; messages carry the context.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long n, long d);
  Rational(const mpz_class& n, const mpz_class& d);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "7", "-5/3", "2/4" (reduced on input).
  static Rational parse(const std::string& text);

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  std::string str() const;

 private:
  mpq_class v_;
};

// Binomial coefficient with integer upper argument of either sign:
// C(r, i) = r (r-1) ... (r-i+1) / i!
Rational binomial(long r, unsigned i);
Rational factorial(unsigned n);

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial variable();  // the parameter k

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  Rational coeff(int i) const;
  Rational lc() const;  // leading coefficient; 0 for the zero polynomial
  Rational constant_term() const { return coeff(0); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Euclidean division; throws on division by zero.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
  // Exact division; throws if the remainder is nonzero.
  static Polynomial exact_div(const Polynomial& a, const Polynomial& b);
  // Monic gcd, computed content-free on primitive integer images so that
  // intermediate coefficients stay small. gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned e) const;
  Polynomial monic() const;
  Rational eval(const Rational& x) const;

  std::string str(const std::string& var = "k") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT
  RationalFunction(long c) : num_(Rational(c)), den_(Rational(1)) {}   // NOLINT
  RationalFunction(Polynomial num);  // NOLINT: polynomials convert implicitly
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable();
  // Parses scalar coefficient syntax: integers, 'k', + - * / ^, parentheses.
  static RationalFunction parse(const std::string& text, const std::string& var = "k");

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  // Exact specialization k -> x; throws Error when x is a pole, naming the
  // denominator in the message.
  Rational eval(const Rational& x, const std::string& var = "k") const;

  std::string str(const std::string& var = "k") const;

 private:
  void normalize();
  Polynomial num_, den_;
};

}  // namespace vopa
