#include "vopa/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vopa {

Rational::Rational(long n, long d) {
  if (d == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(n) / mpq_class(d);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpq_class(mpz_class(text)));
    mpz_class n(text.substr(0, slash)), d(text.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw Error("cannot parse rational '" + text + "'");
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

Rational binomial(long r, unsigned i) {
  Rational acc(1);
  for (unsigned j = 0; j < i; ++j) acc *= Rational(r - static_cast<long>(j), static_cast<long>(j) + 1);
  return acc;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(mpq_class(f));
}

Polynomial::Polynomial(const Rational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::variable() {
  return Polynomial(std::vector<Rational>{Rational(0), Rational(1)});
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[i];
}

Rational Polynomial::lc() const { return c_.empty() ? Rational(0) : c_.back(); }

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  q = Polynomial();
  r = a;
  const int db = b.degree();
  const Rational blc = b.lc();
  std::vector<Rational> qc;
  if (r.degree() >= db) qc.resize(r.degree() - db + 1, Rational(0));
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    Rational f = r.lc() / blc;
    qc[shift] = f;
    for (int i = 0; i <= db; ++i) r.c_[i + shift] -= f * b.c_[i];
    r.trim();
  }
  q = Polynomial(std::move(qc));
}

Polynomial Polynomial::exact_div(const Polynomial& a, const Polynomial& b) {
  Polynomial q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw Error("inexact polynomial division");
  return q;
}

namespace {

// Primitive integer image of a rational polynomial (content removed, leading
// coefficient positive). The zero polynomial maps to the empty vector.
std::vector<mpz_class> primitive_image(const Polynomial& p) {
  std::vector<mpz_class> v(p.degree() + 1);
  mpz_class lcm_den(1);
  for (int i = 0; i <= p.degree(); ++i)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), p.coeff(i).den().get_mpz_t());
  mpz_class g(0);
  for (int i = 0; i <= p.degree(); ++i) {
    v[i] = p.coeff(i).num() * (lcm_den / p.coeff(i).den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
  }
  if (g != 0) {
    if (v.back() < 0) g = -g;
    for (auto& c : v) c /= g;
  }
  return v;
}

void make_primitive(std::vector<mpz_class>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  mpz_class g(0);
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return;
  if (v.back() < 0) g = -g;
  for (auto& c : v) c /= g;
}

// Pseudo-remainder of primitive integer polynomials, deg a >= deg b >= 0.
std::vector<mpz_class> pseudo_rem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  const size_t db = b.size() - 1;
  const mpz_class& blc = b.back();
  while (a.size() >= b.size()) {
    mpz_class f = a.back();
    size_t shift = a.size() - b.size();
    for (auto& c : a) c *= blc;
    for (size_t i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
  std::vector<mpz_class> u = primitive_image(a), v = primitive_image(b);
  if (u.size() < v.size()) std::swap(u, v);
  while (v.size() > 1) {
    std::vector<mpz_class> r = pseudo_rem(u, v);
    make_primitive(r);
    u = std::move(v);
    v = std::move(r);
  }
  if (!v.empty()) return Polynomial(Rational(1));  // constant remainder: coprime
  std::vector<Rational> qc(u.size());
  for (size_t i = 0; i < u.size(); ++i) qc[i] = Rational(u[i], u.back());
  return Polynomial(std::move(qc));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r(Rational(1)), base(*this);
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial r(*this);
  Rational l = lc();
  for (auto& c : r.c_) c /= l;
  return r;
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    Rational c = coeff(i);
    if (c.is_zero()) continue;
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    Rational a = c.sign() < 0 ? -c : c;
    if (i == 0) {
      os << a.str();
    } else {
      if (!a.is_one()) os << a.str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Rational(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RationalFunction RationalFunction::variable() { return RationalFunction(Polynomial::variable()); }

void RationalFunction::normalize() {
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  Polynomial g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Polynomial::exact_div(num_, g);
    den_ = Polynomial::exact_div(den_, g);
  }
  Rational l = den_.lc();
  if (!l.is_one()) {
    den_ = den_.monic();
    std::vector<Rational> nc(num_.degree() + 1);
    for (int i = 0; i <= num_.degree(); ++i) nc[i] = num_.coeff(i) / l;
    num_ = Polynomial(std::move(nc));
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error("division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

Rational RationalFunction::eval(const Rational& x, const std::string& var) const {
  Rational d = den_.eval(x);
  if (d.is_zero())
    throw Error("pole at " + var + " = " + x.str() + ": denominator " + den_.str(var) +
                " vanishes");
  return num_.eval(x) / d;
}

std::string RationalFunction::str(const std::string& var) const {
  std::string n = num_.str(var);
  if (den_.is_one()) return n;
  bool nwrap = num_.degree() > 0;  // wrap anything that is not a plain constant
  bool dwrap = den_.degree() > 0;
  std::string d = den_.str(var);
  return (nwrap ? "(" + n + ")" : n) + "/" + (dwrap ? "(" + d + ")" : d);
}

namespace {

// Recursive-descent parser for scalar coefficients:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ['+' | '-'] power
//   power  := atom ['^' INT]
//   atom   := INT | VAR | '(' expr ')'
class ScalarParser {
 public:
  ScalarParser(const std::string& text, const std::string& var) : s_(text), var_(var) {}

  RationalFunction run() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("parse error at position " + std::to_string(pos_) + " in '" + s_ + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (eat('*'))
        acc *= unary();
      else if (eat('/'))
        acc /= unary();
      else
        return acc;
    }
  }

  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (eat('^')) {
      long e = integer();
      if (e < 0) fail("negative exponent");
      RationalFunction acc(1);
      for (long i = 0; i < e; ++i) acc *= base;
      return acc;
    }
    return base;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  RationalFunction atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RationalFunction(Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == var_) return RationalFunction::variable();
      fail("unknown symbol '" + name + "'");
    }
    fail("expected value");
  }

  const std::string& s_;
  std::string var_;
  size_t pos_ = 0;
};

}  // namespace

RationalFunction RationalFunction::parse(const std::string& text, const std::string& var) {
  return ScalarParser(text, var).run();
}

}  // namespace vopa
