#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vopa/rational.hpp"

using namespace vopa;

TEST_CASE("rational parsing and normal form") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-5/3") == Rational(-5, 3));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational(4, -6) == Rational(-2, 3));  // denominator made positive
  CHECK(Rational(-2, 3).str() == "-2/3");
  CHECK(Rational(5).str() == "5");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational arithmetic and order") {
  Rational a(3, 4), b(-2, 5);
  CHECK(a + b == Rational(7, 20));
  CHECK(a * b == Rational(-3, 10));
  CHECK(a / b == Rational(-15, 8));
  CHECK(b < a);
  CHECK(a.sign() == 1);
  CHECK(b.sign() == -1);
  CHECK(Rational(6, 3).is_integer());
  CHECK_FALSE(a.is_integer());
}

TEST_CASE("binomial coefficients with negative upper argument") {
  CHECK(binomial(5, 2) == Rational(10));
  CHECK(binomial(3, 5) == Rational(0));
  CHECK(binomial(0, 0) == Rational(1));
  // C(-1, i) = (-1)^i and C(-2, 3) = -4 exercise the falling-factorial form.
  CHECK(binomial(-1, 3) == Rational(-1));
  CHECK(binomial(-1, 4) == Rational(1));
  CHECK(binomial(-2, 3) == Rational(-4));
  CHECK(factorial(0) == Rational(1));
  CHECK(factorial(6) == Rational(720));
}

TEST_CASE("polynomial normal form and arithmetic") {
  Polynomial k = Polynomial::variable();
  Polynomial p = k * k + Polynomial(3) * k + Polynomial(2);  // (k+1)(k+2)
  CHECK(p.degree() == 2);
  CHECK(p.coeff(1) == Rational(3));
  CHECK(p.eval(Rational(-1)) == Rational(0));
  CHECK(p.eval(Rational(1, 2)) == Rational(15, 4));

  // Cancellation trims trailing zeros down to the canonical empty form.
  Polynomial z = p - p;
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  CHECK((p + (-p)).is_zero());

  CHECK(p.str() == "2 + 3*k + k^2");
  CHECK(Polynomial(Rational(-1, 2)).str() == "-1/2");
}

TEST_CASE("polynomial division, gcd, exact division") {
  Polynomial k = Polynomial::variable();
  Polynomial a = (k + Polynomial(1)) * (k + Polynomial(2)) * (k + Polynomial(2));
  Polynomial b = (k + Polynomial(2)) * (k + Polynomial(5));

  Polynomial q, r;
  Polynomial::divmod(a, b, q, r);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());

  CHECK(Polynomial::gcd(a, b) == k + Polynomial(2));  // monic by contract
  CHECK(Polynomial::gcd(Polynomial(), Polynomial()).is_zero());
  CHECK(Polynomial::gcd(a, Polynomial(7)).is_one());

  CHECK(Polynomial::exact_div(a, k + Polynomial(1)) ==
        (k + Polynomial(2)) * (k + Polynomial(2)));
  CHECK_THROWS_AS(Polynomial::exact_div(a, k + Polynomial(5)), Error);
  CHECK_THROWS_AS(Polynomial::divmod(a, Polynomial(), q, r), Error);

  CHECK((Polynomial(2) * k).monic() == k);
  CHECK((k + Polynomial(1)).pow(3).coeff(1) == Rational(3));
}

TEST_CASE("rational function canonical form") {
  RationalFunction f = RationalFunction::parse("(k^2 - 1)/(k - 1)");
  CHECK(f == RationalFunction::parse("k + 1"));  // common factor removed
  CHECK(f.den().is_one());

  // Denominator is kept monic: 1/(2k+4) stores den = k+2.
  RationalFunction g = RationalFunction::parse("1/(2*k + 4)");
  CHECK(g.den() == Polynomial::variable() + Polynomial(2));
  CHECK(g.num() == Polynomial(Rational(1, 2)));

  CHECK(RationalFunction::parse("k/k - 1").is_zero());
  CHECK_THROWS_AS(RationalFunction::parse("1/(k - k)"), Error);
  CHECK_THROWS_AS(RationalFunction::parse("k +"), Error);
  CHECK_THROWS_AS(RationalFunction::parse("q + 1"), Error);
}

TEST_CASE("rational function arithmetic closes over the field") {
  RationalFunction f = RationalFunction::parse("(2+k)*(5+2*k)*(8+3*k)/360");
  CHECK(f == RationalFunction::parse("2/9 + 17/60*k + 43/360*k^2 + 1/60*k^3"));

  RationalFunction a = RationalFunction::parse("1/(k+1)");
  RationalFunction b = RationalFunction::parse("1/(k+2)");
  CHECK(a - b == RationalFunction::parse("1/((k+1)*(k+2))"));
  CHECK(a / b == RationalFunction::parse("(k+2)/(k+1)"));
  CHECK((a * (RationalFunction::variable() + RationalFunction(1))).is_one());
}

TEST_CASE("specialization is exact and reports poles") {
  RationalFunction f = RationalFunction::parse("(3*k + 1)/(k - 2)");
  CHECK(f.eval(Rational(3)) == Rational(10));
  CHECK(f.eval(Rational(1, 3)) == Rational(-6, 5));
  CHECK_THROWS_WITH_AS(f.eval(Rational(2)), doctest::Contains("pole at k = 2"),
                       Error);
}

TEST_CASE("printing round-trips through the parser") {
  for (const char* text : {"0", "-7/3", "k", "(1 + k)/(4 + k)",
                           "(-140 - 116*k - 24*k^2)/(4 + k)",
                           "2/9 + 17/60*k + 43/360*k^2 + 1/60*k^3"}) {
    RationalFunction f = RationalFunction::parse(text);
    CHECK(RationalFunction::parse(f.str()) == f);
  }
}
