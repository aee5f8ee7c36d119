#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vopa/coset.hpp"
#include "vopa/jacobi_solver.hpp"

using namespace vopa;

namespace {
RationalFunction rf(const std::string& s) { return RationalFunction::parse(s); }
}  // namespace

TEST_CASE("bilinear fields carry the expected grading") {
  Presentation p = solved_w24();
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      Expression u = u_field(p, i, j);
      Presentation::Grading g = p.grade(u);
      CHECK(g.homogeneous);
      CHECK(g.weight == HalfInt(i + j + 4));
      CHECK(g.charge == 0);
      CHECK(u.size() == 1);  // a single canonical two-letter word
    }
  CHECK(p.show(u_field(p, 0, 3)) == ":G+ D^3(G-):");
  CHECK(p.show(u_field(p, 2, 0)) == ":D^2(G+) G-:");
}

TEST_CASE("leading coefficients of the decoupling relations") {
  OpeEngine eng(solved_w24());
  CHECK(decoupling_coefficient_formula(1) == rf("(2+k)*(5+2*k)*(8+3*k)/360"));
  CHECK(decoupling_coefficient_formula(2) ==
        rf("11*(2+k)*(5+2*k)*(8+3*k)/2520"));
  CHECK(decoupling_coefficient_formula(1) ==
        rf("2/9 + 17/60*k + 43/360*k^2 + 1/60*k^3"));
  // The engine extraction agrees with the closed form.
  CHECK(decoupling_coefficient(eng, 1) == decoupling_coefficient_formula(1));
  CHECK(decoupling_coefficient(eng, 2) == decoupling_coefficient_formula(2));
}

TEST_CASE("first decoupling relation reconstructs exactly") {
  OpeEngine eng(solved_w24());
  DecouplingResult r = decoupling_relation(eng, 1);
  CHECK(r.n == 1);
  CHECK(r.coefficient == decoupling_coefficient_formula(1));
  CHECK_FALSE(r.tail.empty());

  // coefficient * U_{0,6} - (:U00 U11: - :U01 U10:) + tail = 0.
  Expression residue = u_field(eng.pres(), 0, 6).scaled(Coeff(r.coefficient)) -
                       r.combination + r.tail_value();
  CHECK(residue.is_zero());

  // Tail monomials avoid the lead: no U_{0,6} factor, indices stay below.
  for (const TailTerm& t : r.tail) {
    CHECK(t.monomial.find("U[0,6]") == std::string::npos);
    CHECK_FALSE(t.coefficient.is_zero());
    CHECK_FALSE(t.value.is_zero());
  }
}

TEST_CASE("commutant correction of the stress tensor") {
  OpeEngine eng(solved_w24());
  const Presentation& p = eng.pres();
  Expression T = eng.gen_expr("T");
  Expression omega = commutant_correction(eng, T);

  int J = p.generator("J");
  Expression expected =
      Expression::term(make_word({{0, J}, {0, J}})).scaled(Coeff(rf("-2/(8+3*k)")));
  CHECK(omega == expected);

  // The corrected field really commutes with the weight-one current.
  Expression Jf = eng.gen_expr("J");
  for (int m = 0; m <= 2; ++m)
    CHECK(eng.nth_product(Jf, T + omega, m).is_zero());
}

TEST_CASE("fields already in the commutant need no correction") {
  OpeEngine eng(solved_w24());
  Expression W = eng.gen_expr("W");
  CHECK(commutant_correction(eng, W).is_zero());
}

TEST_CASE("the current itself admits no correction") {
  OpeEngine eng(solved_w24());
  CHECK_THROWS_WITH_AS(commutant_correction(eng, eng.gen_expr("J")),
                       doctest::Contains("no nontrivial commutant"), Error);
}

TEST_CASE("coset virasoro field and central charges") {
  OpeEngine eng(solved_w24());
  CosetVirasoro cv = coset_virasoro(eng);

  CHECK(cv.field == eng.parse("T - 2/(8+3*k)*:J J:"));
  CHECK(cv.central_charge == rf("-4*(5+2*k)*(7+3*k)/(4+k)"));
  CHECK(cv.central_charge == central_charge_of(eng, cv.field));

  // The parent charge sits exactly one above the coset charge.
  RationalFunction parent = central_charge_of(eng, eng.gen_expr("T"));
  CHECK(parent == rf("-(8+3*k)*(17+8*k)/(4+k)"));
  CHECK(parent - cv.central_charge == rf("1"));

  // The weight-one current decouples from the coset stress tensor.
  auto sp = eng.ope_singular(eng.gen_expr("J"), cv.field);
  CHECK(sp.regular());
}

TEST_CASE("central charge extraction rejects non-virasoro fields") {
  OpeEngine eng(solved_w24());
  CHECK_THROWS_WITH_AS(central_charge_of(eng, eng.gen_expr("J")),
                       doctest::Contains("not a Virasoro field"), Error);
  CHECK_THROWS_WITH_AS(central_charge_of(eng, eng.parse("2*T")),
                       doctest::Contains("not a Virasoro field"), Error);
}

TEST_CASE("corrections at a fixed level commute with specialization") {
  // Specializing the parameter before computing the correction must agree
  // with specializing the symbolic answer.
  Rational k0(3);
  auto at_k0 = [&](const RationalFunction& f) {
    return RationalFunction(Polynomial(f.eval(k0)));
  };
  OpeEngine sym(solved_w24());
  OpeEngine num(solved_w24().mapped(at_k0));

  Expression sym_omega = commutant_correction(sym, sym.gen_expr("T"));
  Expression num_omega = commutant_correction(num, num.gen_expr("T"));
  CHECK(sym_omega.map_coeffs(at_k0) == num_omega);

  Expression u = u_field(num.pres(), 0, 0);
  Expression om = commutant_correction(num, u);
  for (int m = 1; m <= 4; ++m)
    CHECK(num.nth_product(num.gen_expr("J"), u + om, m).is_zero());
}
