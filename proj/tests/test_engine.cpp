#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <thread>

#include "vopa/engine.hpp"
#include "vopa/jacobi_solver.hpp"

using namespace vopa;

namespace {
RationalFunction rf(const std::string& s) { return RationalFunction::parse(s); }
}  // namespace

TEST_CASE("free boson: products of the quadratic field") {
  // Independent oracle: S = :JJ: must satisfy the Virasoro relations of the
  // central charge 1 stress tensor :JJ:/(2k), scaled back by (2k)^2:
  //   S_(0)S = 2k DS,  S_(1)S = 4k S,  S_(2)S = 0,  S_(3)S = 2k^2.
  OpeEngine eng(builtin("heisenberg"));
  Expression S = eng.parse(":J J:");
  CHECK(eng.nth_product(S, S, 0) == eng.parse("2*k*D(:J J:)"));
  CHECK(eng.nth_product(S, S, 1) == eng.parse("4*k*:J J:"));
  CHECK(eng.nth_product(S, S, 2).is_zero());
  CHECK(eng.nth_product(S, S, 3) == eng.parse("2*k^2"));
  CHECK(eng.nth_product(S, S, 4).is_zero());
  CHECK(eng.max_n(S, S) == 3);

  // J itself against S: J_(0)S = 0, J_(1)S = 2k J.
  Expression J = eng.gen_expr("J");
  CHECK(eng.nth_product(J, S, 0).is_zero());
  CHECK(eng.nth_product(J, S, 1) == eng.parse("2*k*J"));
}

TEST_CASE("virasoro table reproduces itself") {
  OpeEngine eng(builtin("virasoro"));
  Expression T = eng.gen_expr("T");
  auto sp = eng.ope_singular(T, T);
  REQUIRE(sp.terms.size() == 3);
  CHECK(sp.terms[0].n == 3);
  CHECK(sp.terms[0].value == eng.parse("k/2"));
  CHECK(sp.terms[1].value == eng.parse("2*T"));
  CHECK(sp.terms[2].value == eng.parse("D(T)"));
  CHECK(show_singular(eng.pres(), sp) == "4: 1/2*k\n2: 2*T\n1: D(T)");
  CHECK(show_singular(eng.pres(), eng.ope_singular(T, Expression())) ==
        "regular");
}

TEST_CASE("reordering and derivative rules") {
  OpeEngine eng(builtin("w2_4"));
  // :J D(J): reorders to the canonical :D(J) J: with no correction terms,
  // because J_(i)D(J) is a constant or zero for every i >= 0.
  CHECK(eng.parse(":J D(J):") == eng.parse(":D(J) J:"));
  // Leibniz: D(:J J:) = 2 :D(J) J: after reordering.
  CHECK(eng.derivative(eng.parse(":J J:")) == eng.parse("2*:D(J) J:"));
  CHECK(eng.derivative(eng.gen_expr("T"), 3) == eng.parse("D^3(T)"));
  // (Da)_(n)b = -n a_(n-1)b, including the creative indices.
  Expression J = eng.gen_expr("J");
  for (int n = -2; n <= 2; ++n)
    CHECK(eng.nth_product(eng.derivative(J), J, n) ==
          eng.nth_product(J, J, n - 1).scaled(Coeff(Rational(-n))));
}

TEST_CASE("quasi-commutativity of the wick product") {
  OpeEngine eng(builtin("w2_4"));
  Expression J = eng.gen_expr("J"), T = eng.gen_expr("T");
  // :ab: - (-1)^{|a||b|}:ba: = sum_i (-1)^i D^{i+1}(a_(i)b)/(i+1)!
  Expression lhs = eng.wick(T, J) - eng.wick(J, T);
  Expression rhs;
  for (int i = 0; i <= eng.max_n(T, J); ++i) {
    Expression d = eng.derivative(eng.nth_product(T, J, i), i + 1);
    rhs += d.scaled(Coeff(Rational((i % 2) ? -1 : 1) / factorial(i + 1)));
  }
  CHECK(lhs == rhs);

  // The charged pair is bosonic too; the same identity applies.
  Expression Gp = eng.gen_expr("G+"), Gm = eng.gen_expr("G-");
  Expression glhs = eng.wick(Gp, Gm) - eng.wick(Gm, Gp);
  Expression grhs;
  for (int i = 0; i <= eng.max_n(Gp, Gm); ++i) {
    Expression d = eng.derivative(eng.nth_product(Gp, Gm, i), i + 1);
    grhs += d.scaled(Coeff(Rational((i % 2) ? -1 : 1) / factorial(i + 1)));
  }
  CHECK(glhs == grhs);
}

TEST_CASE("solved five-generator table: frozen values") {
  OpeEngine eng(solved_w24());
  Expression J = eng.gen_expr("J"), T = eng.gen_expr("T");
  Expression Gp = eng.gen_expr("G+"), Gm = eng.gen_expr("G-");

  CHECK(eng.nth_product(J, J, 1) == eng.parse("2 + 3/4*k"));
  CHECK(eng.nth_product(J, Gp, 0) == Gp);
  CHECK(eng.nth_product(J, Gm, 0) == -Gm);
  CHECK(eng.nth_product(T, J, 1) == J);

  // Top pole of G+ G-: the rank-3 pairing constant (k+2)(2k+5)(3k+8).
  CHECK(eng.nth_product(Gp, Gm, 3) ==
        Expression::vacuum(Coeff(rf("(2+k)*(5+2*k)*(8+3*k)"))));

  // The normally ordered product with T produces the classical correction.
  CHECK(eng.wick(T, J) == eng.parse(":J T: + 1/2*D^2(J)"));
}

TEST_CASE("skew transport matches direct products") {
  OpeEngine eng(solved_w24());
  const Presentation& p = eng.pres();
  for (int a = 0; a < p.num_generators(); ++a)
    for (int b = 0; b < p.num_generators(); ++b) {
      Expression ea = eng.gen_expr(a), eb = eng.gen_expr(b);
      for (int n = 0; n <= p.max_n_pair(a, b); ++n)
        CHECK(eng.nth_product(eb, ea, n) == eng.skew_transport(ea, eb, n));
    }
}

TEST_CASE("jacobi defects vanish on fixed-table triples") {
  OpeEngine eng(builtin("w2_4"));
  const Presentation& p = eng.pres();
  // Triples not touching the open W W rows close on the raw table already.
  int J = p.generator("J"), T = p.generator("T");
  int Gp = p.generator("G+"), Gm = p.generator("G-");
  for (auto [a, b, c] : {std::array<int, 3>{J, T, Gp},
                         std::array<int, 3>{J, Gp, Gm},
                         std::array<int, 3>{T, T, T},
                         std::array<int, 3>{T, Gp, Gm}}) {
    Expression ea = eng.gen_expr(a), eb = eng.gen_expr(b), ec = eng.gen_expr(c);
    for (auto [r, s] : jacobi_window(p, a, b, c)) {
      INFO("triple (", p.gen(a).name, ", ", p.gen(b).name, ", ", p.gen(c).name,
           ") at r=", r, " s=", s);
      CHECK(eng.jacobi_defect(ea, eb, ec, r, s).is_zero());
    }
  }
}

TEST_CASE("window enumeration respects weight cutoffs") {
  Presentation p = builtin("w2_4");
  int J = p.generator("J"), T = p.generator("T");
  auto win = jacobi_window(p, J, J, T);
  CHECK_FALSE(win.empty());
  for (auto [r, s] : win) {
    CHECK(r >= 0);
    CHECK(s >= 0);
    // wt J + wt J + wt T - r - s - 2 >= 0
    CHECK(r + s <= 2);
  }
}

TEST_CASE("engine caches are safe under concurrent queries") {
  OpeEngine eng(solved_w24());
  Expression Gp = eng.gen_expr("G+"), Gm = eng.gen_expr("G-");
  Expression first, second;
  std::thread t1([&] { first = eng.nth_product(Gp, Gm, 0); });
  std::thread t2([&] { second = eng.nth_product(Gp, Gm, 0); });
  t1.join();
  t2.join();
  CHECK(first == second);
  CHECK(first == eng.nth_product(Gp, Gm, 0));
}
