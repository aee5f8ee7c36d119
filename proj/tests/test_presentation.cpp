#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vopa/engine.hpp"
#include "vopa/presentation.hpp"

using namespace vopa;

TEST_CASE("built-in tables") {
  CHECK(is_builtin("heisenberg"));
  CHECK(is_builtin("virasoro"));
  CHECK(is_builtin("w2_4"));
  CHECK_FALSE(is_builtin("nope"));
  CHECK(builtin_names().size() == 3);
  CHECK_THROWS_AS(builtin("nope"), Error);

  Presentation h = builtin("heisenberg");
  REQUIRE(h.num_generators() == 1);
  const std::map<int, Expression>* jj = h.entry(0, 0);
  REQUIRE(jj != nullptr);
  // J_(1)J = k * vacuum, and nothing else is singular.
  CHECK(jj->size() == 1);
  CHECK(jj->at(1) == Expression::vacuum(Coeff(RationalFunction::variable())));

  Presentation w = builtin("w2_4");
  CHECK(w.num_generators() == 5);
  CHECK_FALSE(w.gen(w.generator("G+")).odd);  // all five fields are bosonic
  CHECK(w.gen(w.generator("G+")).charge == 1);
  CHECK(w.gen(w.generator("G-")).charge == -1);
  CHECK(w.gen(w.generator("W")).weight == HalfInt(3));
  CHECK(w.virasoro_index() == w.generator("T"));
  CHECK(w.num_unknowns() > 0);  // the W W rows below the top pole are ansatz
}

TEST_CASE("generator bookkeeping rejects bad input") {
  Presentation p;
  p.add_generator({"J", HalfInt(1), false, 0, false});
  CHECK_THROWS_WITH_AS(p.add_generator({"J", HalfInt(2), false, 0, false}),
                       doctest::Contains("duplicate generator"), Error);
  CHECK_THROWS_WITH_AS(p.add_generator({"Z", HalfInt(0), false, 0, false}),
                       doctest::Contains("positive weight"), Error);
  CHECK_THROWS_AS(p.generator("Q"), Error);
  CHECK(p.find_generator("Q") == -1);

  Expression v = Expression::vacuum();
  p.add_entry(0, 0, 1, v);
  CHECK_THROWS_AS(p.add_entry(0, 0, 1, v), Error);  // duplicate (a, b, n)
}

TEST_CASE("grading of words and expressions") {
  Presentation w = builtin("w2_4");
  int J = w.generator("J"), T = w.generator("T"), Gp = w.generator("G+");

  Word jdt = make_word({{0, J}, {2, T}});
  CHECK(w.weight_of(jdt) == HalfInt(5));  // 1 + (2 + 2 derivatives)
  CHECK(w.charge_of(jdt) == 0);
  CHECK_FALSE(w.odd_of(jdt));
  CHECK_FALSE(w.odd_of(make_word({{0, Gp}})));

  Presentation::Grading g =
      w.grade(Expression::term(make_word({{0, J}, {0, Gp}})) +
              Expression::term(make_word({{1, Gp}})));
  CHECK(g.homogeneous);
  CHECK(g.weight == HalfInt(3));
  CHECK(g.charge == 1);
  CHECK_FALSE(w.grade(Expression::term(make_word({{0, J}})) +
                      Expression::term(make_word({{0, T}})))
                  .homogeneous);

  CHECK(Presentation::max_n(HalfInt(6)) == 5);
  CHECK(Presentation::max_n(HalfInt::from_twice(5)) == 1);  // 5/2 -> floor 3/2
  CHECK(w.max_n_pair(T, T) == 3);
}

TEST_CASE("expression parser on a fixed table") {
  Presentation w = builtin("w2_4");
  int J = w.generator("J"), T = w.generator("T");

  Expression e = parse_expression(w, "3*:J J: - 1/2*D^2(T) + k*T");
  CHECK(e.coeff(make_word({{0, J}, {0, J}})) == Coeff(3));
  CHECK(e.coeff(make_word({{2, T}})) == Coeff(Rational(-1, 2)));
  CHECK(e.coeff(make_word({{0, T}})) == Coeff(RationalFunction::variable()));

  // D distributes through sums; scalars multiply through.
  CHECK(parse_expression(w, "D(2*J)") ==
        parse_expression(w, "2*D(J)"));
  CHECK(parse_expression(w, "(1+k)*(J + T)") ==
        parse_expression(w, "(1+k)*J + (1+k)*T"));

  CHECK_THROWS_WITH_AS(parse_expression(w, "Q"),
                       doctest::Contains("unknown symbol"), Error);
  CHECK_THROWS_AS(parse_expression(w, "J*T"), Error);   // needs normal order
  CHECK_THROWS_AS(parse_expression(w, ":J:"), Error);   // words need 2 factors
  CHECK_THROWS_AS(parse_expression(w, "1/J"), Error);   // no field inverses
  CHECK_THROWS_AS(parse_expression(w, ":D(J) :J J::"), Error);  // no wick here

  // Scalar-only arithmetic lands on the vacuum.
  CHECK(parse_expression(w, "k^2/2 + 1") ==
        Expression::vacuum(Coeff(RationalFunction::parse("k^2/2 + 1"))));
}

TEST_CASE("printing round-trips through parse and canonicalization") {
  OpeEngine eng(builtin("w2_4"));
  const Presentation& p = eng.pres();
  for (const char* text :
       {"J", ":D(J) J:", ":G+ G-: - 2/3*D^2(J)", "k*T + :J J:",
        ":J J T: + (1+k)/(4+k)*W"}) {
    Expression e = eng.parse(text);
    CHECK(eng.parse(p.show(e)) == e);
  }
}

TEST_CASE("table files load, reject duplicates, expand ansatz rows") {
  const char* good = R"(
algebra toy
param c
generator A weight 1 parity even charge 0
ope A A
  2: c
end
)";
  Presentation p = load_presentation_text(good);
  CHECK(p.name() == "toy");
  CHECK(p.param() == "c");
  REQUIRE(p.entry(0, 0) != nullptr);
  CHECK(p.entry(0, 0)->at(1) ==
        Expression::vacuum(Coeff(RationalFunction::variable())));

  CHECK_THROWS_WITH_AS(
      load_presentation_text("algebra x\ngenerator A weight 1\n"
                             "ope A A\n 2: 1\nend\nope A A\n 2: 1\nend\n"),
      doctest::Contains("duplicate OPE data"), Error);
  CHECK_THROWS_WITH_AS(load_presentation_text("bogus line\n"),
                       doctest::Contains("unrecognized directive"), Error);
  CHECK_THROWS_WITH_AS(load_presentation_text("generator A weight 1\nope A A\n"),
                       doctest::Contains("unterminated"), Error);

  // An ansatz row becomes one fresh unknown per basis word of its slice.
  Presentation q;
  q.add_generator({"J", HalfInt(1), false, 0, false});
  q.add_generator({"T", HalfInt(2), false, 0, true});
  add_ansatz_entry(q, 1, 1, 1);  // T_(1)T: slice of weight 2, charge 0
  const std::map<int, Expression>* tt = q.entry(1, 1);
  REQUIRE(tt != nullptr);
  const Expression& v = tt->at(1);
  // Basis {:J J:, T, D(J)}: three unknown coefficients.
  CHECK(v.size() == 3);
  CHECK(q.num_unknowns() == 3);
  for (const auto& [word, c] : v) CHECK_FALSE(c.is_constant());
}

TEST_CASE("validation accepts the fixed tables and counts open rows") {
  ValidationReport h = validate_presentation(builtin("heisenberg"));
  CHECK(h.clean());
  CHECK(h.unresolved_constraints == 0);

  ValidationReport v = validate_presentation(builtin("virasoro"));
  CHECK(v.clean());

  // The raw five-generator table still carries its W W ansatz, so some
  // skew-symmetry constraints cannot be discharged yet.
  ValidationReport w = validate_presentation(builtin("w2_4"));
  CHECK(w.clean());
  CHECK(w.unresolved_constraints > 0);
}

TEST_CASE("substitution and specialization rewrite the whole table") {
  Presentation w = builtin("w2_4");
  std::vector<int> open = w.active_unknowns();
  REQUIRE_FALSE(open.empty());

  std::map<int, Coeff> kill;
  for (int id : open) kill[id] = Coeff(0);
  Presentation closed = w.substituted(kill);
  CHECK(closed.active_unknowns().empty());

  Presentation at2 = closed.mapped([](const RationalFunction& f) {
    return RationalFunction(Polynomial(f.eval(Rational(2))));
  });
  int J = at2.generator("J");
  CHECK(at2.entry(J, J)->at(1) ==
        Expression::vacuum(Coeff(Rational(7, 2))));  // 2 + 3k/4 at k = 2
}
