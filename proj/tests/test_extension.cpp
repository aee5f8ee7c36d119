#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vopa/extension.hpp"

using namespace vopa;

TEST_CASE("coprimality gates") {
  GateReport g34 = gates(3, 4);
  CHECK(g34.base);
  CHECK(g34.theorem);
  CHECK(g34.nr_even);

  // (5, 4): gcd(6, 9) = 3 kills the base gate, the theorem gate survives
  // through gcd(4, 9) = 1.
  GateReport g54 = gates(5, 4);
  CHECK_FALSE(g54.base);
  CHECK(g54.theorem);

  // (7, 5): gcd(6, 8) = 2 and gcd(6, 12) = 6, so the theorem gate fails.
  GateReport g75 = gates(7, 5);
  CHECK_FALSE(g75.theorem);
  CHECK(g75.detail.find("gcd") != std::string::npos);
}

TEST_CASE("level maps between the two realizations") {
  LevelData d = levels(3, 4);
  CHECK(d.ell == Rational(-5, 4));
  CHECK(d.k_conj == Rational(-5, 3));
  CHECK_THROWS_WITH_AS(levels(3, 1), doctest::Contains("pole at r = 1"),
                       Error);

  // Feeding n = 3k + 8 with r = 4 into the conjugate map returns k itself:
  // (n + 4)/3 - 4 = k.
  for (long k = 0; k <= 10; ++k)
    CHECK(levels(static_cast<int>(3 * k + 8), 4).k_conj == Rational(k));
}

TEST_CASE("simple current data") {
  SimpleCurrentData d = simple_current_data(3, 4);
  CHECK(d.conf_dim == Rational(4, 3));
  CHECK(d.qdim == 1);
  CHECK(d.lattice_generator_weight == Rational(2, 3));

  CHECK(simple_current_data(3, 5).qdim == -1);
  CHECK(simple_current_data(4, 3).conf_dim == Rational(9, 8));
}

TEST_CASE("decomposition at the sample points") {
  ExtensionData d = extension_decomposition(3, 4);
  CHECK(d.ell == Rational(-5, 4));
  CHECK(d.k_conj == Rational(-5, 3));
  CHECK(d.lattice_scale == 12);
  CHECK(d.integer_graded);
  CHECK(d.qdim_generator == 1);
  REQUIRE(d.summands.size() == 3);
  CHECK(d.summands[1].lattice_coset_weight == Rational(2, 3));
  CHECK(d.summands[1].simple_current_weight == Rational(4, 3));
  CHECK(d.summands[1].lowest_weight == Rational(2));

  // (5, 4): lowest weights 0, 2, 4, 4, 2 even though the base gate fails.
  ExtensionData e = extension_decomposition(5, 4);
  REQUIRE(e.summands.size() == 5);
  std::vector<Rational> lows;
  for (const Summand& s : e.summands) lows.push_back(s.lowest_weight);
  CHECK(lows == std::vector<Rational>{0, 2, 4, 4, 2});
  CHECK_FALSE(e.gate.base);

  CHECK_THROWS_WITH_AS(extension_decomposition(7, 5),
                       doctest::Contains("theorem gate fails"), Error);
}

TEST_CASE("structural invariants of the summand data") {
  for (int n = 2; n <= 9; ++n)
    for (int r = 2; r <= 9; ++r) {
      if (!gates(n, r).theorem) continue;
      ExtensionData d = extension_decomposition(n, r);

      // Grading is integral exactly for even r.
      CHECK(d.integer_graded == (r % 2 == 0));
      CHECK(d.qdim_generator == (r % 2 ? -1 : 1));

      // The current weights are symmetric under s -> n - s, and every
      // summand weight matches its defining fraction.
      for (const Summand& s : d.summands) {
        CHECK(s.lattice_coset_weight == Rational(1L * r * s.s * s.s, 2 * n));
        CHECK(s.simple_current_weight ==
              Rational(1L * r * s.s * (n - s.s), 2 * n));
        if (s.s > 0) {
          const Summand& mirror = d.summands[n - s.s];
          CHECK(mirror.simple_current_weight == s.simple_current_weight);
          CHECK(mirror.lowest_weight == s.lowest_weight);
        }
      }

      // The generator's conformal dimension is (n-1)/n times r/2.
      SimpleCurrentData sc = simple_current_data(n, r);
      CHECK(sc.conf_dim * Rational(2 * n, 1L * r * (n - 1)) == Rational(1));
    }
}

TEST_CASE("boundary normalization data") {
  BoundaryData b4 = boundary_ope_data(4);
  CHECK(b4.pairing_constant ==
        RationalFunction::parse("(2+k)*(5+2*k)*(8+3*k)"));
  CHECK(b4.pairing_constant ==
        RationalFunction::parse("80 + 102*k + 43*k^2 + 6*k^3"));

  BoundaryData b5 = boundary_ope_data(5);
  CHECK(b5.heis_level == RationalFunction::parse("3 + 4/5*k"));
  CHECK(b5.pairing_constant ==
        RationalFunction::parse("(k+3)*(2*k+7)*(3*k+11)*(4*k+15)"));

  // The residual current level follows (n-1)k/n + n - 2 in general.
  for (int n = 2; n <= 8; ++n) {
    std::string expect = std::to_string(n - 2) + " + " +
                         std::to_string(n - 1) + "/" + std::to_string(n) +
                         "*k";
    CHECK(boundary_ope_data(n).heis_level == RationalFunction::parse(expect));
  }
}
