#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vopa/engine.hpp"
#include "vopa/jacobi_solver.hpp"

using namespace vopa;

namespace {
RationalFunction rf(const std::string& s) { return RationalFunction::parse(s); }
}  // namespace

TEST_CASE("staged solve on a single triple makes partial progress") {
  Presentation p = w24_jacobi_ansatz();
  REQUIRE(p.num_unknowns() >= 10);

  SolveStage stage;
  stage.name = "charge action";
  stage.triples = {{p.generator("J"), p.generator("G+"), p.generator("G-")}};
  StagedSolveReport rep = solve_stages(p, {stage});
  REQUIRE(rep.consistent);
  REQUIRE(rep.stages.size() == 1);
  CHECK(rep.stages[0].equations > 0);
  CHECK_FALSE(rep.stages[0].solved_ids.empty());
  CHECK_FALSE(rep.remaining.empty());  // one triple cannot fix everything

  // Solved values must be substituted: none of the solved ids stays active.
  for (int id : rep.stages[0].solved_ids)
    for (int act : rep.solved.active_unknowns()) CHECK(act != id);
}

TEST_CASE("zero probe justifies the scale normalization") {
  Presentation p = w24_jacobi_ansatz();
  SolveStage first;
  first.name = "G+ G- row";
  int J = p.generator("J"), T = p.generator("T");
  int Gp = p.generator("G+"), Gm = p.generator("G-");
  first.triples = {{J, Gp, Gm}, {T, Gp, Gm}};
  StagedSolveReport rep = solve_stages(p, {first});
  REQUIRE(rep.consistent);

  // After the first stage the W coefficient a5 is still free, but setting it
  // to zero contradicts the (G+, G+, G-) identity.
  int a5 = rep.solved.find_unknown("a5");
  REQUIRE(a5 >= 0);
  ProbeResult probe = probe_forces_nonzero(rep.solved, a5, {Gp, Gp, Gm});
  CHECK(probe.forced_nonzero);
  CHECK_FALSE(probe.witness.empty());
}

TEST_CASE("full pipeline reproduces the closed table") {
  TheoremReport rep = run_theorem_pipeline();
  REQUIRE_MESSAGE(rep.ok, rep.failure);

  // Stage sizes are part of the frozen behaviour: 15 equations determine the
  // G+ G- row up to the W scale, 16 fix the W G+/- rows relative to it, and
  // 127 close the W W rows.
  REQUIRE(rep.log.size() >= 5);
  CHECK(rep.log[0] == "stage 1: 15 equations, solved a1, a2, a3, a4, a6, a7, "
                      "a8, a9, a10");
  CHECK(rep.log[2] == "stage 2: normalized the scale of W by a5 = k + 2");
  CHECK(rep.log[3] == "stage 3: 16 equations, solved 14 coefficients");
  CHECK(rep.log[4] == "stage 4: 127 equations, solved 50 coefficients");

  const std::map<std::string, RationalFunction>& a = rep.named;
  CHECK(a.at("a1") == rf("4*(2+k)*(5+2*k)"));
  CHECK(a.at("a2") == rf("-(2+k)*(4+k)"));
  CHECK(a.at("a3") == rf("6*(2+k)"));
  CHECK(a.at("a4") == rf("2*(2+k)*(5+2*k)"));
  CHECK(a.at("a5") == rf("k+2"));
  CHECK(a.at("a6") == rf("8*(2+k)*(32+11*k)/(3*(8+3*k)^2)"));
  CHECK(a.at("a7") == rf("-4*(2+k)*(4+k)/(8+3*k)"));
  CHECK(a.at("a8") == rf("6*(2+k)"));
  CHECK(a.at("a9") == rf("-(2+k)*(4+k)/2"));
  CHECK(a.at("a10") == rf("4*(2+k)*(26+17*k+3*k^2)/(3*(8+3*k))"));

  // Top pole of W W: a multiple of the vacuum, fixed by the chosen scale.
  CHECK(rep.ww_top ==
        Expression::vacuum(
            Coeff(rf("2*(4+k)*(5+2*k)*(7+3*k)*(16+5*k)/(8+3*k)"))));

  ValidationReport v = validate_presentation(rep.solved);
  CHECK(v.clean());
  CHECK(v.unresolved_constraints == 0);
}

TEST_CASE("solved table is closed and matches the pipeline") {
  Presentation s = solved_w24();
  CHECK(s.active_unknowns().empty());
  CHECK(validate_presentation(s).clean());

  // solve_w24_tail on the raw table gives the same entries as the pipeline
  // result; spot-check the quartic pole of W W.
  int W = s.generator("W");
  const std::map<int, Expression>* ww = s.entry(W, W);
  REQUIRE(ww != nullptr);
  REQUIRE(ww->count(5) == 1);
  TheoremReport rep = run_theorem_pipeline();
  REQUIRE(rep.ok);
  for (const auto& [n, value] : *ww) {
    REQUIRE(rep.solved.entry(W, W)->count(n) == 1);
    OpeEngine a(s), b(rep.solved);
    CHECK(a.canonical_form(value) ==
          b.canonical_form(rep.solved.entry(W, W)->at(n)));
  }
}

TEST_CASE("tail solver on the raw table is deterministic") {
  Presentation s = solved_w24();
  Presentation again = solve_w24_tail(builtin("w2_4"));
  int W = s.generator("W");
  OpeEngine a(s), b(again);
  for (const auto& [n, value] : *s.entry(W, W))
    CHECK(a.canonical_form(value) ==
          b.canonical_form(again.entry(W, W)->at(n)));
}
