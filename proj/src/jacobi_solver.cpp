#include "vopa/jacobi_solver.hpp"

#include <sstream>

#include "vopa/engine.hpp"
#include "vopa/linsolve.hpp"

namespace vopa {

namespace {

void collect_triple(const OpeEngine& eng, const JacobiTriple& t, LinearSystem& sys) {
  const Presentation& p = eng.pres();
  Expression a = eng.gen_expr(t.a), b = eng.gen_expr(t.b), c = eng.gen_expr(t.c);
  for (auto [r, s] : jacobi_window(p, t.a, t.b, t.c)) sys.add_all(eng.jacobi_defect(a, b, c, r, s));
}

void collect_skew(const OpeEngine& eng, int a, int b, LinearSystem& sys) {
  const Presentation& p = eng.pres();
  Expression ea = eng.gen_expr(a), eb = eng.gen_expr(b);
  for (int n = 0; n <= p.max_n_pair(a, b); ++n)
    sys.add_all(eng.nth_product(ea, eb, n) - eng.skew_transport(eb, ea, n));
}

std::map<int, Coeff> compose(const std::map<int, Coeff>& cum, const std::map<int, Coeff>& next) {
  std::map<int, Coeff> out;
  for (const auto& [id, v] : cum) out[id] = v.substitute(next);
  for (const auto& [id, v] : next)
    if (!out.count(id)) out[id] = v;
  return out;
}

std::string id_list(const Presentation& p, const std::vector<int>& ids) {
  std::string s;
  for (int id : ids) {
    if (!s.empty()) s += ", ";
    s += p.unknown_name(id);
  }
  return s;
}

}  // namespace

StagedSolveReport solve_stages(const Presentation& p, const std::vector<SolveStage>& stages) {
  StagedSolveReport rep;
  Presentation cur = p;
  for (const auto& st : stages) {
    OpeEngine eng(cur);
    LinearSystem sys;
    for (const auto& t : st.triples) collect_triple(eng, t, sys);
    for (const auto& [a, b] : st.skew_pairs) collect_skew(eng, a, b, sys);
    LinearSolution sol = sys.solve();
    StageOutcome out;
    out.name = st.name;
    out.equations = sys.num_rows();
    if (!sol.consistent) {
      rep.consistent = false;
      rep.failure = "stage '" + st.name + "' is inconsistent: " + sol.inconsistency;
      rep.solved = cur;
      rep.stages.push_back(out);
      return rep;
    }
    for (const auto& [id, v] : sol.assignment) out.solved_ids.push_back(id);
    rep.assignment = compose(rep.assignment, sol.assignment);
    cur = cur.substituted(sol.assignment);
    rep.stages.push_back(out);
  }
  rep.solved = cur;
  rep.remaining = cur.active_unknowns();
  return rep;
}

ProbeResult probe_forces_nonzero(const Presentation& p, int unknown, const JacobiTriple& t) {
  ProbeResult res;
  Presentation p0 = p.substituted({{unknown, Coeff(0)}});
  OpeEngine eng(p0);
  Expression a = eng.gen_expr(t.a), b = eng.gen_expr(t.b), c = eng.gen_expr(t.c);
  LinearSystem sys;
  for (auto [r, s] : jacobi_window(p0, t.a, t.b, t.c)) {
    Expression d = eng.jacobi_defect(a, b, c, r, s);
    for (const auto& [w, cf] : d) {
      if (cf.is_constant() && !cf.constant_part().is_zero()) {
        res.forced_nonzero = true;
        std::ostringstream os;
        os << "with " << p0.unknown_name(unknown) << " = 0 the (" << p0.gen(t.a).name << ", "
           << p0.gen(t.b).name << ", " << p0.gen(t.c).name << ") defect at r=" << r << ", s=" << s
           << " keeps the term " << p0.show(Expression::term(w, cf));
        res.witness = os.str();
        return res;
      }
    }
    sys.add_all(d);
  }
  LinearSolution sol = sys.solve();
  if (!sol.consistent) {
    res.forced_nonzero = true;
    res.witness = "with " + p0.unknown_name(unknown) +
                  " = 0 the remaining constraints are unsatisfiable: " + sol.inconsistency;
  }
  return res;
}

TheoremReport run_theorem_pipeline() {
  TheoremReport rep;
  Presentation p = w24_jacobi_ansatz();
  int j = p.generator("J"), t = p.generator("T"), w = p.generator("W");
  int gp = p.generator("G+"), gm = p.generator("G-");
  int a5 = p.find_unknown("a5");

  StagedSolveReport s1 = solve_stages(
      p, {{"charge and Virasoro covariance of the G+ G- rows", {{j, gp, gm}, {t, gp, gm}}, {}}});
  if (!s1.consistent) {
    rep.failure = s1.failure;
    return rep;
  }
  rep.log.push_back("stage 1: " + std::to_string(s1.stages[0].equations) + " equations, solved " +
                    id_list(p, s1.stages[0].solved_ids));
  for (int i = 1; i <= 10; ++i) {
    int id = p.find_unknown("a" + std::to_string(i));
    auto it = s1.assignment.find(id);
    if (i == 5) {
      if (it != s1.assignment.end()) {
        rep.failure = "a5 was unexpectedly determined by stage 1";
        return rep;
      }
      continue;
    }
    if (it == s1.assignment.end() || !it->second.is_constant()) {
      rep.failure = "a" + std::to_string(i) + " was not pinned down by stage 1";
      return rep;
    }
  }

  ProbeResult probe = probe_forces_nonzero(s1.solved, a5, {gp, gp, gm});
  if (!probe.forced_nonzero) {
    rep.failure = "a5 = 0 leads to no obstruction; the W term would be optional";
    return rep;
  }
  rep.log.push_back("stage 2: " + probe.witness);
  RationalFunction a5val = RationalFunction::parse("k+2");
  std::map<int, Coeff> norm{{a5, Coeff(a5val)}};
  Presentation p2 = s1.solved.substituted(norm);
  rep.log.push_back("stage 2: normalized the scale of W by a5 = k + 2");

  StagedSolveReport s34 = solve_stages(
      p2, {{"charge and Virasoro covariance of the W G+/- rows",
            {{t, w, gp}, {j, w, gp}, {t, w, gm}, {j, w, gm}},
            {}},
           {"closure of (W, G+, G-) and W W skew symmetry", {{w, gp, gm}}, {{w, w}}}});
  if (!s34.consistent) {
    rep.failure = s34.failure;
    return rep;
  }
  for (const auto& st : s34.stages)
    rep.log.push_back("stage " + std::string(st.name.find("W G") != std::string::npos ? "3" : "4") +
                      ": " + std::to_string(st.equations) + " equations, solved " +
                      std::to_string(st.solved_ids.size()) + " coefficients");
  if (!s34.remaining.empty()) {
    rep.failure = "undetermined coefficients remain: " + id_list(p, s34.remaining);
    return rep;
  }

  std::map<int, Coeff> cum = compose(compose(s1.assignment, norm), s34.assignment);
  for (int i = 1; i <= 10; ++i) {
    int id = p.find_unknown("a" + std::to_string(i));
    auto it = cum.find(id);
    if (it == cum.end() || !it->second.is_constant()) {
      rep.failure = "a" + std::to_string(i) + " did not end with a closed value";
      return rep;
    }
    rep.named["a" + std::to_string(i)] = it->second.constant_part();
  }

  rep.solved = s34.solved;
  if (const auto* ww = rep.solved.entry(w, w); ww && ww->count(5)) rep.ww_top = ww->at(5);
  rep.ok = true;
  return rep;
}

Presentation solve_w24_tail(const Presentation& p) {
  int j = p.generator("J"), t = p.generator("T"), w = p.generator("W");
  int gp = p.generator("G+"), gm = p.generator("G-");
  StagedSolveReport r =
      solve_stages(p, {{"W W rows from (W, G+, G-) and W W skew symmetry", {{w, gp, gm}}, {{w, w}}}});
  if (!r.consistent) throw Error(r.failure);
  if (!r.remaining.empty()) {
    r = solve_stages(r.solved,
                     {{"W W rows from T and J covariance", {{t, w, w}, {j, w, w}}, {}}});
    if (!r.consistent) throw Error(r.failure);
    if (!r.remaining.empty())
      throw Error("W W rows stay underdetermined: " + id_list(p, r.remaining));
  }
  return r.solved;
}

Presentation solved_w24() { return solve_w24_tail(builtin("w2_4")); }

}  // namespace vopa
