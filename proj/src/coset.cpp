#include "vopa/coset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "vopa/basis.hpp"
#include "vopa/linsolve.hpp"

namespace vopa {

namespace {

struct GPair {
  int gp = -1, gm = -1;
};

GPair g_indices(const Presentation& p) {
  GPair g;
  g.gp = p.find_generator("G+");
  g.gm = p.find_generator("G-");
  if (g.gp < 0 || g.gm < 0)
    throw Error("algebra '" + p.name() + "' has no G+/G- pair");
  return g;
}

Rational rat(long v) { return Rational(v); }

}  // namespace

Expression u_field(const Presentation& p, int i, int j) {
  if (i < 0 || j < 0) throw Error("u_field indices must be nonnegative");
  GPair g = g_indices(p);
  Word w;
  w.letters = {Letter{i, g.gp}, Letter{j, g.gm}};
  return Expression::term(w);
}

Expression DecouplingResult::tail_value() const {
  Expression sum;
  for (const auto& t : tail) sum += t.value.scaled(Coeff(t.coefficient));
  return sum;
}

RationalFunction decoupling_coefficient_formula(int n) {
  if (n < 1) throw Error("decoupling index must be at least 1");
  auto lin = [](long c0, long c1) {
    return Polynomial(std::vector<Rational>{Rational(c0), Rational(c1)});
  };
  Polynomial num = Polynomial(rat(n) * rat(9 + n)) * lin(2, 1) * lin(5, 2) *
                   lin(8, 3);
  Rational den = rat(120) * rat(4 + n) * rat(5 + n);
  return RationalFunction(num) / RationalFunction(Polynomial(den));
}

namespace {

// combination :U00 U1n: - :U0n U10:, the two-sided Wick square whose
// canonical part is the decoupling relation.
Expression decoupling_combination(const OpeEngine& eng, int n) {
  const Presentation& p = eng.pres();
  Expression a = eng.wick(u_field(p, 0, 0), u_field(p, 1, n));
  Expression b = eng.wick(u_field(p, 0, n), u_field(p, 1, 0));
  return a - b;
}

// Alternating-sum functional on the two-letter slice: phi(U_{0,m}) = 1 while
// phi annihilates total derivatives of two-letter words and every word that
// is not of the form :d^t G+ d^(m-t) G-:.
RationalFunction slice_functional(const OpeEngine& eng, const Expression& e,
                                  int m) {
  GPair g = g_indices(eng.pres());
  RationalFunction out;
  for (int t = 0; t <= m; ++t) {
    Word w;
    w.letters = {Letter{t, g.gp}, Letter{m - t, g.gm}};
    Coeff c = e.coeff(w);
    if (!c.is_constant())
      throw Error("decoupling requires a fully solved product table");
    if (t % 2)
      out -= c.constant_part();
    else
      out += c.constant_part();
  }
  return out;
}

}  // namespace

RationalFunction decoupling_coefficient(const OpeEngine& eng, int n) {
  if (n < 1) throw Error("decoupling index must be at least 1");
  return slice_functional(eng, decoupling_combination(eng, n), n + 5);
}

namespace {

// A tail factor: either the single letter d^der(gen) of the frame, or a
// derivative d^der U_{0,u} of a bilinear.
struct Factor {
  int der = 0;
  int gen = -1;  // >= 0 for a plain generator letter
  int u = -1;    // >= 0 for U_{0,u}
};

std::string factor_str(const Presentation& p, const Factor& f) {
  std::string base;
  if (f.gen >= 0) {
    base = p.gen(f.gen).name;
  } else {
    base = "U[0," + std::to_string(f.u) + "]";
  }
  if (f.der == 0) return base;
  if (f.der == 1) return "D(" + base + ")";
  return "D^" + std::to_string(f.der) + "(" + base + ")";
}

std::string monomial_str(const Presentation& p,
                         const std::vector<Factor>& fs) {
  std::string body;
  for (size_t i = 0; i < fs.size(); ++i) {
    if (i) body += " ";
    body += factor_str(p, fs[i]);
  }
  if (fs.size() > 1) return ":" + body + ":";
  return body;
}

Expression factor_value(const OpeEngine& eng, const Factor& f) {
  if (f.gen >= 0) {
    Word w;
    w.letters = {Letter{f.der, f.gen}};
    return Expression::term(w);
  }
  return eng.derivative(u_field(eng.pres(), 0, f.u), f.der);
}

Expression monomial_value(const OpeEngine& eng, const std::vector<Factor>& fs) {
  Expression v = factor_value(eng, fs.back());
  for (size_t i = fs.size() - 1; i-- > 0;)
    v = eng.wick(factor_value(eng, fs[i]), v);
  return v;
}

// Frame of a canonical charge-zero word: its non-G letters plus the number
// of G+/G- pairs. Letters are sorted with the G letters last, so the frame
// is just the prefix.
struct Frame {
  std::vector<Letter> jtw;
  int pairs = 0;
  bool operator<(const Frame& o) const {
    if (pairs != o.pairs) return pairs < o.pairs;
    return std::lexicographical_compare(jtw.begin(), jtw.end(), o.jtw.begin(),
                                        o.jtw.end(), [](const Letter& a,
                                                        const Letter& b) {
                                          return std::pair(a.gen, a.der) <
                                                 std::pair(b.gen, b.der);
                                        });
  }
};

Frame frame_of(const Word& w, const GPair& g) {
  Frame f;
  for (const Letter& l : w.letters) {
    if (l.gen == g.gp)
      ++f.pairs;
    else if (l.gen != g.gm)
      f.jtw.push_back(l);
  }
  return f;
}

// The undifferentiated weight (sum of the generator weights, derivatives
// ignored), doubled to stay integral. Every contraction inside a normally
// ordered product lowers it strictly, while reorderings preserve it, so the
// tail can be solved level by level along this grading.
long word_degree(const Presentation& p, const Word& w) {
  long d = 0;
  for (const Letter& l : w.letters) d += p.gen(l.gen).weight.twice();
  return d;
}

// Multisets of s bilinear factors d^j U_{0,i} with i <= index_cap and total
// derivative-plus-index budget sigma, as non-increasing (j, i) sequences.
void u_multisets(int s, int sigma, int index_cap, std::pair<int, int> cap,
                 std::vector<std::pair<int, int>>& cur,
                 std::vector<std::vector<std::pair<int, int>>>& out) {
  if (s == 0) {
    if (sigma == 0) out.push_back(cur);
    return;
  }
  for (int j = std::min(cap.first, sigma); j >= 0; --j) {
    int imax = std::min(index_cap, sigma - j);
    if (j == cap.first) imax = std::min(imax, cap.second);
    for (int i = imax; i >= 0; --i) {
      cur.push_back({j, i});
      u_multisets(s - 1, sigma - j - i, index_cap, {j, i}, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

DecouplingResult decoupling_relation(const OpeEngine& eng, int n) {
  if (n < 1) throw Error("decoupling index must be at least 1");
  const Presentation& p = eng.pres();
  GPair g = g_indices(p);
  const int m = n + 5;

  DecouplingResult res;
  res.n = n;
  res.combination = decoupling_combination(eng, n);
  res.coefficient = slice_functional(eng, res.combination, m);

  // Residual to decompose: combination - coefficient * U_{0,m}. Candidate
  // monomials enter with a fresh unknown each; solving one degree level can
  // leave some of them free, and those stay symbolic until a later level
  // constrains them (pinning them to zero early can strand a lower level
  // outside the span of its own monomials).
  Expression residual =
      res.combination - u_field(p, 0, m).scaled(Coeff(res.coefficient));

  struct Candidate {
    int id;
    std::string name;
    Expression value;
  };
  std::vector<Candidate> candidates;
  std::map<int, Coeff> solution;
  int next_id = 0;

  int guard = 0;
  while (!residual.is_zero()) {
    if (++guard > 64) throw Error("decoupling tail solve did not terminate");

    long level = 0;
    for (const auto& [w, c] : residual)
      level = std::max(level, word_degree(p, w));

    std::map<Frame, Word> frames;  // one sample word per frame
    for (const auto& [w, c] : residual)
      if (word_degree(p, w) == level) frames.emplace(frame_of(w, g), w);

    for (const auto& [frame, sample] : frames) {
      // Derivative budget left for the bilinear factors.
      HalfInt wf(0);
      for (const Letter& l : frame.jtw) wf = wf + p.weight_of(l);
      int sigma = (p.weight_of(sample) - wf).floor() - 4 * frame.pairs;

      // Bilinears below the one being resolved may appear; U_{0,m} itself
      // carries the extracted coefficient and is excluded.
      std::vector<std::vector<std::pair<int, int>>> usets;
      std::vector<std::pair<int, int>> cur;
      u_multisets(frame.pairs, sigma, m - 1, {sigma, m - 1}, cur, usets);

      for (const auto& us : usets) {
        std::vector<Factor> fs;
        for (const Letter& l : frame.jtw) fs.push_back({l.der, l.gen, -1});
        for (const auto& [j, i] : us) fs.push_back({j, -1, i});
        Expression v = monomial_value(eng, fs);
        for (const auto& [w, c] : v)
          if (word_degree(p, w) == level) {
            // Top-degree words of a product are plain concatenations, so
            // they cannot leave the frame of the factors.
            Frame fw = frame_of(w, g);
            if (fw < frame || frame < fw)
              throw Error("decoupling internal error: monomial " +
                          monomial_str(p, fs) + " escapes its word frame");
          }
        candidates.push_back({next_id, monomial_str(p, fs), std::move(v)});
        residual -= candidates.back().value.scaled(Coeff::unknown(next_id));
        ++next_id;
      }
    }

    // Frames share no top-degree words, but constraints can still couple
    // through unknowns inherited from higher levels, so the level is solved
    // as one system.
    LinearSystem sys;
    for (const auto& [w, c] : residual)
      if (word_degree(p, w) == level) sys.add(c);
    LinearSolution sol = sys.solve();
    if (!sol.consistent) {
      std::ostringstream os;
      os << "decoupling tail has no expansion over the declared monomials "
         << "(degree " << level / 2 << "): " << sol.inconsistency;
      throw Error(os.str());
    }
    for (auto& [id, v] : solution) v = v.substitute(sol.assignment);
    for (const auto& [id, v] : sol.assignment)
      if (!solution.count(id)) solution[id] = v;
    residual = residual.substitute(sol.assignment);
  }

  // Unconstrained candidates take the value zero.
  std::map<int, Coeff> zeros;
  for (const Candidate& c : candidates)
    if (!solution.count(c.id)) zeros[c.id] = Coeff(0);
  for (auto& [id, v] : solution) v = v.substitute(zeros);

  for (const Candidate& c : candidates) {
    Coeff v = solution.count(c.id) ? solution[c.id] : Coeff(0);
    if (!v.is_constant())
      throw Error("decoupling tail coefficient for " + c.name +
                  " is not determined");
    if (v.is_zero()) continue;
    res.tail.push_back({v.constant_part(), c.name, c.value});
  }

  // The defining identity, checked exactly.
  Expression check = u_field(p, 0, m).scaled(Coeff(res.coefficient)) -
                     res.combination + res.tail_value();
  if (!check.is_zero())
    throw Error("decoupling tail reconstruction failed for n=" +
                std::to_string(n));
  return res;
}

Expression commutant_correction(const OpeEngine& eng, const Expression& e) {
  const Presentation& p = eng.pres();
  if (e.is_zero()) throw Error("commutant correction of the zero element");
  Presentation::Grading gr = p.grade(e);
  if (!gr.homogeneous)
    throw Error("commutant correction requires a homogeneous element");
  int hidx = p.find_generator("J");
  if (hidx < 0) throw Error("algebra '" + p.name() + "' has no field J");

  WeightBasis basis = enumerate_basis(p, gr.weight, gr.charge);
  std::vector<Word> cand;
  for (const Word& w : basis.words)
    if (e.coeff(w).is_zero()) cand.push_back(w);

  Expression trial = e;
  for (size_t i = 0; i < cand.size(); ++i)
    trial.add(cand[i], Coeff::unknown(static_cast<int>(i)));

  Expression h = eng.gen_expr(hidx);
  LinearSystem sys;
  for (int mm = 0; mm <= gr.weight.floor(); ++mm)
    sys.add_all(eng.nth_product(h, trial, mm));

  LinearSolution sol = sys.solve();
  if (!sol.consistent)
    throw Error("no nontrivial commutant representative for " + p.show(e) +
                ": " + sol.inconsistency);

  Expression omega;
  for (size_t i = 0; i < cand.size(); ++i) {
    auto it = sol.assignment.find(static_cast<int>(i));
    if (it == sol.assignment.end()) continue;  // free coordinate, zero
    RationalFunction v = it->second.constant_part();
    if (!v.is_zero()) omega.add(cand[i], Coeff(v));
  }
  return omega;
}

CosetVirasoro coset_virasoro(const OpeEngine& eng) {
  int t = eng.pres().find_generator("T");
  if (t < 0) throw Error("algebra '" + eng.pres().name() + "' has no field T");
  Expression tt = eng.gen_expr(t);
  CosetVirasoro cv;
  cv.field = tt + commutant_correction(eng, tt);
  cv.central_charge = central_charge_of(eng, cv.field);
  return cv;
}

RationalFunction central_charge_of(const OpeEngine& eng, const Expression& t) {
  if (t.is_zero()) throw Error("not a Virasoro field: zero element");
  auto fail = [&](int pole, const std::string& what) -> Error {
    return Error("not a Virasoro field: pole " + std::to_string(pole) + " " +
                 what);
  };
  auto expect = [&](int nidx, const Expression& want,
                    const std::string& what) {
    Expression got = eng.nth_product(t, t, nidx);
    if (!(got == want)) throw fail(nidx + 1, what);
  };
  expect(0, eng.derivative(t), "must equal the derivative of the field");
  expect(1, t.scaled(Coeff(2)), "must equal twice the field");
  expect(2, Expression(), "must vanish");
  Expression top = eng.nth_product(t, t, 3);
  Word vac;
  for (const auto& [w, c] : top)
    if (!w.is_vacuum()) throw fail(4, "must be a multiple of the identity");
  Coeff half_c = top.coeff(vac);
  if (!half_c.is_constant()) throw fail(4, "is not fully determined");
  for (int nn = 4; nn <= eng.max_n(t, t); ++nn)
    expect(nn, Expression(), "must vanish");
  return half_c.constant_part() * RationalFunction(Polynomial(Rational(2)));
}

}  // namespace vopa
