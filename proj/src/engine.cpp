#include "vopa/engine.hpp"

#include <sstream>

namespace vopa {

namespace {

Word single(const Letter& l) {
  Word w;
  w.letters.push_back(l);
  return w;
}

Word cons(const Letter& l, const Word& w) {
  Word r;
  r.letters.reserve(w.size() + 1);
  r.letters.push_back(l);
  r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
  return r;
}

Word tail(const Word& w) {
  Word r;
  r.letters.assign(w.letters.begin() + 1, w.letters.end());
  return r;
}

}  // namespace

Expression OpeEngine::gen_expr(int g) const {
  (void)p_.gen(g);  // range check
  return Expression::term(single(Letter{0, g}));
}

Expression OpeEngine::gen_expr(const std::string& name) const {
  return gen_expr(p_.generator(name));
}

Expression OpeEngine::parse(const std::string& text) const {
  WickFn w = [this](const Expression& a, const Expression& b) { return wick(a, b); };
  return canonical_form(parse_expression(p_, text, w));
}

bool OpeEngine::odd_of(const Expression& e) const {
  for (const auto& [w, c] : e) return p_.odd_of(w);
  return false;
}

Expression OpeEngine::canonical_form(const Expression& e) const {
  Expression r;
  for (const auto& [w, c] : e) r += canon_word(w).scaled(c);
  return r;
}

Expression OpeEngine::canon_word(const Word& raw) const {
  if (raw.is_canonical()) return Expression::term(raw);
  return cached(canon_, raw, [&] {
    // :l1 l2 ... lp: is right-nested, so fold the letters in from the right.
    Expression acc = Expression::term(Word{});
    for (auto it = raw.letters.rbegin(); it != raw.letters.rend(); ++it)
      acc = wick_letter_expr(*it, acc);
    return acc;
  });
}

Expression OpeEngine::derivative(const Expression& e) const {
  return deriv_expr(canonical_form(e));
}

Expression OpeEngine::derivative(const Expression& e, unsigned times) const {
  Expression r = canonical_form(e);
  for (unsigned i = 0; i < times; ++i) r = deriv_expr(r);
  return r;
}

Expression OpeEngine::deriv_expr(const Expression& e) const {
  Expression r;
  for (const auto& [w, c] : e) r += deriv_word(w).scaled(c);
  return r;
}

Expression OpeEngine::deriv_expr(const Expression& e, unsigned m) const {
  Expression r = e;
  for (unsigned i = 0; i < m; ++i) r = deriv_expr(r);
  return r;
}

Expression OpeEngine::deriv_word(const Word& w) const {
  if (w.is_vacuum()) return Expression();
  return cached(deriv_, w, [&] {
    Expression acc;
    for (size_t i = 0; i < w.size(); ++i) {
      Word raised = w;
      raised.letters[i].der += 1;
      acc += canon_word(raised);
    }
    return acc;
  });
}

Expression OpeEngine::gen_pair(int a, int b, int n) const {
  if (n < 0) throw Error("internal: gen_pair with negative index");
  return cached(pair_, std::make_tuple(a, b, n), [&]() -> Expression {
    if (const auto* e = p_.entry(a, b)) {
      auto it = e->find(n);
      return it == e->end() ? Expression() : canonical_form(it->second);
    }
    if (p_.entry(b, a) != nullptr) {
      // Only the reversed orientation is stored; transport it.
      bool flip = sign_swap(p_.gen(a).odd, p_.gen(b).odd);
      int bound = p_.max_n_pair(a, b);
      Expression acc;
      for (int j = 0; n + j <= bound; ++j) {
        Expression base = gen_pair(b, a, n + j);
        if (base.is_zero()) continue;
        Rational c = Rational(((n + j + 1) % 2 == 0) ? 1 : -1) / factorial(j);
        acc += deriv_expr(base, j).scaled(Coeff(c));
      }
      if (flip) return -acc;
      return acc;
    }
    return Expression();
  });
}

Expression OpeEngine::letter_prod(const Letter& l, const Letter& m, int n) const {
  if (n < 0) throw Error("internal: letter_prod with negative index");
  if (l.der > 0) {
    if (n < l.der) return Expression();
    Rational f(1);
    for (int t = 0; t < l.der; ++t) f *= Rational(n - t);
    if (l.der % 2 != 0) f = -f;
    return letter_prod(Letter{0, l.gen}, m, n - l.der).scaled(Coeff(f));
  }
  if (m.der == 0) return gen_pair(l.gen, m.gen, n);
  return cached(letter_, std::make_tuple(l, m, n), [&] {
    Letter m1{m.der - 1, m.gen};
    Expression acc = deriv_expr(letter_prod(l, m1, n));
    if (n > 0) acc += letter_prod(l, m1, n - 1).scaled(Coeff(Rational(n)));
    return acc;
  });
}

Expression OpeEngine::wick_letter(const Letter& l, const Word& w) const {
  if (w.is_vacuum()) return Expression::term(single(l));
  if (!(w.letters.front() < l)) return Expression::term(cons(l, w));
  return cached(wickl_, std::make_pair(l, w), [&] {
    // Move l past the head with the reordering corrections
    //   x_(-1) y_(-1) t = +/- y_(-1) x_(-1) t
    //                     + sum_i (-1)^i (D^{i+1}(x_(i) y))_(-1) t / (i+1)!
    const Letter h = w.letters.front();
    const Word rest = tail(w);
    bool flip = sign_swap(p_.gen(l.gen).odd, p_.gen(h.gen).odd);
    Expression acc = wick_letter_expr(h, wick_letter(l, rest));
    if (flip) acc = -acc;
    int bound = Presentation::max_n(p_.weight_of(l) + p_.weight_of(h));
    Expression rest_e = Expression::term(rest);
    for (int i = 0; i <= bound; ++i) {
      Expression pi = letter_prod(l, h, i);
      if (pi.is_zero()) continue;
      Rational c = Rational((i % 2 == 0) ? 1 : -1) / factorial(i + 1);
      acc += wick_expr(deriv_expr(pi, i + 1), rest_e).scaled(Coeff(c));
    }
    return acc;
  });
}

Expression OpeEngine::wick_letter_expr(const Letter& l, const Expression& e) const {
  Expression r;
  for (const auto& [w, c] : e) r += wick_letter(l, w).scaled(c);
  return r;
}

Expression OpeEngine::wick_words(const Word& v, const Word& w) const {
  if (v.is_vacuum()) return Expression::term(w);
  if (w.is_vacuum()) return Expression::term(v);
  if (v.size() == 1) return wick_letter(v.letters.front(), w);
  return cached(wickw_, std::make_pair(v, w), [&] {
    const Letter l = v.letters.front();
    const Word rest = tail(v);
    bool flip = sign_swap(p_.gen(l.gen).odd, p_.odd_of(rest));
    Expression acc = wick_letter_expr(l, wick_words(rest, w));
    int jmax1 = (wt(rest) + wt(w)).floor();
    for (int j = 1; j <= jmax1; ++j) {
      Expression inner = nprod_words(rest, w, j - 1);
      if (inner.is_zero()) continue;
      acc += wick_letter_expr(Letter{l.der + j, l.gen}, inner)
                 .scaled(Coeff(Rational(1) / factorial(j)));
    }
    int jmax2 = Presentation::max_n(p_.weight_of(l) + wt(w));
    Expression rest_e = Expression::term(rest);
    for (int j = 0; j <= jmax2; ++j) {
      Expression lw = nprod_words(single(l), w, j);
      if (lw.is_zero()) continue;
      Rational c = Rational(1) / factorial(j + 1);
      if (flip) c = -c;
      acc += wick_expr(deriv_expr(rest_e, j + 1), lw).scaled(Coeff(c));
    }
    return acc;
  });
}

Expression OpeEngine::wick_expr(const Expression& a, const Expression& b) const {
  Expression r;
  for (const auto& [v, cv] : a)
    for (const auto& [w, cw] : b) r += wick_words(v, w).scaled(cv * cw);
  return r;
}

Expression OpeEngine::nprod_words(const Word& v, const Word& w, int n) const {
  if (n == -1) return wick_words(v, w);
  if (n < -1) {
    unsigned m = static_cast<unsigned>(-1 - n);
    Expression dv = deriv_expr(Expression::term(v), m);
    return wick_expr(dv, Expression::term(w)).scaled(Coeff(Rational(1) / factorial(m)));
  }
  if (v.is_vacuum() || w.is_vacuum()) return Expression();
  if ((wt(v) + wt(w) - HalfInt(n + 1)).twice() < 0) return Expression();
  return cached(nprod_, std::make_tuple(v, w, n), [&]() -> Expression {
    const Letter l = v.letters.front();
    if (v.size() == 1) {
      if (l.der > 0) {
        if (n < l.der) return Expression();
        Rational f(1);
        for (int t = 0; t < l.der; ++t) f *= Rational(n - t);
        if (l.der % 2 != 0) f = -f;
        return nprod_words(single(Letter{0, l.gen}), w, n - l.der).scaled(Coeff(f));
      }
      if (w.size() == 1) return letter_prod(l, w.letters.front(), n);
      // a_(n) (b_(-1) c) = +/- b_(-1) (a_(n) c) + sum_i C(n,i) (a_(i) b)_(n-1-i) c
      const Letter m = w.letters.front();
      const Word rest = tail(w);
      bool flip = sign_swap(p_.gen(l.gen).odd, p_.gen(m.gen).odd);
      Expression inner = nprod_words(v, rest, n);
      Expression acc = wick_letter_expr(m, inner);
      if (flip) acc = -acc;
      int ibound = Presentation::max_n(p_.weight_of(l) + p_.weight_of(m));
      if (ibound > n) ibound = n;
      Expression rest_e = Expression::term(rest);
      for (int i = 0; i <= ibound; ++i) {
        Expression pi = letter_prod(l, m, i);
        if (pi.is_zero()) continue;
        acc += nprod_expr(pi, rest_e, n - 1 - i).scaled(Coeff(binomial(n, i)));
      }
      return acc;
    }
    // (a_(-1) b)_(n) c = sum_j a_(-1-j) (b_(n+j) c) +/- sum_j b_(n-1-j) (a_(j) c)
    const Word rest = tail(v);
    bool flip = sign_swap(p_.gen(l.gen).odd, p_.odd_of(rest));
    Expression acc = wick_letter_expr(l, nprod_words(rest, w, n));
    int jmax1 = Presentation::max_n(wt(rest) + wt(w));
    for (int j = 1; n + j <= jmax1; ++j) {
      Expression inner = nprod_words(rest, w, n + j);
      if (inner.is_zero()) continue;
      acc += wick_letter_expr(Letter{l.der + j, l.gen}, inner)
                 .scaled(Coeff(Rational(1) / factorial(j)));
    }
    int jmax2 = Presentation::max_n(p_.weight_of(l) + wt(w));
    Expression rest_e = Expression::term(rest);
    for (int j = 0; j <= jmax2; ++j) {
      Expression lw = nprod_words(single(l), w, j);
      if (lw.is_zero()) continue;
      Expression piece = nprod_expr(rest_e, lw, n - 1 - j);
      if (flip) piece = -piece;
      acc += piece;
    }
    return acc;
  });
}

Expression OpeEngine::nprod_expr(const Expression& a, const Expression& b, int n) const {
  Expression r;
  for (const auto& [v, cv] : a)
    for (const auto& [w, cw] : b) r += nprod_words(v, w, n).scaled(cv * cw);
  return r;
}

Expression OpeEngine::nth_product(const Expression& a, const Expression& b, int n) const {
  return nprod_expr(canonical_form(a), canonical_form(b), n);
}

Expression OpeEngine::wick(const Expression& a, const Expression& b) const {
  return wick_expr(canonical_form(a), canonical_form(b));
}

int OpeEngine::max_n(const Expression& a, const Expression& b) const {
  int best = -1;
  for (const auto& [v, cv] : a)
    for (const auto& [w, cw] : b) {
      int m = Presentation::max_n(wt(v) + wt(w));
      if (m > best) best = m;
    }
  return best;
}

OpeEngine::SingularPart OpeEngine::ope_singular(const Expression& a, const Expression& b) const {
  Expression ca = canonical_form(a), cb = canonical_form(b);
  SingularPart sp;
  for (int n = max_n(ca, cb); n >= 0; --n) {
    Expression v = nprod_expr(ca, cb, n);
    if (!v.is_zero()) sp.terms.push_back({n, std::move(v)});
  }
  return sp;
}

Expression OpeEngine::skew_transport(const Expression& a, const Expression& b, int n) const {
  Expression ca = canonical_form(a), cb = canonical_form(b);
  bool flip = odd_of(ca) && odd_of(cb);
  int bound = max_n(ca, cb);
  Expression acc;
  for (int j = 0; n + j <= bound; ++j) {
    Expression base = nprod_expr(ca, cb, n + j);
    if (base.is_zero()) continue;
    Rational c = Rational(((n + j + 1) % 2 == 0) ? 1 : -1) / factorial(j);
    acc += deriv_expr(base, j).scaled(Coeff(c));
  }
  if (flip) return -acc;
  return acc;
}

Expression OpeEngine::jacobi_defect(const Expression& a, const Expression& b,
                                    const Expression& c, int r, int s) const {
  if (r < 0) throw Error("jacobi_defect needs r >= 0");
  Expression ca = canonical_form(a), cb = canonical_form(b), cc = canonical_form(c);
  bool flip = odd_of(ca) && odd_of(cb);
  Expression d = nprod_expr(ca, nprod_expr(cb, cc, s), r);
  Expression swapped = nprod_expr(cb, nprod_expr(ca, cc, r), s);
  if (flip)
    d += swapped;
  else
    d -= swapped;
  int ibound = max_n(ca, cb);
  if (ibound > r) ibound = r;
  for (int i = 0; i <= ibound; ++i) {
    Expression ab = nprod_expr(ca, cb, i);
    if (ab.is_zero()) continue;
    d -= nprod_expr(ab, cc, r + s - i).scaled(Coeff(binomial(r, i)));
  }
  return d;
}

std::string show_singular(const Presentation& p, const OpeEngine::SingularPart& sp) {
  if (sp.regular()) return "regular";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : sp.terms) {
    if (!first) os << "\n";
    first = false;
    os << (t.n + 1) << ": " << p.show(t.value);
  }
  return os.str();
}

std::vector<std::pair<int, int>> jacobi_window(const Presentation& p, int a, int b, int c) {
  int nab = p.max_n_pair(a, b) + 1, nac = p.max_n_pair(a, c) + 1, nbc = p.max_n_pair(b, c) + 1;
  if (nab < 0) nab = 0;
  if (nac < 0) nac = 0;
  long cut2 = (p.gen(a).weight + p.gen(b).weight + p.gen(c).weight).twice() - 4;
  std::vector<std::pair<int, int>> ws;
  for (int r = 0; r <= nab + nac; ++r)
    for (int s = 0; s <= nbc; ++s)
      if (2L * (r + s) <= cut2) ws.emplace_back(r, s);
  return ws;
}

}  // namespace vopa
