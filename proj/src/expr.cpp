#include "vopa/expr.hpp"

#include <algorithm>
#include <sstream>

namespace vopa {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(tw_ / 2);
  return std::to_string(tw_) + "/2";
}

bool Word::is_canonical() const {
  return std::is_sorted(letters.begin(), letters.end());
}

int Word::total_der() const {
  int d = 0;
  for (const auto& l : letters) d += l.der;
  return d;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                b.letters.begin(), b.letters.end());
}

Word make_word(std::initializer_list<Letter> ls) {
  Word w;
  w.letters.assign(ls.begin(), ls.end());
  return w;
}

bool basis_less(const Word& a, const Word& b) {
  int da = a.total_der(), db = b.total_der();
  if (da != db) return da < db;
  // Larger letter sequence first within a derivative level.
  auto c = std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                  b.letters.begin(), b.letters.end());
  if (c != std::strong_ordering::equal) return c > 0;
  return a.size() < b.size();
}

Coeff Coeff::unknown(int id) {
  Coeff c;
  c.lin_[id] = RationalFunction(1);
  return c;
}

void Coeff::set_lin(int id, const RationalFunction& v) {
  if (v.is_zero())
    lin_.erase(id);
  else
    lin_[id] = v;
}

Coeff Coeff::operator-() const {
  Coeff r;
  r.c0_ = -c0_;
  for (const auto& [id, v] : lin_) r.lin_[id] = -v;
  return r;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  c0_ += o.c0_;
  for (const auto& [id, v] : o.lin_) {
    auto it = lin_.find(id);
    set_lin(id, it == lin_.end() ? v : it->second + v);
  }
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  c0_ -= o.c0_;
  for (const auto& [id, v] : o.lin_) {
    auto it = lin_.find(id);
    set_lin(id, it == lin_.end() ? -v : it->second - v);
  }
  return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  if (!a.is_constant() && !b.is_constant()) throw Error("nonlinear in unknowns");
  const Coeff& affine = a.is_constant() ? b : a;
  const RationalFunction& scalar = a.is_constant() ? a.c0_ : b.c0_;
  Coeff r;
  r.c0_ = affine.c0_ * scalar;
  if (!scalar.is_zero())
    for (const auto& [id, v] : affine.lin_) r.lin_[id] = v * scalar;
  return r;
}

Coeff Coeff::substitute(const std::map<int, Coeff>& assignment) const {
  Coeff r(c0_);
  for (const auto& [id, v] : lin_) {
    auto it = assignment.find(id);
    if (it == assignment.end()) {
      Coeff u = Coeff::unknown(id);
      r += u * Coeff(v);
    } else {
      r += it->second * Coeff(v);
    }
  }
  return r;
}

Coeff Coeff::map_coeffs(const std::function<RationalFunction(const RationalFunction&)>& f) const {
  Coeff r(f(c0_));
  for (const auto& [id, v] : lin_) r.set_lin(id, f(v));
  return r;
}

std::string Coeff::str(const std::function<std::string(int)>& unknown_name) const {
  if (is_constant()) return c0_.str();
  std::ostringstream os;
  bool first = true;
  if (!c0_.is_zero()) {
    os << c0_.str();
    first = false;
  }
  for (const auto& [id, v] : lin_) {
    std::string vs = v.str();
    bool neg = !vs.empty() && vs[0] == '-';
    if (neg) vs = (-v).str();
    if (first) {
      first = false;
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (vs == "1")
      os << unknown_name(id);
    else
      os << (vs.find(' ') != std::string::npos ? "(" + vs + ")" : vs) << "*" << unknown_name(id);
  }
  return os.str();
}

Expression Expression::vacuum(const Coeff& c) { return term(Word{}, c); }

Expression Expression::term(const Word& w, const Coeff& c) {
  Expression e;
  e.add(w, c);
  return e;
}

Coeff Expression::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? Coeff() : it->second;
}

void Expression::add(const Word& w, const Coeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Expression& Expression::operator+=(const Expression& o) {
  for (const auto& [w, c] : o.t_) add(w, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  for (const auto& [w, c] : o.t_) add(w, -c);
  return *this;
}

Expression Expression::operator-() const {
  Expression r;
  for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

Expression Expression::scaled(const Coeff& c) const {
  Expression r;
  for (const auto& [w, cc] : t_) r.add(w, cc * c);
  return r;
}

Expression Expression::substitute(const std::map<int, Coeff>& assignment) const {
  Expression r;
  for (const auto& [w, c] : t_) r.add(w, c.substitute(assignment));
  return r;
}

Expression Expression::map_coeffs(
    const std::function<RationalFunction(const RationalFunction&)>& f) const {
  Expression r;
  for (const auto& [w, c] : t_) r.add(w, c.map_coeffs(f));
  return r;
}

std::vector<Word> Expression::words_in_basis_order() const {
  std::vector<Word> ws;
  ws.reserve(t_.size());
  for (const auto& [w, c] : t_) ws.push_back(w);
  std::sort(ws.begin(), ws.end(), basis_less);
  return ws;
}

}  // namespace vopa
