#pragma once

// OPE calculus over a fixed presentation. All operations are exact over the
// coefficient field (affine unknowns allowed) and reduce every state to a
// combination of canonical normally ordered words.
//
// The rewriting rules, valid for all integers n unless stated:
//   (Da)_(n) b      = -n a_(n-1) b
//   a_(n) Db        = D(a_(n) b) + n a_(n-1) b
//   a_(-m-1) b      = (1/m!) (D^m a)_(-1) b                      (m >= 0)
//   b_(n) a         = (-1)^{|a||b|} sum_{j>=0} (-1)^{n+j+1} D^j (a_(n+j) b) / j!
//   a_(r) b_(-1) c  = (-1)^{|a||b|} b_(-1) a_(r) c
//                     + sum_{i=0..r} C(r,i) (a_(i) b)_(r-1-i) c  (r >= 0)
//   (a_(-1) b)_(n) c = sum_{j>=0} a_(-1-j) (b_(n+j) c)
//                     + (-1)^{|a||b|} sum_{j>=0} b_(n-1-j) (a_(j) c)
//   a_(-1) b        = (-1)^{|a||b|} b_(-1) a
//                     + sum_{i>=0} (-1)^i D^{i+1}(a_(i) b) / (i+1)!
// together with the grading cutoff a_(n) b = 0 when
// wt a + wt b - n - 1 < 0 for homogeneous arguments.
//
// Engines are safe to query concurrently; the presentation is immutable and
// the internal product caches are lock-protected.

#include <mutex>

#include "vopa/presentation.hpp"

namespace vopa {

class OpeEngine {
 public:
  explicit OpeEngine(Presentation p) : p_(std::move(p)) {}
  const Presentation& pres() const { return p_; }

  Expression gen_expr(int g) const;
  Expression gen_expr(const std::string& name) const;
  // Parses and canonicalizes, with nested normal orderings resolved through
  // the engine's own Wick product.
  Expression parse(const std::string& text) const;

  Expression canonical_form(const Expression& e) const;
  Expression derivative(const Expression& e) const;
  Expression derivative(const Expression& e, unsigned times) const;
  Expression nth_product(const Expression& a, const Expression& b, int n) const;
  Expression wick(const Expression& a, const Expression& b) const;

  struct SingularTerm {
    int n;  // product index; pole order is n + 1
    Expression value;
  };
  struct SingularPart {
    std::vector<SingularTerm> terms;  // descending in n, zero values omitted
    bool regular() const { return terms.empty(); }
  };
  SingularPart ope_singular(const Expression& a, const Expression& b) const;

  // b_(n)a computed from the products a_(m)b via skew symmetry.
  Expression skew_transport(const Expression& a, const Expression& b, int n) const;

  // a_(r)(b_(s)c) - (-1)^{|a||b|} b_(s)(a_(r)c)
  //   - sum_{i=0..r} C(r,i) (a_(i)b)_(r+s-i)c, identically zero in a vertex
  // algebra; a nonzero value measures failure of the Jacobi identity.
  Expression jacobi_defect(const Expression& a, const Expression& b, const Expression& c, int r,
                           int s) const;

  // Largest n for which a_(n)b can be nonzero on weight grounds (-1 when
  // either side is zero).
  int max_n(const Expression& a, const Expression& b) const;

 private:
  Expression canon_word(const Word& raw) const;
  Expression deriv_word(const Word& w) const;
  Expression deriv_expr(const Expression& e) const;
  Expression deriv_expr(const Expression& e, unsigned m) const;
  Expression gen_pair(int a, int b, int n) const;
  Expression letter_prod(const Letter& l, const Letter& m, int n) const;
  Expression wick_letter(const Letter& l, const Word& w) const;
  Expression wick_letter_expr(const Letter& l, const Expression& e) const;
  Expression wick_words(const Word& v, const Word& w) const;
  Expression wick_expr(const Expression& a, const Expression& b) const;
  Expression nprod_words(const Word& v, const Word& w, int n) const;
  Expression nprod_expr(const Expression& a, const Expression& b, int n) const;

  HalfInt wt(const Word& w) const { return p_.weight_of(w); }
  bool sign_swap(bool odd1, bool odd2) const { return odd1 && odd2; }
  bool odd_of(const Expression& e) const;

  template <class Map, class Key, class Fn>
  Expression cached(Map& map, const Key& key, Fn&& compute) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = map.find(key);
      if (it != map.end()) return it->second;
    }
    Expression v = compute();
    std::lock_guard<std::mutex> lk(mu_);
    return map.emplace(key, std::move(v)).first->second;
  }

  Presentation p_;
  mutable std::mutex mu_;
  mutable std::map<Word, Expression> canon_;
  mutable std::map<Word, Expression> deriv_;
  mutable std::map<std::tuple<int, int, int>, Expression> pair_;
  mutable std::map<std::tuple<Letter, Letter, int>, Expression> letter_;
  mutable std::map<std::pair<Letter, Word>, Expression> wickl_;
  mutable std::map<std::pair<Word, Word>, Expression> wickw_;
  mutable std::map<std::tuple<Word, Word, int>, Expression> nprod_;
};

std::string show_singular(const Presentation& p, const OpeEngine::SingularPart& sp);

// All (r, s) windows that have to be checked for the triple of generators
// (a, b, c): r up to the locality bound of (a,b) plus that of (a,c), s up to
// the locality bound of (b,c), intersected with the grading cutoff
// wt a + wt b + wt c - r - s - 2 >= 0.
std::vector<std::pair<int, int>> jacobi_window(const Presentation& p, int a, int b, int c);

}  // namespace vopa
