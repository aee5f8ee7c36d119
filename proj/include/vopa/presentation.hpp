#pragma once

// A presentation is a finite strong generating set together with the stored
// singular OPE data: for each stored ordered pair (a, b) the products a_(n)b
// for n >= 0. Entries are kept exactly as given (possibly not normally
// ordered in canonical form); the OPE engine canonicalizes them on demand.
// Entries may carry named unknowns introduced by ansatz rows; such a
// presentation is the input of the Jacobi constraint solver.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vopa/expr.hpp"

namespace vopa {

struct GeneratorInfo {
  std::string name;
  HalfInt weight;
  bool odd = false;
  int charge = 0;
  bool virasoro = false;
};

class Presentation {
 public:
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::string& param() const { return param_; }
  void set_param(std::string p) { param_ = std::move(p); }

  // Rejects duplicate names and non-positive weights (the word enumeration
  // and the grading cutoffs rely on strictly positive generator weights).
  int add_generator(const GeneratorInfo& g);
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const GeneratorInfo& gen(int i) const { return gens_.at(i); }
  int find_generator(const std::string& name) const;
  int generator(const std::string& name) const;  // throws on unknown name
  std::optional<int> virasoro_index() const;

  // Raw table access. n is the product index: the value of a_(n)b, i.e. the
  // coefficient of (z-w)^(-n-1). Duplicate (a, b, n) entries are rejected.
  void add_entry(int a, int b, int n, const Expression& value);
  const std::map<int, Expression>* entry(int a, int b) const;
  std::vector<std::pair<int, int>> stored_pairs() const;

  int add_unknown(const std::string& name);
  int find_unknown(const std::string& name) const;
  const std::string& unknown_name(int id) const { return unknowns_.at(id); }
  int num_unknowns() const { return static_cast<int>(unknowns_.size()); }
  // Unknowns still appearing in some entry (in id order).
  std::vector<int> active_unknowns() const;

  HalfInt weight_of(const Letter& l) const;
  HalfInt weight_of(const Word& w) const;
  int charge_of(const Word& w) const;
  bool odd_of(const Word& w) const;
  // Largest n for which a_(n)b can be nonzero on weight grounds alone when
  // wt a + wt b = s; products above it vanish identically.
  static int max_n(HalfInt s) { return (s - HalfInt(1)).floor(); }
  int max_n_pair(int a, int b) const { return max_n(gens_.at(a).weight + gens_.at(b).weight); }

  struct Grading {
    bool homogeneous = true;
    HalfInt weight;
    int charge = 0;
  };
  Grading grade(const Expression& e) const;

  // Replaces unknowns throughout the table; solved unknowns disappear.
  Presentation substituted(const std::map<int, Coeff>& assignment) const;
  // Applies f to every scalar coefficient (e.g. specialization at k = k0).
  Presentation mapped(const std::function<RationalFunction(const RationalFunction&)>& f) const;

  std::string show(const Word& w) const;
  std::string show(const Expression& e) const;
  std::string show(const Coeff& c) const;

 private:
  std::string name_, param_ = "k";
  std::vector<GeneratorInfo> gens_;
  std::map<std::string, int> gen_index_;
  std::map<std::pair<int, int>, std::map<int, Expression>> entries_;
  std::vector<std::string> unknowns_;
  std::map<std::string, int> unknown_index_;
};

// Callback used to combine normally ordered groups whose left factor is
// composite; parsing table entries passes none and rejects such input.
using WickFn = std::function<Expression(const Expression&, const Expression&)>;

// Parses the expression syntax:
//   expr   := term (('+' | '-') term)*
//   term   := item (('*' | '/') item)*
//   item   := INT | PARAM | UNKNOWN | GEN | 'D' ['^' INT] '(' expr ')'
//           | ':' factor factor+ ':' | '(' expr ')' | item '^' INT
// Scalar values are sums of multiples of the vacuum; multiplying two field
// values without normal ordering is an error.
Expression parse_expression(const Presentation& p, const std::string& text,
                            const WickFn& wick = {});

Presentation load_presentation_text(const std::string& text, const std::string& origin = "input");
Presentation load_presentation_file(const std::string& path);

// Stores a_(n)b as a fresh unknown per basis word of the implied weight and
// charge; nothing is stored when that graded slice is zero.
void add_ansatz_entry(Presentation& p, int a, int b, int n);

std::vector<std::string> builtin_names();
bool is_builtin(const std::string& name);
// heisenberg: one weight-1 field J with J_(1)J = k.
// virasoro:   one weight-2 field T with central charge k.
// w2_4:       the rank-two W-algebra with generators J, T, W, G+, G- of
//             weights 1, 2, 3, 2, 2; the W W singular part below the top
//             pole is stored as an ansatz to be solved.
Presentation builtin(const std::string& name);

// Solver fixture: the same generators as w2_4 with only the universal rows
// fixed (Virasoro action, J-charges, J-level, top G+ G- pole) and named
// unknowns a1..a10 for the lower G+ G- poles; W G+/-, W W rows are ansatz.
Presentation w24_jacobi_ansatz();

struct ValidationReport {
  std::vector<std::string> problems;   // hard violations
  int unresolved_constraints = 0;      // constraints still involving unknowns
  bool clean() const { return problems.empty(); }
};
// Checks weight/charge homogeneity of every entry, the Virasoro action on
// every generator, and skew-symmetry consistency of self-pairs and of any
// redundantly stored orientation pair.
ValidationReport validate_presentation(const Presentation& p);

}  // namespace vopa
