#include "vopa/presentation.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "vopa/basis.hpp"
#include "vopa/engine.hpp"

namespace vopa {

int Presentation::add_generator(const GeneratorInfo& g) {
  if (gen_index_.count(g.name)) throw Error("duplicate generator '" + g.name + "'");
  if (g.name.empty()) throw Error("generator with empty name");
  if (g.weight.twice() <= 0)
    throw Error("generator '" + g.name + "' must have positive weight");
  int idx = static_cast<int>(gens_.size());
  gens_.push_back(g);
  gen_index_[g.name] = idx;
  return idx;
}

int Presentation::find_generator(const std::string& name) const {
  auto it = gen_index_.find(name);
  return it == gen_index_.end() ? -1 : it->second;
}

int Presentation::generator(const std::string& name) const {
  int i = find_generator(name);
  if (i < 0) throw Error("unknown generator '" + name + "'");
  return i;
}

std::optional<int> Presentation::virasoro_index() const {
  for (int i = 0; i < num_generators(); ++i)
    if (gens_[i].virasoro) return i;
  return std::nullopt;
}

void Presentation::add_entry(int a, int b, int n, const Expression& value) {
  (void)gen(a);
  (void)gen(b);
  if (n < 0) throw Error("OPE entry with negative product index");
  auto& poles = entries_[{a, b}];
  if (poles.count(n))
    throw Error("duplicate pole " + std::to_string(n + 1) + " for pair (" + gens_[a].name + ", " +
                gens_[b].name + ")");
  if (!value.is_zero()) poles[n] = value;
}

const std::map<int, Expression>* Presentation::entry(int a, int b) const {
  auto it = entries_.find({a, b});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<int, int>> Presentation::stored_pairs() const {
  std::vector<std::pair<int, int>> ps;
  ps.reserve(entries_.size());
  for (const auto& [key, poles] : entries_) ps.push_back(key);
  return ps;
}

int Presentation::add_unknown(const std::string& name) {
  if (unknown_index_.count(name)) throw Error("duplicate unknown '" + name + "'");
  int id = static_cast<int>(unknowns_.size());
  unknowns_.push_back(name);
  unknown_index_[name] = id;
  return id;
}

int Presentation::find_unknown(const std::string& name) const {
  auto it = unknown_index_.find(name);
  return it == unknown_index_.end() ? -1 : it->second;
}

std::vector<int> Presentation::active_unknowns() const {
  std::set<int> ids;
  for (const auto& [key, poles] : entries_)
    for (const auto& [n, value] : poles)
      for (const auto& [w, c] : value)
        for (const auto& [id, v] : c.linear_part()) ids.insert(id);
  return std::vector<int>(ids.begin(), ids.end());
}

HalfInt Presentation::weight_of(const Letter& l) const {
  return gens_.at(l.gen).weight + HalfInt(l.der);
}

HalfInt Presentation::weight_of(const Word& w) const {
  HalfInt s;
  for (const auto& l : w.letters) s += weight_of(l);
  return s;
}

int Presentation::charge_of(const Word& w) const {
  int q = 0;
  for (const auto& l : w.letters) q += gens_.at(l.gen).charge;
  return q;
}

bool Presentation::odd_of(const Word& w) const {
  bool odd = false;
  for (const auto& l : w.letters) odd ^= gens_.at(l.gen).odd;
  return odd;
}

Presentation::Grading Presentation::grade(const Expression& e) const {
  Grading g;
  bool first = true;
  for (const auto& [w, c] : e) {
    HalfInt wt = weight_of(w);
    int q = charge_of(w);
    if (first) {
      g.weight = wt;
      g.charge = q;
      first = false;
    } else if (wt != g.weight || q != g.charge) {
      g.homogeneous = false;
    }
  }
  return g;
}

Presentation Presentation::substituted(const std::map<int, Coeff>& assignment) const {
  Presentation q(*this);
  for (auto& [key, poles] : q.entries_) {
    for (auto it = poles.begin(); it != poles.end();) {
      it->second = it->second.substitute(assignment);
      it = it->second.is_zero() ? poles.erase(it) : std::next(it);
    }
  }
  return q;
}

Presentation Presentation::mapped(
    const std::function<RationalFunction(const RationalFunction&)>& f) const {
  Presentation q(*this);
  for (auto& [key, poles] : q.entries_) {
    for (auto it = poles.begin(); it != poles.end();) {
      it->second = it->second.map_coeffs(f);
      it = it->second.is_zero() ? poles.erase(it) : std::next(it);
    }
  }
  return q;
}

std::string Presentation::show(const Word& w) const {
  if (w.is_vacuum()) return "1";
  std::ostringstream os;
  if (w.size() > 1) os << ":";
  bool first = true;
  for (const auto& l : w.letters) {
    if (!first) os << " ";
    first = false;
    if (l.der == 0)
      os << gens_.at(l.gen).name;
    else if (l.der == 1)
      os << "D(" << gens_.at(l.gen).name << ")";
    else
      os << "D^" << l.der << "(" << gens_.at(l.gen).name << ")";
  }
  if (w.size() > 1) os << ":";
  return os.str();
}

std::string Presentation::show(const Coeff& c) const {
  return c.str([this](int id) { return unknown_name(id); });
}

namespace {

// True when the string has + or - (as binary operators) at parenthesis
// depth zero, in which case it needs wrapping before '*'.
bool needs_paren(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && i > 0) return true;
  }
  return false;
}

}  // namespace

std::string Presentation::show(const Expression& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Word& w : e.words_in_basis_order()) {
    Coeff c = e.coeff(w);
    std::string cs = show(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = show(-c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (w.is_vacuum()) {
      os << (needs_paren(cs) ? "(" + cs + ")" : cs);
    } else if (cs == "1") {
      os << show(w);
    } else {
      os << (needs_paren(cs) ? "(" + cs + ")" : cs) << "*" << show(w);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class ExprParser {
 public:
  ExprParser(const Presentation& p, const std::string& s, const WickFn& wick)
      : p_(p), wick_(wick), s_(s) {}

  Expression run() {
    Expression e = expr();
    if (peek() != '\0') fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse error at position " + std::to_string(pos_) + " in '" + s_ + "': " + msg);
  }

  char peek() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool vacuum_only(const Expression& e) {
    for (const auto& [w, c] : e)
      if (!w.is_vacuum()) return false;
    return true;
  }

  Coeff vacuum_coeff(const Expression& e) const { return e.coeff(Word{}); }

  Expression expr() {
    Expression acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Expression term() {
    Expression acc = item();
    for (;;) {
      if (eat('*')) {
        Expression rhs = item();
        if (vacuum_only(acc))
          acc = rhs.scaled(vacuum_coeff(acc));
        else if (vacuum_only(rhs))
          acc = acc.scaled(vacuum_coeff(rhs));
        else
          fail("product of fields requires normal ordering ':a b:'");
      } else if (eat('/')) {
        Expression rhs = item();
        if (!vacuum_only(rhs)) fail("cannot divide by a field");
        Coeff d = vacuum_coeff(rhs);
        if (!d.is_constant()) fail("cannot divide by an unknown-dependent coefficient");
        acc = acc.scaled(Coeff(RationalFunction(1) / d.constant_part()));
      } else {
        return acc;
      }
    }
  }

  Expression item() {
    if (eat('-')) return -item();
    if (eat('+')) return item();
    Expression base = atom();
    while (peek() == '^') {
      ++pos_;
      long e = integer();
      if (e < 0) fail("negative exponent");
      if (!vacuum_only(base)) fail("exponent on a field; use normal ordering");
      Coeff c = vacuum_coeff(base);
      Coeff acc(1);
      for (long i = 0; i < e; ++i) acc = acc * c;
      base = Expression::vacuum(acc);
    }
    return base;
  }

  Expression atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == ':') {
      ++pos_;
      return group();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expression::vacuum(Coeff(number()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    fail("expected value");
  }

  Expression group() {
    std::vector<Expression> factors;
    while (peek() != ':') {
      if (peek() == '\0') fail("unterminated normal ordering");
      factors.push_back(atom());
    }
    ++pos_;
    if (factors.size() < 2) fail("normal ordering needs at least two factors");
    Expression acc = factors.back();
    for (size_t i = factors.size() - 1; i-- > 0;) acc = ordered(factors[i], acc);
    return acc;
  }

  // :l r: with right-nesting. When every term of l is a single letter (or
  // vacuum) the word can be assembled directly; composite left factors need
  // the engine's Wick product.
  Expression ordered(const Expression& l, const Expression& r) {
    bool flat = true;
    for (const auto& [w, c] : l)
      if (w.size() > 1) flat = false;
    if (!flat) {
      if (wick_) return wick_(l, r);
      fail("composite left factor in normal ordering is not allowed here");
    }
    Expression acc;
    for (const auto& [lw, lc] : l) {
      if (lw.is_vacuum()) {
        acc += r.scaled(lc);
        continue;
      }
      for (const auto& [rw, rc] : r) {
        Word w;
        w.letters.reserve(1 + rw.size());
        w.letters.push_back(lw.letters.front());
        w.letters.insert(w.letters.end(), rw.letters.begin(), rw.letters.end());
        acc.add(w, lc * rc);
      }
    }
    return acc;
  }

  Expression ident() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "D" && (pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == '^' ||
                                             std::isspace(static_cast<unsigned char>(s_[pos_])) ||
                                             std::isalpha(static_cast<unsigned char>(s_[pos_])) ||
                                             s_[pos_] == ':')))
      return deriv();
    // Generator names may end in '+' or '-'; prefer the longest match.
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      std::string ext = name + s_[pos_];
      if (p_.find_generator(ext) >= 0) {
        ++pos_;
        name = ext;
      }
    }
    int g = p_.find_generator(name);
    if (g >= 0) {
      Word w;
      w.letters.push_back(Letter{0, g});
      return Expression::term(w);
    }
    if (name == p_.param())
      return Expression::vacuum(Coeff(RationalFunction::variable()));
    int u = p_.find_unknown(name);
    if (u >= 0) return Expression::vacuum(Coeff::unknown(u));
    fail("unknown symbol '" + name + "'");
  }

  Expression deriv() {
    long m = 1;
    if (peek() == '^') {
      ++pos_;
      m = integer();
      if (m < 0) fail("negative derivative order");
    }
    Expression arg;
    if (peek() == '(') {
      ++pos_;
      arg = expr();
      if (!eat(')')) fail("expected ')'");
    } else {
      arg = atom();
    }
    for (long i = 0; i < m; ++i) arg = raw_derivative(arg);
    return arg;
  }

  // Leibniz raise; output words may be non-canonical, canonicalization is
  // the engine's job.
  static Expression raw_derivative(const Expression& e) {
    Expression acc;
    for (const auto& [w, c] : e) {
      for (size_t i = 0; i < w.size(); ++i) {
        Word raised = w;
        raised.letters[i].der += 1;
        acc.add(raised, c);
      }
    }
    return acc;
  }

  long integer() {
    size_t start = pos_;
    (void)peek();
    start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Rational number() {
    (void)peek();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Rational::parse(s_.substr(start, pos_ - start));
  }

  const Presentation& p_;
  const WickFn& wick_;
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(const Presentation& p, const std::string& text, const WickFn& wick) {
  return ExprParser(p, text, wick).run();
}

// ---------------------------------------------------------------------------
// Presentation file format

void add_ansatz_entry(Presentation& p, int a, int b, int n) {
  HalfInt w = p.gen(a).weight + p.gen(b).weight - HalfInt(n + 1);
  int q = p.gen(a).charge + p.gen(b).charge;
  WeightBasis basis = enumerate_basis(p, w, q);
  if (basis.dim() == 0) return;
  Expression e;
  for (int i = 0; i < basis.dim(); ++i) {
    std::string uname = "u" + std::to_string(a) + "_" + std::to_string(b) + "_p" +
                        std::to_string(n + 1) + "_" + std::to_string(i);
    e.add(basis.words[i], Coeff::unknown(p.add_unknown(uname)));
  }
  p.add_entry(a, b, n, e);
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

HalfInt parse_halfint(const std::string& text) {
  Rational r = Rational::parse(text);
  Rational twice = r * Rational(2);
  if (!twice.is_integer()) throw Error("'" + text + "' is not a half integer");
  return HalfInt::from_twice(twice.num().get_si());
}

}  // namespace

Presentation load_presentation_text(const std::string& text, const std::string& origin) {
  Presentation p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool in_block = false;
  int cur_a = -1, cur_b = -1;
  std::set<std::pair<int, int>> seen;  // unordered pair keys
  std::set<int> seen_poles;

  auto err = [&](const std::string& msg) -> void {
    throw Error(origin + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (in_block) {
      if (line == "end") {
        in_block = false;
        continue;
      }
      size_t colon = line.find(':');
      size_t digits = 0;
      while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits])))
        ++digits;
      if (digits == 0 || colon == std::string::npos ||
          trim(line.substr(0, colon)).size() != digits)
        err("expected 'POLE: EXPRESSION' or 'end'");
      long pole = std::stol(line.substr(0, digits));
      if (pole < 1) err("pole order must be at least 1");
      int n = static_cast<int>(pole) - 1;
      if (!seen_poles.insert(n).second) err("duplicate pole " + std::to_string(pole));
      std::string rest = trim(line.substr(colon + 1));
      if (rest.empty()) err("missing expression");
      if (rest[0] == '?') {
        if (rest.rfind("?ansatz", 0) != 0) err("unknown directive '" + rest + "'");
        std::string args = trim(rest.substr(7));
        if (args.size() < 2 || args.front() != '(' || args.back() != ')')
          err("expected ?ansatz(weight=W, charge=C)");
        args = args.substr(1, args.size() - 2);
        std::optional<HalfInt> w;
        std::optional<int> q;
        std::istringstream as(args);
        std::string part;
        while (std::getline(as, part, ',')) {
          part = trim(part);
          auto eq = part.find('=');
          if (eq == std::string::npos) err("expected key=value in ?ansatz");
          std::string key = trim(part.substr(0, eq)), val = trim(part.substr(eq + 1));
          try {
            if (key == "weight")
              w = parse_halfint(val);
            else if (key == "charge")
              q = static_cast<int>(std::stol(val));
            else
              err("unknown ?ansatz key '" + key + "'");
          } catch (const Error& e) {
            err(e.what());
          }
        }
        if (!w || !q) err("?ansatz needs both weight and charge");
        HalfInt expect_w = p.gen(cur_a).weight + p.gen(cur_b).weight - HalfInt(n + 1);
        int expect_q = p.gen(cur_a).charge + p.gen(cur_b).charge;
        if (*w != expect_w)
          err("ansatz weight " + w->str() + " does not match pole " + std::to_string(pole) +
              " (expected " + expect_w.str() + ")");
        if (*q != expect_q)
          err("ansatz charge " + std::to_string(*q) + " does not match the pair (expected " +
              std::to_string(expect_q) + ")");
        add_ansatz_entry(p, cur_a, cur_b, n);
      } else {
        try {
          Expression v = parse_expression(p, rest);
          if (!v.is_zero()) p.add_entry(cur_a, cur_b, n, v);
        } catch (const Error& e) {
          err(e.what());
        }
      }
      continue;
    }

    std::vector<std::string> tok = split_ws(line);
    if (tok[0] == "algebra") {
      if (tok.size() != 2) err("expected 'algebra NAME'");
      p.set_name(tok[1]);
    } else if (tok[0] == "param") {
      if (tok.size() != 2) err("expected 'param NAME'");
      p.set_param(tok[1]);
    } else if (tok[0] == "generator") {
      if (tok.size() < 2) err("expected 'generator NAME ...'");
      GeneratorInfo g;
      g.name = tok[1];
      bool have_weight = false;
      for (size_t i = 2; i < tok.size(); ++i) {
        try {
          if (tok[i] == "weight" && i + 1 < tok.size()) {
            g.weight = parse_halfint(tok[++i]);
            have_weight = true;
          } else if (tok[i] == "parity" && i + 1 < tok.size()) {
            const std::string& v = tok[++i];
            if (v == "even")
              g.odd = false;
            else if (v == "odd")
              g.odd = true;
            else
              err("parity must be even or odd");
          } else if (tok[i] == "charge" && i + 1 < tok.size()) {
            g.charge = static_cast<int>(std::stol(tok[++i]));
          } else if (tok[i] == "virasoro") {
            g.virasoro = true;
          } else {
            err("unexpected token '" + tok[i] + "' in generator line");
          }
        } catch (const Error& e) {
          err(e.what());
        }
      }
      if (!have_weight) err("generator '" + g.name + "' needs a weight");
      try {
        p.add_generator(g);
      } catch (const Error& e) {
        err(e.what());
      }
    } else if (tok[0] == "ope") {
      if (tok.size() != 3) err("expected 'ope A B'");
      cur_a = p.find_generator(tok[1]);
      cur_b = p.find_generator(tok[2]);
      if (cur_a < 0) err("unknown generator '" + tok[1] + "'");
      if (cur_b < 0) err("unknown generator '" + tok[2] + "'");
      auto key = std::minmax(cur_a, cur_b);
      if (!seen.insert({key.first, key.second}).second)
        err("duplicate OPE data for the pair (" + tok[1] + ", " + tok[2] +
            "); only one orientation may be stored");
      in_block = true;
      seen_poles.clear();
    } else if (tok[0] == "end") {
      err("'end' outside an ope block");
    } else {
      err("unrecognized directive '" + tok[0] + "'");
    }
  }
  if (in_block) err("unterminated ope block");
  return p;
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_presentation_text(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Built-in presentations

namespace {

const char* kHeisenbergSrc = R"(
algebra heisenberg
param k
generator J weight 1 parity even charge 0
ope J J
  2: k
end
)";

const char* kVirasoroSrc = R"(
algebra virasoro
param k
generator T weight 2 parity even charge 0 virasoro
ope T T
  4: k/2
  2: 2*T
  1: D(T)
end
)";

const char* kW24Src = R"(
algebra w2_4
param k
generator J weight 1 parity even charge 0
generator T weight 2 parity even charge 0 virasoro
generator W weight 3 parity even charge 0
generator G+ weight 2 parity even charge 1
generator G- weight 2 parity even charge -1

ope T T
  4: -(8+3*k)*(17+8*k)/(2*(4+k))
  2: 2*T
  1: D(T)
end

ope T J
  2: J
  1: D(J)
end

ope T W
  2: 3*W
  1: D(W)
end

ope T G+
  2: 2*G+
  1: D(G+)
end

ope T G-
  2: 2*G-
  1: D(G-)
end

ope J J
  2: 2+3*k/4
end

ope J G+
  1: G+
end

ope J G-
  1: -G-
end

ope W G+
  3: 2*(4+k)*(7+3*k)*(16+5*k)/(8+3*k)^2*G+
  2: 3*(4+k)*(16+5*k)/(2*(8+3*k))*D(G+) - 6*(4+k)*(16+5*k)/(8+3*k)^2*:J G+:
  1: -8*(3+k)*(4+k)/((2+k)*(8+3*k))*:J D(G+): - 4*(4+k)*(16+15*k+3*k^2)/((2+k)*(8+3*k)^2)*:D(J) G+: + (3+k)*(4+k)/(2+k)*D^2(G+) - 2*(4+k)^2/((2+k)*(8+3*k))*:T G+: + 4*(4+k)*(16+5*k)/((2+k)*(8+3*k)^2)*:J J G+:
end

ope W G-
  3: -2*(4+k)*(7+3*k)*(16+5*k)/(8+3*k)^2*G-
  2: -3*(4+k)*(16+5*k)/(2*(8+3*k))*D(G-) - 6*(4+k)*(16+5*k)/(8+3*k)^2*:J G-:
  1: -8*(3+k)*(4+k)/((2+k)*(8+3*k))*:J D(G-): - 4*(4+k)*(16+15*k+3*k^2)/((2+k)*(8+3*k)^2)*:D(J) G-: - (3+k)*(4+k)/(2+k)*D^2(G-) + 2*(4+k)^2/((2+k)*(8+3*k))*:T G-: - 4*(4+k)*(16+5*k)/((2+k)*(8+3*k)^2)*:J J G-:
end

ope G+ G-
  4: (2+k)*(5+2*k)*(8+3*k)
  3: 4*(2+k)*(5+2*k)*J
  2: -(2+k)*(4+k)*T + 6*(2+k)*:J J: + 2*(2+k)*(5+2*k)*D(J)
  1: (2+k)*W + 8*(2+k)*(32+11*k)/(3*(8+3*k)^2)*:J J J: - 4*(2+k)*(4+k)/(8+3*k)*:T J: + 6*(2+k)*:D(J) J: - (2+k)*(4+k)/2*D(T) + 4*(2+k)*(26+17*k+3*k^2)/(3*(8+3*k))*D^2(J)
end

ope W W
  6: 2*(4+k)*(5+2*k)*(7+3*k)*(16+5*k)/(8+3*k)
  5: ?ansatz(weight=1, charge=0)
  4: ?ansatz(weight=2, charge=0)
  3: ?ansatz(weight=3, charge=0)
  2: ?ansatz(weight=4, charge=0)
  1: ?ansatz(weight=5, charge=0)
end
)";

}  // namespace

std::vector<std::string> builtin_names() { return {"heisenberg", "virasoro", "w2_4"}; }

bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names())
    if (n == name) return true;
  return false;
}

Presentation builtin(const std::string& name) {
  if (name == "heisenberg") return load_presentation_text(kHeisenbergSrc, "builtin:heisenberg");
  if (name == "virasoro") return load_presentation_text(kVirasoroSrc, "builtin:virasoro");
  if (name == "w2_4") return load_presentation_text(kW24Src, "builtin:w2_4");
  throw Error("unknown builtin algebra '" + name + "' (have: heisenberg, virasoro, w2_4)");
}

Presentation w24_jacobi_ansatz() {
  Presentation p;
  p.set_name("w2_4_jacobi_ansatz");
  p.set_param("k");
  p.add_generator({"J", HalfInt(1), false, 0, false});
  p.add_generator({"T", HalfInt(2), false, 0, true});
  p.add_generator({"W", HalfInt(3), false, 0, false});
  p.add_generator({"G+", HalfInt(2), false, 1, false});
  p.add_generator({"G-", HalfInt(2), false, -1, false});
  for (int i = 1; i <= 10; ++i) p.add_unknown("a" + std::to_string(i));
  auto add = [&](const char* a, const char* b, int pole, const char* src) {
    p.add_entry(p.generator(a), p.generator(b), pole - 1, parse_expression(p, src));
  };
  add("T", "T", 4, "-(8+3*k)*(17+8*k)/(2*(4+k))");
  add("T", "T", 2, "2*T");
  add("T", "T", 1, "D(T)");
  add("T", "J", 2, "J");
  add("T", "J", 1, "D(J)");
  add("T", "W", 2, "3*W");
  add("T", "W", 1, "D(W)");
  add("T", "G+", 2, "2*G+");
  add("T", "G+", 1, "D(G+)");
  add("T", "G-", 2, "2*G-");
  add("T", "G-", 1, "D(G-)");
  add("J", "J", 2, "2+3*k/4");
  add("J", "G+", 1, "G+");
  add("J", "G-", 1, "-G-");
  add("G+", "G-", 4, "(2+k)*(5+2*k)*(8+3*k)");
  add("G+", "G-", 3, "a1*J");
  add("G+", "G-", 2, "a2*T + a3*:J J: + a4*D(J)");
  add("G+", "G-", 1, "a5*W + a6*:J J J: + a7*:T J: + a8*:D(J) J: + a9*D(T) + a10*D^2(J)");
  int W = p.generator("W"), Gp = p.generator("G+"), Gm = p.generator("G-");
  for (int n = 4; n >= 0; --n) add_ansatz_entry(p, W, Gp, n);
  for (int n = 4; n >= 0; --n) add_ansatz_entry(p, W, Gm, n);
  for (int n = 5; n >= 0; --n) add_ansatz_entry(p, W, W, n);
  return p;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_presentation(const Presentation& p) {
  ValidationReport rep;
  for (const auto& [a, b] : p.stored_pairs()) {
    const auto& poles = *p.entry(a, b);
    for (const auto& [n, value] : poles) {
      HalfInt expect_w = p.gen(a).weight + p.gen(b).weight - HalfInt(n + 1);
      int expect_q = p.gen(a).charge + p.gen(b).charge;
      for (const auto& [w, c] : value) {
        if (p.weight_of(w) != expect_w)
          rep.problems.push_back("(" + p.gen(a).name + ", " + p.gen(b).name + ") pole " +
                                 std::to_string(n + 1) + ": term " + p.show(w) + " has weight " +
                                 p.weight_of(w).str() + ", expected " + expect_w.str());
        if (p.charge_of(w) != expect_q)
          rep.problems.push_back("(" + p.gen(a).name + ", " + p.gen(b).name + ") pole " +
                                 std::to_string(n + 1) + ": term " + p.show(w) + " has charge " +
                                 std::to_string(p.charge_of(w)) + ", expected " +
                                 std::to_string(expect_q));
      }
    }
  }
  if (!rep.problems.empty()) return rep;  // grading cutoffs below assume homogeneity

  OpeEngine eng(p);
  auto classify = [&](const Expression& diff, const std::string& what) {
    if (diff.is_zero()) return;
    for (const auto& [w, c] : diff)
      if (!c.is_constant()) {
        ++rep.unresolved_constraints;
        return;
      }
    rep.problems.push_back(what + ": off by " + p.show(diff));
  };

  if (auto t = p.virasoro_index()) {
    Expression T = eng.gen_expr(*t);
    for (int g = 0; g < p.num_generators(); ++g) {
      Expression A = eng.gen_expr(g);
      classify(eng.nth_product(T, A, 0) - eng.derivative(A),
               "translation T_(0)" + p.gen(g).name);
      classify(eng.nth_product(T, A, 1) - A.scaled(Coeff(p.gen(g).weight.to_rational())),
               "weight T_(1)" + p.gen(g).name);
    }
  }

  for (const auto& [a, b] : p.stored_pairs()) {
    Expression A = eng.gen_expr(a), B = eng.gen_expr(b);
    if (a == b) {
      for (int n = 0; n <= p.max_n_pair(a, a); ++n)
        classify(eng.nth_product(A, A, n) - eng.skew_transport(A, A, n),
                 "skew symmetry (" + p.gen(a).name + ", " + p.gen(a).name + ") pole " +
                     std::to_string(n + 1));
    } else if (p.entry(b, a) != nullptr && a < b) {
      for (int n = 0; n <= p.max_n_pair(a, b); ++n)
        classify(eng.nth_product(B, A, n) - eng.skew_transport(A, B, n),
                 "stored orientations disagree on (" + p.gen(b).name + ", " + p.gen(a).name +
                     ") pole " + std::to_string(n + 1));
    }
  }
  return rep;
}

}  // namespace vopa
