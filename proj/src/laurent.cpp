#include "pmgraph/laurent.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <sstream>

namespace pmgraph {

namespace {

std::atomic<int> g_degree_limit{4096};

int abs_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += std::abs(x);
  return d;
}

void check_same_vars(const LaurentPoly& a, const LaurentPoly& b,
                     const char* op) {
  if (a.num_vars() != b.num_vars()) {
    throw PolyError(std::string("variable-count mismatch in ") + op + ": " +
                    std::to_string(a.num_vars()) + " vs " +
                    std::to_string(b.num_vars()));
  }
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw PolyError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  try {
    Rational r(text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw PolyError("bad rational literal: '" + text + "'");
  }
}

int degree_limit() { return g_degree_limit.load(); }

void set_degree_limit(int limit) {
  if (limit < 1) throw PolyError("degree limit must be positive");
  g_degree_limit.store(limit);
}

LaurentPoly LaurentPoly::constant(int num_vars, const Rational& c) {
  LaurentPoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(int num_vars, const Rational& c,
                                  Exponents e) {
  if (static_cast<int>(e.size()) != num_vars)
    throw PolyError("monomial exponent vector has wrong length");
  LaurentPoly p(num_vars);
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int num_vars, int index, int power) {
  if (index < 0 || index >= num_vars)
    throw PolyError("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = power;
  return monomial(num_vars, Rational(1), e);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  return abs_degree(terms_.begin()->first) == 0;
}

Rational LaurentPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw PolyError("constant_value on non-constant");
  return terms_.begin()->second;
}

bool LaurentPoly::is_one() const {
  return is_constant() && !terms_.empty() && terms_.begin()->second == 1;
}

bool LaurentPoly::is_nonneg() const {
  for (const auto& [e, c] : terms_)
    if (sgn(c) < 0) return false;
  return true;
}

bool LaurentPoly::is_positive_monomial() const {
  return terms_.size() == 1 && sgn(terms_.begin()->second) > 0;
}

int LaurentPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, abs_degree(e));
  return d;
}

Exponents LaurentPoly::min_exponents() const {
  Exponents m(num_vars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int v = 0; v < num_vars_; ++v) m[v] = std::min(m[v], e[v]);
    }
  }
  return m;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(num_vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  check_same_vars(*this, rhs, "add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  check_same_vars(*this, rhs, "sub");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_vars(a, b, "mul");
  const int limit = degree_limit();
  LaurentPoly r(a.num_vars());
  Exponents e(a.num_vars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int v = 0; v < a.num_vars(); ++v) e[v] = ea[v] + eb[v];
      if (abs_degree(e) > limit)
        throw DegreeLimitExceeded("product exceeds degree limit " +
                                  std::to_string(limit));
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

LaurentPoly& LaurentPoly::scale(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

LaurentPoly LaurentPoly::shifted(const Exponents& e, const Rational& c) const {
  if (static_cast<int>(e.size()) != num_vars_)
    throw PolyError("shift exponent vector has wrong length");
  LaurentPoly r(num_vars_);
  if (sgn(c) == 0) return r;
  Exponents f(num_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (int v = 0; v < num_vars_; ++v) f[v] = ea[v] + e[v];
    r.terms_.emplace(f, ca * c);
  }
  return r;
}

double LaurentPoly::evaluate(const std::vector<double>& t) const {
  if (static_cast<int>(t.size()) != num_vars_)
    throw PolyError("evaluation point has wrong length");
  for (double x : t)
    if (!(x > 0.0)) throw PolyError("evaluation point must be positive");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.get_d();
    for (int v = 0; v < num_vars_; ++v) m *= std::pow(t[v], e[v]);
    sum += m;
  }
  return sum;
}

Rational LaurentPoly::evaluate_exact(const std::vector<Rational>& t) const {
  if (static_cast<int>(t.size()) != num_vars_)
    throw PolyError("evaluation point has wrong length");
  for (const Rational& x : t)
    if (sgn(x) <= 0) throw PolyError("evaluation point must be positive");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int v = 0; v < num_vars_; ++v) {
      if (e[v] == 0) continue;
      Rational base = e[v] > 0 ? t[v] : Rational(1) / t[v];
      for (int k = 0; k < std::abs(e[v]); ++k) m *= base;
    }
    sum += m;
  }
  return sum;
}

std::vector<std::string> default_var_names(int num_vars) {
  std::vector<std::string> names;
  names.reserve(num_vars);
  for (int i = 0; i < num_vars; ++i) names.push_back("z" + std::to_string(i + 1));
  return names;
}

std::string LaurentPoly::to_string(
    const std::vector<std::string>& var_names) const {
  if (static_cast<int>(var_names.size()) != num_vars_)
    throw PolyError("variable name list has wrong length");
  if (terms_.empty()) return "0";

  // Print in descending graded-lex order so output is canonical.
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    int da = abs_degree(a->first), db = abs_degree(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });

  std::ostringstream out;
  bool first = true;
  for (const auto* term : order) {
    const Exponents& e = term->first;
    Rational c = term->second;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    std::vector<std::string> factors;
    if (c != 1 || abs_degree(e) == 0) factors.push_back(c.get_str());
    for (int v = 0; v < num_vars_; ++v) {
      if (e[v] == 0) continue;
      std::string f = var_names[v];
      if (e[v] != 1) f += "^" + std::to_string(e[v]);
      factors.push_back(f);
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out << "*";
      out << factors[i];
    }
  }
  return out.str();
}

std::string LaurentPoly::to_string() const {
  return to_string(default_var_names(num_vars_));
}

// ---------------------------------------------------------------------------
// Exact division.
//
// Laurent units are the monomials, so p/d is a Laurent polynomial iff after
// stripping the monomial content of both operands the remaining ordinary
// polynomials divide. The ordinary division greedily cancels leading terms in
// graded-lex order; if d | p, then at every step the leading term of the
// remainder is divisible by the leading term of d, so a failed leading-term
// division proves non-divisibility.
// ---------------------------------------------------------------------------

namespace {

bool grlex_less(const Exponents& a, const Exponents& b) {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

const Exponents* leading_exponent(const LaurentPoly& p) {
  const Exponents* best = nullptr;
  for (const auto& [e, c] : p.terms()) {
    if (!best || grlex_less(*best, e)) best = &e;
  }
  return best;
}

}  // namespace

std::optional<LaurentPoly> exact_divide(const LaurentPoly& p,
                                        const LaurentPoly& d) {
  check_same_vars(p, d, "exact_divide");
  if (d.is_zero()) throw PolyError("division by zero polynomial");
  const int m = p.num_vars();
  if (p.is_zero()) return LaurentPoly::zero(m);

  // Shift both operands into the ordinary polynomial ring.
  Exponents pshift = p.min_exponents();
  Exponents dshift = d.min_exponents();
  Exponents neg(m);
  for (int v = 0; v < m; ++v) neg[v] = -pshift[v];
  LaurentPoly rem = p.shifted(neg);
  for (int v = 0; v < m; ++v) neg[v] = -dshift[v];
  LaurentPoly div = d.shifted(neg);

  const Exponents* dlead = leading_exponent(div);
  const Rational& dcoef = div.terms().at(*dlead);

  LaurentPoly q(m);
  Exponents qe(m);
  while (!rem.is_zero()) {
    const Exponents* rlead = leading_exponent(rem);
    for (int v = 0; v < m; ++v) {
      qe[v] = (*rlead)[v] - (*dlead)[v];
      if (qe[v] < 0) return std::nullopt;
    }
    Rational qc = rem.terms().at(*rlead) / dcoef;
    q.add_term(qe, qc);
    rem -= div.shifted(qe, qc);
  }

  // Undo the shifts: p/d = z^(pshift - dshift) * (p'/d').
  Exponents back(m);
  for (int v = 0; v < m; ++v) back[v] = pshift[v] - dshift[v];
  LaurentPoly result = q.shifted(back);
  if (result * d != p)
    throw PolyError("internal error: exact_divide verification failed");
  return result;
}

// ---------------------------------------------------------------------------
// Parser.
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw PolyError("parse error at position " + std::to_string(pos) + ": " +
                    msg + " in '" + text + "'");
  }

  std::string read_integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail("expected integer");
    return text.substr(start, pos - start);
  }

  int match_var() {
    skip_ws();
    int found = -1;
    size_t found_len = 0;
    for (size_t v = 0; v < vars.size(); ++v) {
      const std::string& name = vars[v];
      if (name.size() > found_len && text.compare(pos, name.size(), name) == 0) {
        found = static_cast<int>(v);
        found_len = name.size();
      }
    }
    if (found >= 0) pos += found_len;
    return found;
  }

  // factor := rational | var ['^' int]
  // term   := factor ['*' factor]...
  LaurentPoly parse_term() {
    const int m = static_cast<int>(vars.size());
    Rational coef(1);
    Exponents e(m, 0);
    bool any = false;
    while (true) {
      skip_ws();
      int v = match_var();
      if (v >= 0) {
        int power = 1;
        if (peek() == '^') {
          ++pos;
          power = std::stoi(read_integer());
        }
        e[v] += power;
      } else {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
          std::string numpart = read_integer();
          if (peek() == '/') {
            ++pos;
            std::string denpart = read_integer();
            coef *= parse_rational(numpart + "/" + denpart);
          } else {
            coef *= parse_rational(numpart);
          }
        } else {
          fail("expected coefficient or variable");
        }
      }
      any = true;
      if (peek() == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return LaurentPoly::monomial(m, coef, e);
  }

  LaurentPoly parse() {
    const int m = static_cast<int>(vars.size());
    LaurentPoly result(m);
    bool first = true;
    while (!eof()) {
      int sign = 1;
      char c = peek();
      if (c == '+' || c == '-') {
        sign = (c == '-') ? -1 : 1;
        ++pos;
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      skip_ws();
      if (eof()) fail("dangling sign");
      LaurentPoly term = parse_term();
      if (sign < 0) term.scale(Rational(-1));
      result += term;
      first = false;
    }
    if (first) fail("empty polynomial");
    return result;
  }
};

}  // namespace

LaurentPoly parse_poly(const std::string& text,
                       const std::vector<std::string>& var_names) {
  Parser p{text, var_names};
  return p.parse();
}

// ---------------------------------------------------------------------------
// PolyFraction.
// ---------------------------------------------------------------------------

PolyFraction::PolyFraction(LaurentPoly n, LaurentPoly d)
    : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw PolyError("fraction with zero denominator");
  if (num.num_vars() != den.num_vars())
    throw PolyError("variable-count mismatch in fraction");
}

PolyFraction PolyFraction::operator-() const { return PolyFraction(-num, den); }

PolyFraction operator+(const PolyFraction& a, const PolyFraction& b) {
  if (a.den == b.den) return PolyFraction(a.num + b.num, a.den);
  return PolyFraction(a.num * b.den + b.num * a.den, a.den * b.den);
}

PolyFraction operator-(const PolyFraction& a, const PolyFraction& b) {
  return a + (-b);
}

PolyFraction operator*(const PolyFraction& a, const PolyFraction& b) {
  return PolyFraction(a.num * b.num, a.den * b.den);
}

PolyFraction PolyFraction::reciprocal() const {
  if (num.is_zero()) throw PolyError("reciprocal of zero fraction");
  return PolyFraction(den, num);
}

bool PolyFraction::equals(const PolyFraction& rhs) const {
  return num * rhs.den == rhs.num * den;
}

bool PolyFraction::equals_poly(const LaurentPoly& p) const {
  return num == p * den;
}

double PolyFraction::evaluate(const std::vector<double>& t) const {
  double d = den.evaluate(t);
  if (d == 0.0) throw PolyError("fraction denominator vanishes at point");
  return num.evaluate(t) / d;
}

std::string PolyFraction::to_string(
    const std::vector<std::string>& var_names) const {
  if (den.is_one() || num.is_zero()) return num.to_string(var_names);
  std::string n = num.to_string(var_names);
  std::string d = den.to_string(var_names);
  if (num.term_count() > 1) n = "(" + n + ")";
  if (den.term_count() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace pmgraph
