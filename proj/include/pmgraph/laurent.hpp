#ifndef PMGRAPH_LAURENT_HPP
#define PMGRAPH_LAURENT_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmgraph {

// Exact rational scalar. mpq_class keeps gcd(num, den) = 1 and den > 0
// as long as two-argument constructions go through make_rational().
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);

// Exponent vector of a Laurent monomial, one entry per variable.
using Exponents = std::vector<int>;

class PolyError : public std::runtime_error {
 public:
  explicit PolyError(const std::string& what) : std::runtime_error(what) {}
};

class DegreeLimitExceeded : public PolyError {
 public:
  explicit DegreeLimitExceeded(const std::string& what) : PolyError(what) {}
};

// Cap on the total degree (sum of |exponent|) of any monomial produced by
// multiplication. Guards against runaway symbolic blow-up; the CLI maps the
// PMGRAPH_MAX_DEGREE environment variable onto this.
int degree_limit();
void set_degree_limit(int limit);

// Sparse multivariate Laurent polynomial with rational coefficients.
// Invariant: no stored coefficient is zero, so equal polynomials have
// identical term maps.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  LaurentPoly() : num_vars_(0) {}
  explicit LaurentPoly(int num_vars) : num_vars_(num_vars) {}

  static LaurentPoly constant(int num_vars, const Rational& c);
  static LaurentPoly monomial(int num_vars, const Rational& c, Exponents e);
  // z_index^power
  static LaurentPoly variable(int num_vars, int index, int power = 1);
  static LaurentPoly zero(int num_vars) { return LaurentPoly(num_vars); }
  static LaurentPoly one(int num_vars) {
    return constant(num_vars, Rational(1));
  }

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  bool is_constant() const;
  // Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  bool is_one() const;

  // true iff every stored coefficient is >= 0 (so the polynomial lies in
  // k_+[Z^{+-1}]).
  bool is_nonneg() const;
  // true iff exactly one term, with positive coefficient: c z^beta, c > 0.
  bool is_positive_monomial() const;

  // max over terms of sum_i |e_i|; 0 for the zero polynomial.
  int total_degree() const;
  // componentwise minimum exponent over all terms (0 on the zero poly).
  Exponents min_exponents() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly& scale(const Rational& c);
  // multiply by the monomial c z^e
  LaurentPoly shifted(const Exponents& e, const Rational& c = Rational(1)) const;

  bool operator==(const LaurentPoly& rhs) const {
    return num_vars_ == rhs.num_vars_ && terms_ == rhs.terms_;
  }
  bool operator!=(const LaurentPoly& rhs) const { return !(*this == rhs); }

  // Floating-point evaluation at t > 0 componentwise (negative exponents make
  // positivity mandatory).
  double evaluate(const std::vector<double>& t) const;
  // Exact rational evaluation at positive rational points.
  Rational evaluate_exact(const std::vector<Rational>& t) const;

  std::string to_string(const std::vector<std::string>& var_names) const;
  std::string to_string() const;  // default names z1, z2, ...

  void add_term(const Exponents& e, const Rational& c);

 private:
  int num_vars_;
  TermMap terms_;
};

// Exact division in the Laurent ring: returns q with q*d == p, or nullopt
// when d does not divide p. d must be nonzero. The result is verified by
// multiplication before returning.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& p,
                                        const LaurentPoly& d);

// Textual syntax: terms joined by '+'/'-', term = coef*z1^e1*z2^e2 with
// integer or a/b coefficients and possibly negative exponents (z1^-2).
// parse_poly and to_string round-trip.
LaurentPoly parse_poly(const std::string& text,
                       const std::vector<std::string>& var_names);

std::vector<std::string> default_var_names(int num_vars);

// Unreduced fraction of Laurent polynomials. Equality is decided by
// cross-multiplication; no gcd reduction is ever attempted.
struct PolyFraction {
  LaurentPoly num;
  LaurentPoly den;

  PolyFraction() : num(0), den(LaurentPoly::one(0)) {}
  PolyFraction(LaurentPoly n, LaurentPoly d);
  static PolyFraction from_poly(const LaurentPoly& p) {
    return PolyFraction(p, LaurentPoly::one(p.num_vars()));
  }

  bool is_zero() const { return num.is_zero(); }
  int num_vars() const { return num.num_vars(); }

  PolyFraction operator-() const;
  friend PolyFraction operator+(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator-(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator*(const PolyFraction& a, const PolyFraction& b);
  PolyFraction reciprocal() const;

  bool equals(const PolyFraction& rhs) const;
  bool equals_poly(const LaurentPoly& p) const;
  // The polynomial num/den when den divides num exactly.
  std::optional<LaurentPoly> as_poly() const { return exact_divide(num, den); }

  double evaluate(const std::vector<double>& t) const;
  std::string to_string(const std::vector<std::string>& var_names) const;
};

}  // namespace pmgraph

#endif  // PMGRAPH_LAURENT_HPP
