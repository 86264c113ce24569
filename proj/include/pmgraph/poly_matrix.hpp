#ifndef PMGRAPH_POLY_MATRIX_HPP
#define PMGRAPH_POLY_MATRIX_HPP

#include <optional>
#include <span>
#include <vector>

#include "pmgraph/laurent.hpp"

namespace pmgraph {

// Square matrix over the Laurent polynomial ring.
class PolyMatrix {
 public:
  PolyMatrix() : n_(0), num_vars_(0) {}
  PolyMatrix(int n, int num_vars)
      : n_(n), num_vars_(num_vars),
        entries_(static_cast<size_t>(n) * n, LaurentPoly(num_vars)) {}

  static PolyMatrix identity(int n, int num_vars);

  int size() const { return n_; }
  int num_vars() const { return num_vars_; }

  LaurentPoly& at(int i, int j) { return entries_[static_cast<size_t>(i) * n_ + j]; }
  const LaurentPoly& at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * n_ + j];
  }

  bool is_zero() const;
  bool is_identity() const;

  PolyMatrix operator*(const PolyMatrix& rhs) const;
  PolyMatrix operator+(const PolyMatrix& rhs) const;
  PolyMatrix operator-(const PolyMatrix& rhs) const;
  PolyMatrix scaled(const LaurentPoly& c) const;
  std::vector<LaurentPoly> apply(const std::vector<LaurentPoly>& v) const;
  std::vector<LaurentPoly> column(int j) const;

  bool operator==(const PolyMatrix& rhs) const {
    return n_ == rhs.n_ && num_vars_ == rhs.num_vars_ && entries_ == rhs.entries_;
  }
  bool operator!=(const PolyMatrix& rhs) const { return !(*this == rhs); }

  std::vector<std::vector<double>> evaluate(const std::vector<double>& t) const;

 private:
  int n_;
  int num_vars_;
  std::vector<LaurentPoly> entries_;
};

// Matrix with a single shared polynomial denominator: numer/denom entrywise.
struct FracMatrix {
  PolyMatrix numer;
  LaurentPoly denom;

  FracMatrix() : denom(LaurentPoly::one(0)) {}
  FracMatrix(PolyMatrix n, LaurentPoly d);

  int size() const { return numer.size(); }
  PolyFraction entry(int i, int j) const {
    return PolyFraction(numer.at(i, j), denom);
  }
  bool is_identity() const { return numer == PolyMatrix::identity(numer.size(), numer.num_vars()).scaled(denom); }
  bool equals(const FracMatrix& rhs) const;

  FracMatrix operator*(const FracMatrix& rhs) const {
    return FracMatrix(numer * rhs.numer, denom * rhs.denom);
  }
  FracMatrix operator+(const FracMatrix& rhs) const;
  FracMatrix scaled(const PolyFraction& c) const {
    return FracMatrix(numer.scaled(c.num), denom * c.den);
  }
};

// Exact determinant via fraction-free (Bareiss) elimination. Rows are
// pre-multiplied by monomials clearing negative exponents; the result is
// post-corrected by the product of the clearing monomials.
LaurentPoly det(const PolyMatrix& m);

// adj(M)/det(M); nullopt iff det(M) = 0. Verifies M * adj(M) = det(M) * I.
std::optional<FracMatrix> adjugate_inverse(const PolyMatrix& m);

// Monic univariate polynomial over the fraction field, ascending degree.
// coeffs.back() is the (nonzero) leading coefficient.
struct PolyUnivariate {
  std::vector<PolyFraction> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  FracMatrix eval_at(const PolyMatrix& a) const;
  std::string to_string(const std::string& var,
                        const std::vector<std::string>& var_names) const;
};

// Minimal polynomial of A, found as the first linear dependency among the
// flattened powers I, A, A^2, ... via fraction-free elimination.
PolyUnivariate minimal_polynomial(const PolyMatrix& a);

// sum_j coeffs[j] * A^j over a common denominator.
FracMatrix poly_in_a(std::span<const PolyFraction> coeffs, const PolyMatrix& a);
// Fast path when all coefficients share one denominator.
FracMatrix poly_in_a(std::span<const LaurentPoly> numerators,
                     const LaurentPoly& shared_denom, const PolyMatrix& a);

// Solves M x = rhs exactly for square invertible M (used by the Krylov
// dependency search). Returns nullopt when det(M) = 0.
std::optional<std::vector<PolyFraction>> solve_square(
    const PolyMatrix& m, const std::vector<LaurentPoly>& rhs);

}  // namespace pmgraph

#endif  // PMGRAPH_POLY_MATRIX_HPP
