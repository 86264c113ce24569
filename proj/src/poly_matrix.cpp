#include "pmgraph/poly_matrix.hpp"

#include <sstream>

namespace pmgraph {

PolyMatrix PolyMatrix::identity(int n, int num_vars) {
  PolyMatrix m(n, num_vars);
  for (int i = 0; i < n; ++i)
    m.at(i, i) = LaurentPoly::one(num_vars);
  return m;
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& rhs) const {
  if (n_ != rhs.n_) throw PolyError("matrix size mismatch in product");
  PolyMatrix r(n_, num_vars_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const LaurentPoly& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        if (rhs.at(k, j).is_zero()) continue;
        r.at(i, j) += aik * rhs.at(k, j);
      }
    }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& rhs) const {
  if (n_ != rhs.n_) throw PolyError("matrix size mismatch in sum");
  PolyMatrix r = *this;
  for (int i = 0; i < n_ * n_; ++i) r.entries_[i] += rhs.entries_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& rhs) const {
  if (n_ != rhs.n_) throw PolyError("matrix size mismatch in difference");
  PolyMatrix r = *this;
  for (int i = 0; i < n_ * n_; ++i) r.entries_[i] -= rhs.entries_[i];
  return r;
}

PolyMatrix PolyMatrix::scaled(const LaurentPoly& c) const {
  PolyMatrix r(n_, num_vars_);
  for (int i = 0; i < n_ * n_; ++i) r.entries_[i] = entries_[i] * c;
  return r;
}

std::vector<LaurentPoly> PolyMatrix::apply(
    const std::vector<LaurentPoly>& v) const {
  if (static_cast<int>(v.size()) != n_)
    throw PolyError("vector length mismatch in matrix apply");
  std::vector<LaurentPoly> r(n_, LaurentPoly(num_vars_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (at(i, j).is_zero() || v[j].is_zero()) continue;
      r[i] += at(i, j) * v[j];
    }
  return r;
}

std::vector<LaurentPoly> PolyMatrix::column(int j) const {
  std::vector<LaurentPoly> c(n_, LaurentPoly(num_vars_));
  for (int i = 0; i < n_; ++i) c[i] = at(i, j);
  return c;
}

std::vector<std::vector<double>> PolyMatrix::evaluate(
    const std::vector<double>& t) const {
  std::vector<std::vector<double>> r(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = at(i, j).evaluate(t);
  return r;
}

FracMatrix::FracMatrix(PolyMatrix n, LaurentPoly d)
    : numer(std::move(n)), denom(std::move(d)) {
  if (denom.is_zero()) throw PolyError("FracMatrix with zero denominator");
}

bool FracMatrix::equals(const FracMatrix& rhs) const {
  if (numer.size() != rhs.numer.size()) return false;
  for (int i = 0; i < numer.size(); ++i)
    for (int j = 0; j < numer.size(); ++j)
      if (numer.at(i, j) * rhs.denom != rhs.numer.at(i, j) * denom)
        return false;
  return true;
}

FracMatrix FracMatrix::operator+(const FracMatrix& rhs) const {
  if (denom == rhs.denom) return FracMatrix(numer + rhs.numer, denom);
  return FracMatrix(numer.scaled(rhs.denom) + rhs.numer.scaled(denom),
                    denom * rhs.denom);
}

// ---------------------------------------------------------------------------
// Bareiss elimination.
// ---------------------------------------------------------------------------

namespace {

using Rows = std::vector<std::vector<LaurentPoly>>;

LaurentPoly bareiss_div(const LaurentPoly& num, const LaurentPoly& den) {
  auto q = exact_divide(num, den);
  if (!q)
    throw PolyError("internal error: Bareiss division was not exact");
  return *q;
}

// Clears negative exponents row-wise; returns the combined clearing exponent
// so that det(original) = det(cleared) / z^clearing.
Exponents clear_rows(Rows& rows, int num_vars) {
  Exponents total(num_vars, 0);
  for (auto& row : rows) {
    Exponents mins(num_vars, 0);
    for (const auto& entry : row) {
      Exponents e = entry.min_exponents();
      for (int v = 0; v < num_vars; ++v) mins[v] = std::min(mins[v], e[v]);
    }
    bool needed = false;
    for (int v = 0; v < num_vars; ++v)
      if (mins[v] < 0) needed = true;
    if (!needed) continue;
    Exponents shift(num_vars, 0);
    for (int v = 0; v < num_vars; ++v) {
      shift[v] = mins[v] < 0 ? -mins[v] : 0;
      total[v] += shift[v];
    }
    for (auto& entry : row) entry = entry.shifted(shift);
  }
  return total;
}

// Fraction-free determinant of a square array of ordinary polynomials.
LaurentPoly bareiss_det(Rows rows, int num_vars) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) return LaurentPoly::one(num_vars);
  int sign = 1;
  LaurentPoly prev = LaurentPoly::one(num_vars);
  for (int k = 0; k + 1 < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n; ++r)
      if (!rows[r][k].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return LaurentPoly::zero(num_vars);
    if (pivot != k) {
      std::swap(rows[pivot], rows[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly t = rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j];
        rows[i][j] = t.is_zero() ? t : bareiss_div(t, prev);
      }
      rows[i][k] = LaurentPoly::zero(num_vars);
    }
    prev = rows[k][k];
  }
  LaurentPoly d = rows[n - 1][n - 1];
  if (sign < 0) d = -d;
  return d;
}

Rows matrix_rows(const PolyMatrix& m) {
  Rows rows(m.size());
  for (int i = 0; i < m.size(); ++i) {
    rows[i].reserve(m.size());
    for (int j = 0; j < m.size(); ++j) rows[i].push_back(m.at(i, j));
  }
  return rows;
}

}  // namespace

LaurentPoly det(const PolyMatrix& m) {
  Rows rows = matrix_rows(m);
  Exponents clearing = clear_rows(rows, m.num_vars());
  LaurentPoly d = bareiss_det(std::move(rows), m.num_vars());
  if (d.is_zero()) return d;
  Exponents back(m.num_vars());
  for (int v = 0; v < m.num_vars(); ++v) back[v] = -clearing[v];
  return d.shifted(back);
}

std::optional<FracMatrix> adjugate_inverse(const PolyMatrix& m) {
  const int n = m.size();
  LaurentPoly d = det(m);
  if (d.is_zero()) return std::nullopt;
  PolyMatrix adj(n, m.num_vars());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // adj[i][j] = (-1)^(i+j) * minor(j, i)
      PolyMatrix minor(n - 1, m.num_vars());
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc) = m.at(r, c);
          ++cc;
        }
        ++rr;
      }
      LaurentPoly cof = det(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      adj.at(i, j) = cof;
    }
  }
  if (!(m * adj == PolyMatrix::identity(n, m.num_vars()).scaled(d)))
    throw PolyError("internal error: adjugate verification failed");
  return FracMatrix(std::move(adj), std::move(d));
}

std::optional<std::vector<PolyFraction>> solve_square(
    const PolyMatrix& m, const std::vector<LaurentPoly>& rhs) {
  const int n = m.size();
  if (static_cast<int>(rhs.size()) != n)
    throw PolyError("solve_square: rhs length mismatch");
  LaurentPoly d = det(m);
  if (d.is_zero()) return std::nullopt;
  // Cramer: x_i = det(M with column i replaced by rhs) / det(M).
  std::vector<PolyFraction> x;
  x.reserve(n);
  for (int i = 0; i < n; ++i) {
    PolyMatrix mi = m;
    for (int r = 0; r < n; ++r) mi.at(r, i) = rhs[r];
    x.emplace_back(det(mi), d);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Minimal polynomial via Krylov flattening.
// ---------------------------------------------------------------------------

namespace {

std::vector<LaurentPoly> flatten(const PolyMatrix& m) {
  std::vector<LaurentPoly> v;
  v.reserve(static_cast<size_t>(m.size()) * m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) v.push_back(m.at(i, j));
  return v;
}

// Row echelon (fraction-free) of a copy of `rows`; returns pivot column of
// each eliminated row, in order. Rank = number of pivots.
std::vector<int> echelon_pivots(Rows rows, int num_vars) {
  clear_rows(rows, num_vars);
  const int nrows = static_cast<int>(rows.size());
  const int ncols = nrows == 0 ? 0 : static_cast<int>(rows[0].size());
  std::vector<int> pivots;
  LaurentPoly prev = LaurentPoly::one(num_vars);
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int pivot = -1;
    for (int r = row; r < nrows; ++r)
      if (!rows[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[row]);
    for (int i = row + 1; i < nrows; ++i) {
      for (int j = col + 1; j < ncols; ++j) {
        LaurentPoly t = rows[row][col] * rows[i][j] - rows[i][col] * rows[row][j];
        rows[i][j] = t.is_zero() ? t : bareiss_div(t, prev);
      }
      rows[i][col] = LaurentPoly::zero(num_vars);
    }
    prev = rows[row][col];
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

PolyUnivariate minimal_polynomial(const PolyMatrix& a) {
  const int n = a.size();
  const int nv = a.num_vars();
  std::vector<PolyMatrix> powers;
  powers.push_back(PolyMatrix::identity(n, nv));
  Rows flat;
  flat.push_back(flatten(powers[0]));

  for (int d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * a);
    flat.push_back(flatten(powers.back()));

    // I, A, ..., A^(d-1) are independent here (d is minimal); find d
    // coordinates witnessing that, then solve the square system.
    Rows basis(flat.begin(), flat.begin() + d);
    std::vector<int> cols = echelon_pivots(basis, nv);
    if (static_cast<int>(cols.size()) != d)
      throw PolyError("internal error: Krylov basis lost rank");

    PolyMatrix system(d, nv);
    std::vector<LaurentPoly> rhs(d, LaurentPoly(nv));
    for (int r = 0; r < d; ++r) {
      for (int j = 0; j < d; ++j) system.at(r, j) = flat[j][cols[r]];
      rhs[r] = flat[d][cols[r]];
    }
    auto x = solve_square(system, rhs);
    if (!x) continue;

    // Verify the dependency on all n^2 coordinates; failure means the
    // system was inconsistent and A^d is still independent.
    bool ok = true;
    for (size_t c = 0; c < flat[d].size() && ok; ++c) {
      PolyFraction sum = PolyFraction(LaurentPoly(nv), LaurentPoly::one(nv));
      for (int j = 0; j < d; ++j) {
        if (flat[j][c].is_zero() || (*x)[j].is_zero()) continue;
        sum = sum + (*x)[j] * PolyFraction::from_poly(flat[j][c]);
      }
      if (!sum.equals_poly(flat[d][c])) ok = false;
    }
    if (!ok) continue;

    // mu = X^d - sum_j x_j X^j.
    PolyUnivariate mu;
    mu.coeffs.reserve(d + 1);
    for (int j = 0; j < d; ++j) mu.coeffs.push_back(-(*x)[j]);
    mu.coeffs.push_back(PolyFraction::from_poly(LaurentPoly::one(nv)));
    return mu;
  }
  throw PolyError("internal error: no annihilating polynomial up to degree n");
}

FracMatrix poly_in_a(std::span<const PolyFraction> coeffs,
                     const PolyMatrix& a) {
  const int nv = a.num_vars();
  LaurentPoly common = LaurentPoly::one(nv);
  std::vector<const LaurentPoly*> dens;
  for (const auto& c : coeffs) {
    bool seen = false;
    for (const auto* d : dens)
      if (*d == c.den) {
        seen = true;
        break;
      }
    if (!seen && !c.den.is_one()) {
      dens.push_back(&c.den);
      common *= c.den;
    }
  }
  std::vector<LaurentPoly> numerators;
  numerators.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    auto scaled = exact_divide(c.num * common, c.den);
    if (!scaled)
      throw PolyError("internal error: common denominator not divisible");
    numerators.push_back(*scaled);
  }
  return poly_in_a(numerators, common, a);
}

FracMatrix poly_in_a(std::span<const LaurentPoly> numerators,
                     const LaurentPoly& shared_denom, const PolyMatrix& a) {
  const int n = a.size();
  const int nv = a.num_vars();
  PolyMatrix acc(n, nv);
  PolyMatrix power = PolyMatrix::identity(n, nv);
  for (size_t j = 0; j < numerators.size(); ++j) {
    if (j > 0) power = power * a;
    if (numerators[j].is_zero()) continue;
    acc = acc + power.scaled(numerators[j]);
  }
  return FracMatrix(std::move(acc), shared_denom);
}

FracMatrix PolyUnivariate::eval_at(const PolyMatrix& a) const {
  return poly_in_a(std::span<const PolyFraction>(coeffs), a);
}

std::string PolyUnivariate::to_string(
    const std::string& var, const std::vector<std::string>& var_names) const {
  std::ostringstream out;
  bool first = true;
  for (int j = degree(); j >= 0; --j) {
    const PolyFraction& c = coeffs[j];
    if (c.is_zero()) continue;
    std::string cs = c.to_string(var_names);
    if (!first) out << " + ";
    first = false;
    if (j == 0) {
      out << cs;
      continue;
    }
    std::string xs = j == 1 ? var : var + "^" + std::to_string(j);
    if (cs == "1") {
      out << xs;
    } else {
      if (c.num.term_count() > 1 && c.den.is_one()) cs = "(" + cs + ")";
      out << cs << "*" << xs;
    }
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace pmgraph
