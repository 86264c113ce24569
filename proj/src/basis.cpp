#include "pmgraph/basis.hpp"

#include <algorithm>
#include <cmath>

namespace pmgraph {

namespace {

LaurentPoly monomial_inverse(const LaurentPoly& m) {
  if (!m.is_positive_monomial())
    throw PolyError("inverse of a non-monomial");
  const auto& [e, c] = *m.terms().begin();
  Exponents neg(e.size());
  for (size_t v = 0; v < e.size(); ++v) neg[v] = -e[v];
  return LaurentPoly::monomial(m.num_vars(), Rational(1) / c, neg);
}

void verify_basis(const MultiplicativeBasis& b, const char* context) {
  const int n = b.size();
  const int nv = b.num_vars();
  const PolyMatrix& a = b.adjacency;

  // b_{i0} = 1.
  if (!(b.basis_numer[b.root] == PolyMatrix::identity(n, nv).scaled(b.detM)))
    throw InvariantViolation(std::string(context) + ": b_root is not the identity");

  // b_i e_{i0} = e_i.
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) {
      const LaurentPoly& entry = b.basis_numer[i].at(r, b.root);
      if (r == i ? entry != b.detM : !entry.is_zero())
        throw InvariantViolation(std::string(context) +
                                 ": column i0 of b_i is not e_i");
    }

  // A b_j = sum_i A[i][j] b_i.
  for (int j = 0; j < n; ++j) {
    PolyMatrix lhs = a * b.basis_numer[j];
    PolyMatrix rhs(n, nv);
    for (int i = 0; i < n; ++i) {
      if (a.at(i, j).is_zero()) continue;
      rhs = rhs + b.basis_numer[i].scaled(a.at(i, j));
    }
    if (!(lhs == rhs))
      throw InvariantViolation(std::string(context) +
                               ": A b_j != sum_i A[i][j] b_i");
  }
}

}  // namespace

std::optional<MultiplicativeBasis> compute_basis_from_adjacency(
    const PolyMatrix& a, int root, const ComputeBasisOptions& options) {
  const int n = a.size();
  const int nv = a.num_vars();
  if (root < 0 || root >= n) throw PolyError("root index out of range");

  // M_{i0}: column j = A^j e_{i0}.
  PolyMatrix m(n, nv);
  std::vector<LaurentPoly> col(n, LaurentPoly(nv));
  col[root] = LaurentPoly::one(nv);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
    if (j + 1 < n) col = a.apply(col);
  }

  auto inv = adjugate_inverse(m);
  if (!inv) return std::nullopt;  // NotMultiplicativeAtRoot

  MultiplicativeBasis basis;
  basis.adjacency = a;
  basis.root = root;
  basis.detM = inv->denom;

  std::vector<PolyMatrix> powers;
  powers.reserve(n);
  powers.push_back(PolyMatrix::identity(n, nv));
  for (int j = 1; j < n; ++j) powers.push_back(powers.back() * a);

  basis.basis_numer.reserve(n);
  basis.coeffs_in_powers.reserve(n);
  for (int i = 0; i < n; ++i) {
    PolyMatrix numer(n, nv);
    std::vector<PolyFraction> coeffs;
    coeffs.reserve(n);
    for (int j = 0; j < n; ++j) {
      const LaurentPoly& cij = inv->numer.at(j, i);
      coeffs.emplace_back(cij, basis.detM);
      if (!cij.is_zero()) numer = numer + powers[j].scaled(cij);
    }
    basis.basis_numer.push_back(std::move(numer));
    basis.coeffs_in_powers.push_back(std::move(coeffs));
  }

  if (options.verify) verify_basis(basis, "compute_basis");
  return basis;
}

std::optional<MultiplicativeBasis> compute_basis(
    const WeightedDigraph& g, int root, BasisDiagnostics* diag,
    const ComputeBasisOptions& options) {
  BasisDiagnostics local;
  local.strongly_connected = g.is_strongly_connected();
  if (!local.strongly_connected)
    local.warnings.push_back("graph is not strongly connected");
  auto degree_warnings = g.degree_warnings();
  local.warnings.insert(local.warnings.end(), degree_warnings.begin(),
                        degree_warnings.end());
  if (diag) *diag = local;
  return compute_basis_from_adjacency(g.adjacency_matrix(), root, options);
}

std::vector<double> StructureConstants::evaluate(
    const std::vector<double>& t) const {
  double d = denom.evaluate(t);
  if (d == 0.0) throw PolyError("structure-constant denominator vanishes");
  std::vector<double> out(numer.size());
  for (size_t idx = 0; idx < numer.size(); ++idx)
    out[idx] = numer[idx].evaluate(t) / d;
  return out;
}

StructureConstants structure_constants(const MultiplicativeBasis& b) {
  const int n = b.size();
  StructureConstants c(n, b.detM, b.root);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        c.num_at(i, j, k) = b.basis_numer[i].at(k, j);
  // Column symmetry, Thm ThGG2(3): c[i][j][.] = c[j][i][.].
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c.num_at(i, j, k) != c.num_at(j, i, k))
          throw InvariantViolation("structure constants are not symmetric");
  return c;
}

std::optional<PositivityWitness> is_positively_multiplicative_at(
    const StructureConstants& c) {
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j)
      for (int k = 0; k < c.n; ++k) {
        auto poly = c.polynomial_at(i, j, k);
        if (!poly || !poly->is_nonneg())
          return PositivityWitness{i, j, k, c.at(i, j, k)};
      }
  return std::nullopt;
}

std::optional<PositivityWitness> is_positively_multiplicative_at(
    const StructureConstants& c, const std::vector<double>& t, double tol) {
  double d = c.denom.evaluate(t);
  if (d == 0.0) throw PolyError("denominator vanishes at specialization");
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j)
      for (int k = 0; k < c.n; ++k) {
        double v = c.num_at(i, j, k).evaluate(t) / d;
        if (v < -tol) return PositivityWitness{i, j, k, c.at(i, j, k)};
      }
  return std::nullopt;
}

bool is_spm(const StructureConstants& c) {
  for (int j = 0; j < c.n; ++j)
    for (int k = 0; k < c.n; ++k) {
      bool found = false;
      for (int i = 0; i < c.n && !found; ++i)
        found = !c.num_at(i, j, k).is_zero();
      if (!found) return false;
    }
  return true;
}

bool verify_fusion(const StructureConstants& c, const std::vector<int>& star) {
  if (static_cast<int>(star.size()) != c.n)
    throw PolyError("star map has wrong length");
  for (int i = 0; i < c.n; ++i) {
    if (star[i] < 0 || star[i] >= c.n || star[star[i]] != i)
      throw PolyError("star map is not an involution");
  }
  if (star[c.root] != c.root)
    throw PolyError("star map must fix the unit index");
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j)
      for (int k = 0; k < c.n; ++k) {
        // c_{i,j}^k = c_{i*,k}^j
        if (c.num_at(i, j, k) != c.num_at(star[i], k, j)) return false;
        // star is an anti-automorphism: c_{i,j}^k = c_{j*,i*}^{k*}
        if (c.num_at(i, j, k) != c.num_at(star[j], star[i], star[k]))
          return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Generalized permutations.
// ---------------------------------------------------------------------------

GenPerm GenPerm::identity(int n, int num_vars) {
  GenPerm p;
  p.sigma.resize(n);
  p.scalars.assign(n, LaurentPoly::one(num_vars));
  for (int i = 0; i < n; ++i) p.sigma[i] = i;
  return p;
}

GenPerm GenPerm::inverse() const {
  GenPerm inv;
  inv.sigma.resize(size());
  inv.scalars.resize(size());
  for (int i = 0; i < size(); ++i) {
    inv.sigma[sigma[i]] = i;
    inv.scalars[sigma[i]] = monomial_inverse(scalars[i]);
  }
  return inv;
}

GenPerm GenPerm::compose(const GenPerm& then) const {
  if (then.size() != size()) throw PolyError("GenPerm size mismatch");
  GenPerm r;
  r.sigma.resize(size());
  r.scalars.resize(size());
  for (int i = 0; i < size(); ++i) {
    r.sigma[i] = then.sigma[sigma[i]];
    r.scalars[i] = scalars[i] * then.scalars[sigma[i]];
  }
  return r;
}

PolyMatrix GenPerm::matrix(int num_vars) const {
  PolyMatrix p(size(), num_vars);
  for (int i = 0; i < size(); ++i) p.at(sigma[i], i) = scalars[i];
  return p;
}

PolyMatrix GenPerm::conjugate(const PolyMatrix& a) const {
  if (a.size() != size()) throw PolyError("GenPerm size mismatch");
  PolyMatrix r(a.size(), a.num_vars());
  for (int i = 0; i < size(); ++i) {
    LaurentPoly inv_i = monomial_inverse(scalars[i]);
    for (int j = 0; j < size(); ++j) {
      const LaurentPoly& entry = a.at(sigma[i], sigma[j]);
      if (entry.is_zero()) continue;
      r.at(i, j) = entry * scalars[j] * inv_i;
    }
  }
  return r;
}

std::optional<GenPerm> gen_perm_of(const FracMatrix& m) {
  const int n = m.size();
  GenPerm p;
  p.sigma.assign(n, -1);
  p.scalars.assign(n, LaurentPoly(m.numer.num_vars()));
  std::vector<bool> row_used(n, false);
  for (int j = 0; j < n; ++j) {
    int row = -1;
    for (int i = 0; i < n; ++i) {
      if (m.numer.at(i, j).is_zero()) continue;
      if (row >= 0) return std::nullopt;  // two entries in one column
      row = i;
    }
    if (row < 0 || row_used[row]) return std::nullopt;
    auto scalar = exact_divide(m.numer.at(row, j), m.denom);
    if (!scalar || !scalar->is_positive_monomial()) return std::nullopt;
    row_used[row] = true;
    p.sigma[j] = row;
    p.scalars[j] = *scalar;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Root changes.
// ---------------------------------------------------------------------------

std::optional<MultiplicativeBasis> rebase(const MultiplicativeBasis& b,
                                          int j) {
  const int n = b.size();
  if (j < 0 || j >= n) throw PolyError("rebase target out of range");
  if (j == b.root) return b;

  auto inv_j = adjugate_inverse(b.basis_numer[j]);
  if (!inv_j) return std::nullopt;  // RootNotInvertible

  // b'_i = b_j^{-1} b_i = adj(N_j) N_i / det(N_j).
  MultiplicativeBasis out;
  out.adjacency = b.adjacency;
  out.root = j;
  out.detM = inv_j->denom;
  out.basis_numer.reserve(n);
  for (int i = 0; i < n; ++i)
    out.basis_numer.push_back(inv_j->numer * b.basis_numer[i]);

  // Expression over {1, A, ..., A^{n-1}} comes from the path matrix at the
  // new root; by unicity (Prop_Unicity) it must describe the same basis.
  auto recomputed = compute_basis_from_adjacency(b.adjacency, j,
                                                 ComputeBasisOptions{false});
  if (!recomputed)
    throw InvariantViolation(
        "rebase: b_j invertible but path matrix at j is singular");
  for (int i = 0; i < n; ++i)
    if (!FracMatrix(out.basis_numer[i], out.detM)
             .equals(FracMatrix(recomputed->basis_numer[i], recomputed->detM)))
      throw InvariantViolation("rebase: b_j^{-1} b_i disagrees with the "
                               "unique basis at the new root");
  out.coeffs_in_powers = std::move(recomputed->coeffs_in_powers);

  verify_basis(out, "rebase");
  return out;
}

// ---------------------------------------------------------------------------
// Positive roots and the group of maximal indices.
// ---------------------------------------------------------------------------

std::set<int> positive_roots(const MultiplicativeBasis& b,
                             const PositiveRootsOptions& options) {
  StructureConstants c = structure_constants(b);
  if (is_positively_multiplicative_at(c))
    throw PolyError("positive_roots requires a positively multiplicative basis");

  std::set<int> fast;
  for (int i = 0; i < b.size(); ++i)
    if (gen_perm_of(b.element(i))) fast.insert(i);

  if (b.size() <= options.oracle_bound) {
    std::set<int> oracle;
    for (int j = 0; j < b.size(); ++j) {
      auto rb = rebase(b, j);
      if (!rb) continue;
      if (!is_positively_multiplicative_at(structure_constants(*rb)))
        oracle.insert(j);
    }
    if (oracle != fast)
      throw InvariantViolation(
          "positive_roots: generalized-permutation fast path disagrees with "
          "the rebase oracle");
  }
  return fast;
}

namespace {

// Invariant factors of a finite abelian group given by an index table.
// Peels off a cyclic factor of maximal order and recurses on the quotient.
std::vector<int> table_invariant_factors(
    const std::vector<std::vector<int>>& table, int identity) {
  const int n = static_cast<int>(table.size());
  if (n <= 1) return {};

  auto order_of = [&](int g) {
    int o = 1, x = g;
    while (x != identity) {
      x = table[x][g];
      ++o;
    }
    return o;
  };

  int best = identity, best_order = 1;
  for (int g = 0; g < n; ++g) {
    int o = order_of(g);
    if (o > best_order) {
      best = g;
      best_order = o;
    }
  }
  if (best_order == n) return {n};

  // Cosets of <best>.
  std::vector<int> cyclic;
  int x = identity;
  do {
    cyclic.push_back(x);
    x = table[x][best];
  } while (x != identity);

  std::vector<int> coset_of(n, -1);
  int num_cosets = 0;
  for (int g = 0; g < n; ++g) {
    if (coset_of[g] >= 0) continue;
    for (int h : cyclic) coset_of[table[g][h]] = num_cosets;
    ++num_cosets;
  }
  std::vector<std::vector<int>> quotient(num_cosets,
                                         std::vector<int>(num_cosets, -1));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      quotient[coset_of[g]][coset_of[h]] = coset_of[table[g][h]];

  std::vector<int> factors = table_invariant_factors(quotient, coset_of[identity]);
  factors.push_back(best_order);
  return factors;
}

}  // namespace

std::vector<int> MaximalIndexGroup::invariant_factors() const {
  const int n = static_cast<int>(elements.size());
  std::vector<int> pos(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  std::map<int, int> index_of;
  for (int a = 0; a < n; ++a) index_of[elements[a]] = a;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[a][b] = index_of.at(product.at({elements[a], elements[b]}));
  return table_invariant_factors(table, index_of.at(identity));
}

MaximalIndexGroup maximal_index_group(const MultiplicativeBasis& b) {
  const int n = b.size();
  const int nv = b.num_vars();

  MaximalIndexGroup group;
  group.identity = b.root;
  std::map<int, GenPerm> perms;
  for (int i = 0; i < n; ++i) {
    auto p = gen_perm_of(b.element(i));
    if (p) {
      group.elements.push_back(i);
      perms.emplace(i, std::move(*p));
    }
  }

  // Products: (b_i b_j) e_{i0} = b_i e_j picks out lambda_{i,j} e_{i.j}.
  for (int i : group.elements) {
    for (int j : group.elements) {
      const GenPerm& pi = perms.at(i);
      int k = pi.sigma[j];
      LaurentPoly lambda = pi.scalars[j];
      if (!std::binary_search(group.elements.begin(), group.elements.end(), k))
        throw InvariantViolation("maximal_index_group: product leaves I_m");
      // Exact check b_i b_j = lambda b_k.
      PolyMatrix lhs = b.basis_numer[i] * b.basis_numer[j];
      PolyMatrix rhs = b.basis_numer[k].scaled(lambda * b.detM);
      if (!(lhs == rhs))
        throw InvariantViolation(
            "maximal_index_group: b_i b_j != lambda b_{i.j}");
      group.product[{i, j}] = k;
      group.scalar[{i, j}] = lambda;
    }
  }

  // Group axioms, checked exhaustively.
  for (int i : group.elements) {
    if (group.product.at({b.root, i}) != i || group.product.at({i, b.root}) != i)
      throw InvariantViolation("maximal_index_group: root is not the identity");
    bool has_inverse = false;
    for (int j : group.elements)
      if (group.product.at({i, j}) == b.root) has_inverse = true;
    if (!has_inverse)
      throw InvariantViolation("maximal_index_group: missing inverse");
    for (int j : group.elements) {
      if (group.product.at({i, j}) != group.product.at({j, i}))
        throw InvariantViolation("maximal_index_group: not commutative");
      for (int k : group.elements) {
        int ij_k = group.product.at({group.product.at({i, j}), k});
        int i_jk = group.product.at({i, group.product.at({j, k})});
        if (ij_k != i_jk)
          throw InvariantViolation("maximal_index_group: not associative");
      }
    }
  }

  // Coboundary h with lambda_{i,j} = h(i.j)/(h(i)h(j)), solved in log space
  // at the all-ones specialization by least squares (normal equations).
  const int m = static_cast<int>(group.elements.size());
  if (m > 0) {
    std::vector<double> ones(nv, 1.0);
    std::map<int, int> col;
    for (int a = 0; a < m; ++a) col[group.elements[a]] = a;
    std::vector<std::vector<double>> ata(m, std::vector<double>(m, 0.0));
    std::vector<double> atb(m, 0.0);
    auto add_row = [&](const std::vector<double>& row, double rhs) {
      for (int a = 0; a < m; ++a) {
        for (int c = 0; c < m; ++c) ata[a][c] += row[a] * row[c];
        atb[a] += row[a] * rhs;
      }
    };
    for (int i : group.elements)
      for (int j : group.elements) {
        std::vector<double> row(m, 0.0);
        row[col[group.product.at({i, j})]] += 1.0;
        row[col[i]] -= 1.0;
        row[col[j]] -= 1.0;
        add_row(row, std::log(group.scalar.at({i, j}).evaluate(ones)));
      }
    // Gauge: h(identity) = 1.
    {
      std::vector<double> row(m, 0.0);
      row[col[group.identity]] = 1.0;
      add_row(row, 0.0);
    }
    // Plain Gaussian elimination on the normal equations.
    for (int k = 0; k < m; ++k) {
      int piv = k;
      for (int r = k + 1; r < m; ++r)
        if (std::abs(ata[r][k]) > std::abs(ata[piv][k])) piv = r;
      std::swap(ata[k], ata[piv]);
      std::swap(atb[k], atb[piv]);
      if (std::abs(ata[k][k]) < 1e-14)
        throw InvariantViolation("coboundary system is singular");
      for (int r = 0; r < m; ++r) {
        if (r == k) continue;
        double f = ata[r][k] / ata[k][k];
        for (int c = k; c < m; ++c) ata[r][c] -= f * ata[k][c];
        atb[r] -= f * atb[k];
      }
    }
    std::vector<double> logh(m);
    for (int k = 0; k < m; ++k) logh[k] = atb[k] / ata[k][k];
    double residual = 0.0;
    for (int i : group.elements)
      for (int j : group.elements) {
        double lhs = std::log(group.scalar.at({i, j}).evaluate(ones));
        double rhs = logh[col[group.product.at({i, j})]] - logh[col[i]] -
                     logh[col[j]];
        residual = std::max(residual, std::abs(lhs - rhs));
      }
    group.coboundary_residual = residual;
    if (residual >= 1e-9)
      throw InvariantViolation(
          "coboundary residual exceeds 1e-9; the 2-cocycle did not split");
    for (int a = 0; a < m; ++a)
      group.coboundary[group.elements[a]] = std::exp(logh[a]);
  }
  return group;
}

// ---------------------------------------------------------------------------
// Conjugation.
// ---------------------------------------------------------------------------

WeightedDigraph conjugate(const WeightedDigraph& g, const GenPerm& p) {
  if (p.size() != g.size())
    throw PolyError("conjugate: permutation size mismatch");
  PolyMatrix a2 = p.conjugate(g.adjacency_matrix());
  std::vector<std::string> labels(g.size());
  for (int i = 0; i < g.size(); ++i) labels[i] = g.vertices()[p.sigma[i]];
  WeightedDigraph out(labels, g.variables());
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (!a2.at(i, j).is_zero()) out.add_arrow(j, i, a2.at(i, j));
  return out;
}

MultiplicativeBasis conjugate_basis(const MultiplicativeBasis& b,
                                    const GenPerm& p) {
  const int n = b.size();
  const int nv = b.num_vars();
  if (p.size() != n) throw PolyError("conjugate_basis: size mismatch");
  GenPerm pinv = p.inverse();
  int new_root = pinv.sigma[b.root];

  // b'_i = (lambda_i / lambda_{new_root}) P^{-1} b_{sigma(i)} P, which is the
  // unique normalization with b'_{new_root} = 1.
  LaurentPoly norm = monomial_inverse(p.scalars[new_root]);
  MultiplicativeBasis out;
  out.adjacency = p.conjugate(b.adjacency);
  out.root = new_root;
  out.detM = b.detM;
  out.basis_numer.reserve(n);
  out.coeffs_in_powers.reserve(n);
  for (int i = 0; i < n; ++i) {
    LaurentPoly scale = p.scalars[i] * norm;
    out.basis_numer.push_back(
        p.conjugate(b.basis_numer[p.sigma[i]]).scaled(scale));
    std::vector<PolyFraction> coeffs;
    coeffs.reserve(n);
    for (int j = 0; j < n; ++j) {
      const PolyFraction& c = b.coeffs_in_powers[p.sigma[i]][j];
      coeffs.emplace_back(c.num * scale, c.den);
    }
    out.coeffs_in_powers.push_back(std::move(coeffs));
  }
  verify_basis(out, "conjugate_basis");
  (void)nv;
  return out;
}

}  // namespace pmgraph
