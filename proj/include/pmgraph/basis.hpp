#ifndef PMGRAPH_BASIS_HPP
#define PMGRAPH_BASIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pmgraph/digraph.hpp"
#include "pmgraph/poly_matrix.hpp"

namespace pmgraph {

// Thrown when a verified invariant fails, which signals an implementation
// bug or corrupted input, never a negative mathematical verdict.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::runtime_error(what) {}
};

// The normalized basis B_{i0} = {b_0, ..., b_{n-1}} with b_{i0} = 1.
// Every b_i is basis_numer[i] / detM, and coeffs_in_powers[i] expresses b_i
// over {1, A, ..., A^{n-1}}.
struct MultiplicativeBasis {
  PolyMatrix adjacency;
  int root = 0;
  LaurentPoly detM;
  std::vector<PolyMatrix> basis_numer;
  std::vector<std::vector<PolyFraction>> coeffs_in_powers;

  int size() const { return adjacency.size(); }
  int num_vars() const { return adjacency.num_vars(); }
  FracMatrix element(int i) const {
    return FracMatrix(basis_numer[i], detM);
  }
};

// Structure constants c[i][j][k] with the shared denominator detM:
// b_i b_j = sum_k c[i][j][k] b_k, read off the columns of the b_i.
struct StructureConstants {
  int n = 0;
  LaurentPoly denom;                  // detM
  std::vector<LaurentPoly> numer;     // [((i*n)+j)*n + k]
  int root = 0;

  StructureConstants() = default;
  StructureConstants(int n_, LaurentPoly denom_, int root_)
      : n(n_), denom(std::move(denom_)),
        numer(static_cast<size_t>(n_) * n_ * n_, LaurentPoly(denom.num_vars())),
        root(root_) {}

  const LaurentPoly& num_at(int i, int j, int k) const {
    return numer[(static_cast<size_t>(i) * n + j) * n + k];
  }
  LaurentPoly& num_at(int i, int j, int k) {
    return numer[(static_cast<size_t>(i) * n + j) * n + k];
  }
  PolyFraction at(int i, int j, int k) const {
    return PolyFraction(num_at(i, j, k), denom);
  }
  // The exact Laurent polynomial when denom divides, otherwise nullopt.
  std::optional<LaurentPoly> polynomial_at(int i, int j, int k) const {
    return exact_divide(num_at(i, j, k), denom);
  }
  // Specializes the whole tensor at a positive point.
  std::vector<double> evaluate(const std::vector<double>& t) const;
};

struct ComputeBasisOptions {
  bool verify = true;  // check the ThGG2 invariants before returning
};

// Outcome diagnostics for compute_basis.
struct BasisDiagnostics {
  bool strongly_connected = true;
  std::vector<std::string> warnings;
};

// Basis of Theorem ThGG2 at the given root: b_i = poly_in_A(column i of
// M_{i0}^{-1}). Returns nullopt (NotMultiplicativeAtRoot) iff det M_{i0} = 0,
// i.e. e_{i0} is not a cyclic vector.
std::optional<MultiplicativeBasis> compute_basis(
    const WeightedDigraph& g, int root, BasisDiagnostics* diag = nullptr,
    const ComputeBasisOptions& options = {});

// Same procedure starting from a bare adjacency matrix.
std::optional<MultiplicativeBasis> compute_basis_from_adjacency(
    const PolyMatrix& a, int root, const ComputeBasisOptions& options = {});

StructureConstants structure_constants(const MultiplicativeBasis& b);

struct PositivityWitness {
  int i = 0, j = 0, k = 0;
  PolyFraction value;
};

// yes iff every c[i][j][k] is an exactly-divisible Laurent polynomial with
// nonnegative coefficients; otherwise the first failing triple.
std::optional<PositivityWitness> is_positively_multiplicative_at(
    const StructureConstants& c);

// Positivity under a specialization: every c[i][j][k](t) >= -tol.
std::optional<PositivityWitness> is_positively_multiplicative_at(
    const StructureConstants& c, const std::vector<double>& t,
    double tol = 1e-12);

// SPM: every (j,k) slice has a nonzero entry.
bool is_spm(const StructureConstants& c);

// Fusion axiom: star an involution fixing the root with
// c[i][j][k] = c[star(i)][k][j] and star an anti-automorphism.
bool verify_fusion(const StructureConstants& c, const std::vector<int>& star);

// Generalized permutation e_i -> scalars[i] * e_{sigma(i)}; scalars are
// positive monomials.
struct GenPerm {
  std::vector<int> sigma;
  std::vector<LaurentPoly> scalars;

  int size() const { return static_cast<int>(sigma.size()); }
  static GenPerm identity(int n, int num_vars);
  GenPerm inverse() const;
  GenPerm compose(const GenPerm& then) const;  // apply *this first, then `then`
  PolyMatrix matrix(int num_vars) const;
  PolyMatrix conjugate(const PolyMatrix& a) const;  // P^{-1} A P
};

std::optional<GenPerm> gen_perm_of(const FracMatrix& m);

// Root move: B_j = b_j^{-1} B_{i0}. Returns nullopt (RootNotInvertible) when
// det b_j = 0 over the fraction field.
std::optional<MultiplicativeBasis> rebase(const MultiplicativeBasis& b, int j);

struct PositiveRootsOptions {
  int oracle_bound = 12;  // rebase-all-roots cross-check up to this size
};

// Indices i such that the graph is positively multiplicative at v_i.
// Fast path: indices whose b_i is a generalized permutation. For
// n <= oracle_bound the rebase oracle runs too and must agree.
std::set<int> positive_roots(const MultiplicativeBasis& b,
                             const PositiveRootsOptions& options = {});

struct MaximalIndexGroup {
  std::vector<int> elements;                       // sorted members of I_m
  int identity = 0;                                // the root
  std::map<std::pair<int, int>, int> product;      // (i, j) -> i*j
  std::map<std::pair<int, int>, LaurentPoly> scalar;  // lambda_{i,j}
  // Coboundary h with lambda(i,j) = h(i*j)/(h(i) h(j)) at the all-ones
  // specialization; empty when the solve was skipped.
  std::map<int, double> coboundary;
  double coboundary_residual = 0.0;

  // Cyclic invariant factors d_1 | d_2 | ... describing the abelian group.
  std::vector<int> invariant_factors() const;
};

MaximalIndexGroup maximal_index_group(const MultiplicativeBasis& b);

// Graph with adjacency P^{-1} A P. Vertex i of the result carries the label
// of vertex sigma(i) of the input.
WeightedDigraph conjugate(const WeightedDigraph& g, const GenPerm& p);

// Transforms a basis along the conjugation: b_i^P = lambda_{sigma(i)} P^{-1}
// b_{sigma(i)} P with the root moved to sigma^{-1}(root). Invariants are
// re-verified against the conjugated adjacency matrix.
MultiplicativeBasis conjugate_basis(const MultiplicativeBasis& b,
                                    const GenPerm& p);

}  // namespace pmgraph

#endif  // PMGRAPH_BASIS_HPP
