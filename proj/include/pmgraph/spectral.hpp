#ifndef PMGRAPH_SPECTRAL_HPP
#define PMGRAPH_SPECTRAL_HPP

#include <vector>

#include "pmgraph/basis.hpp"
#include "pmgraph/poly_matrix.hpp"

namespace pmgraph {

using RealMatrix = std::vector<std::vector<double>>;

// Positive values for z_1..z_m, plus an optional value for the grading
// indeterminate q used by expansions.
struct Specialization {
  std::vector<double> t;
  double s = 1.0;
};

class SpectralError : public std::runtime_error {
 public:
  explicit SpectralError(const std::string& what) : std::runtime_error(what) {}
};

RealMatrix specialize(const PolyMatrix& a, const Specialization& theta);

// Left Perron-Frobenius data of an irreducible nonnegative matrix:
// v^T A = lambda v^T with v > 0 and v[normalized_at] = 1.
struct PFResult {
  double eigenvalue = 0.0;
  std::vector<double> left_vector;
  double residual = 0.0;
  int iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;
  int max_iterations = 100000;
  int normalize_at = 0;
  std::vector<double> start;  // positive start vector; all-ones when empty
};

// Power iteration on (M + I); the shift makes irreducible matrices primitive
// so the iteration converges. Throws on reducible support or
// non-convergence.
PFResult perron_frobenius(const RealMatrix& m,
                          const PowerIterationOptions& options = {});

struct DimensionVector {
  std::vector<double> d;
  double morphism_error = 0.0;  // max |d_i d_j - sum_k c[i][j][k] d_k|
};

// Real structure-constant tensor, c[(i*n+j)*n+k].
struct RealTensor {
  int n = 0;
  std::vector<double> c;
  int unit = 0;  // index of the basis element 1

  double at(int i, int j, int k) const {
    return c[(static_cast<size_t>(i) * n + j) * n + k];
  }
};

RealTensor specialize(const StructureConstants& c, const std::vector<double>& t);

// The unique positive algebra morphism of an SPM tensor, read from the left
// PF vector of S = sum_i L_i (Theorem on strongly positively multiplicative
// algebras). Verifies d_i d_j = sum_k c[i][j][k] d_k within tol. A nonempty
// start vector seeds the underlying power iteration.
DimensionVector dimension_vector(const RealTensor& c, double tol = 1e-8,
                                 const std::vector<double>& start = {});

// Pi[i][j] = v_i A[i][j] / (lambda v_j); columns sum to 1.
RealMatrix stochastic_matrix(const RealMatrix& a, const PFResult& pf);

}  // namespace pmgraph

#endif  // PMGRAPH_SPECTRAL_HPP
