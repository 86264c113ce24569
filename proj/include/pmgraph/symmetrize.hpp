#ifndef PMGRAPH_SYMMETRIZE_HPP
#define PMGRAPH_SYMMETRIZE_HPP

#include <string>
#include <vector>

#include "pmgraph/basis.hpp"

namespace pmgraph {

// Finite-order module automorphism omega(b_i) = lambdas[i] * b_{sigma[i]}.
// Validation checks that omega^order is exactly the identity (sigma^order =
// id and the scalar products along every cycle collapse to 1).
struct ModuleAutomorphism {
  std::vector<int> sigma;
  std::vector<LaurentPoly> lambdas;
  int order = 1;

  int size() const { return static_cast<int>(sigma.size()); }
  void validate() const;
  // Coordinate matrix W with W[sigma(i)][i] = lambdas[i].
  PolyMatrix matrix(int num_vars) const;
};

// omega-orbits of {0..n-1}, ordered by minimal element, so the orbit of 0
// comes first. Each orbit lists its elements in traversal order from the
// representative min(O_l).
std::vector<std::vector<int>> orbits(const ModuleAutomorphism& omega);

// s_l = sum_{a=0}^{m-1} omega^a(b_{i_l}) stored as coordinates over the
// original basis, plus the r^3 tensor of S(B).
struct SymmetrizedBasis {
  std::vector<int> reps;                        // i_l = min(O_l)
  std::vector<std::vector<int>> orbit_list;
  std::vector<std::vector<LaurentPoly>> s_vectors;  // coords over b_0..b_{n-1}
  int r = 0;
  // tensor numerators over denom: s_l s_l' = sum c~[l][l'][l''] s_l''.
  std::vector<LaurentPoly> tensor_numer;
  LaurentPoly denom;

  PolyFraction at(int l, int lp, int lpp) const {
    return PolyFraction(
        tensor_numer[(static_cast<size_t>(l) * r + lp) * r + lpp], denom);
  }
};

// Computes the symmetrized structure constants. Requires omega to be a
// module automorphism (W commutes with every left-multiplication matrix) or
// an algebra automorphism (c[i][j][k] lambda_k = lambda_i lambda_j
// c[si][sj][sk]); throws otherwise.
SymmetrizedBasis symmetrized_constants(const StructureConstants& c,
                                       const ModuleAutomorphism& omega);

// JSON: {"sigma": [1,0,...], "lambdas": ["1","z1",...]}; "order" optional
// (minimal order is inferred when absent).
ModuleAutomorphism parse_automorphism_json(
    const std::string& text, const std::vector<std::string>& var_names);

}  // namespace pmgraph

#endif  // PMGRAPH_SYMMETRIZE_HPP
