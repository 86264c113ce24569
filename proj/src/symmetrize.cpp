#include "pmgraph/symmetrize.hpp"

#include <numeric>

#include "json.hpp"

namespace pmgraph {

void ModuleAutomorphism::validate() const {
  const int n = size();
  if (static_cast<int>(lambdas.size()) != n)
    throw PolyError("automorphism: sigma/lambdas length mismatch");
  if (order < 1) throw PolyError("automorphism order must be >= 1");
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (sigma[i] < 0 || sigma[i] >= n || hit[sigma[i]])
      throw PolyError("automorphism: sigma is not a permutation");
    hit[sigma[i]] = true;
    if (!lambdas[i].is_positive_monomial())
      throw PolyError("automorphism: scalars must be positive monomials");
  }
  // omega^order = id exactly.
  for (int i = 0; i < n; ++i) {
    int x = i;
    LaurentPoly prod = LaurentPoly::one(lambdas[i].num_vars());
    for (int a = 0; a < order; ++a) {
      prod *= lambdas[x];
      x = sigma[x];
    }
    if (x != i || !prod.is_one())
      throw PolyError("automorphism: omega^order is not the identity");
  }
}

PolyMatrix ModuleAutomorphism::matrix(int num_vars) const {
  PolyMatrix w(size(), num_vars);
  for (int i = 0; i < size(); ++i) w.at(sigma[i], i) = lambdas[i];
  return w;
}

std::vector<std::vector<int>> orbits(const ModuleAutomorphism& omega) {
  omega.validate();
  const int n = omega.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> result;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    int x = start;
    do {
      orbit.push_back(x);
      seen[x] = true;
      x = omega.sigma[x];
    } while (x != start);
    result.push_back(std::move(orbit));
  }
  return result;  // start indices increase, so min-element order holds
}

namespace {

// Coordinates of omega^a(b_i) accumulated into acc.
void apply_power(const ModuleAutomorphism& omega, int i, int power,
                 std::vector<LaurentPoly>& acc) {
  int x = i;
  LaurentPoly scale = LaurentPoly::one(acc[0].num_vars());
  for (int a = 0; a < power; ++a) {
    scale *= omega.lambdas[x];
    x = omega.sigma[x];
  }
  acc[x] += scale;
}

bool is_module_automorphism(const StructureConstants& c, const PolyMatrix& w) {
  // W must commute with every left-multiplication matrix L_i.
  const int n = c.n;
  for (int i = 0; i < n; ++i) {
    PolyMatrix li(n, c.denom.num_vars());
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) li.at(k, j) = c.num_at(i, j, k);
    if (!(w * li == li * w)) return false;
  }
  return true;
}

bool is_algebra_automorphism(const StructureConstants& c,
                             const ModuleAutomorphism& omega) {
  const int n = c.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        LaurentPoly lhs = c.num_at(i, j, k) * omega.lambdas[k];
        LaurentPoly rhs = omega.lambdas[i] * omega.lambdas[j] *
                          c.num_at(omega.sigma[i], omega.sigma[j],
                                   omega.sigma[k]);
        if (lhs != rhs) return false;
      }
  return true;
}

}  // namespace

SymmetrizedBasis symmetrized_constants(const StructureConstants& c,
                                       const ModuleAutomorphism& omega) {
  omega.validate();
  const int n = c.n;
  const int nv = c.denom.num_vars();
  if (omega.size() != n)
    throw PolyError("automorphism size does not match the tensor");

  PolyMatrix w = omega.matrix(nv);
  if (!is_module_automorphism(c, w) && !is_algebra_automorphism(c, omega))
    throw PolyError(
        "omega is neither a module automorphism (commutation with the "
        "multiplication matrices fails) nor an algebra automorphism");

  SymmetrizedBasis s;
  s.orbit_list = orbits(omega);
  s.r = static_cast<int>(s.orbit_list.size());
  s.denom = c.denom;
  for (const auto& orbit : s.orbit_list) s.reps.push_back(orbit[0]);

  // s_l = sum_{a=0}^{m-1} omega^a(b_{i_l}). Each orbit element i_l' =
  // sigma^a(i_l) is hit m/|O_l| times; the scalar products along full cycles
  // are 1, so the coefficient on b_{i_l} is exactly m/|O_l|.
  for (int l = 0; l < s.r; ++l) {
    std::vector<LaurentPoly> coords(n, LaurentPoly(nv));
    for (int a = 0; a < omega.order; ++a)
      apply_power(omega, s.reps[l], a, coords);
    // omega-fixedness: W s_l = s_l.
    std::vector<LaurentPoly> moved(n, LaurentPoly(nv));
    for (int i = 0; i < n; ++i) {
      if (coords[i].is_zero()) continue;
      moved[omega.sigma[i]] += coords[i] * omega.lambdas[i];
    }
    if (moved != coords)
      throw InvariantViolation("symmetrize: omega(s_l) != s_l");
    s.s_vectors.push_back(std::move(coords));
  }

  // Products expanded over the original basis, then read off via the
  // disjoint supports of the s_l.
  s.tensor_numer.assign(static_cast<size_t>(s.r) * s.r * s.r,
                        LaurentPoly(nv));
  for (int l = 0; l < s.r; ++l)
    for (int lp = l; lp < s.r; ++lp) {
      std::vector<LaurentPoly> prod(n, LaurentPoly(nv));
      for (int i = 0; i < n; ++i) {
        if (s.s_vectors[l][i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
          if (s.s_vectors[lp][j].is_zero()) continue;
          LaurentPoly xy = s.s_vectors[l][i] * s.s_vectors[lp][j];
          for (int k = 0; k < n; ++k) {
            if (c.num_at(i, j, k).is_zero()) continue;
            prod[k] += xy * c.num_at(i, j, k);
          }
        }
      }
      // Coefficient of s_{l''}: the coordinate on b_{i_{l''}} divided by
      // its multiplicity m/|O_{l''}| inside s_{l''}.
      std::vector<LaurentPoly> check(n, LaurentPoly(nv));
      for (int lpp = 0; lpp < s.r; ++lpp) {
        int rep = s.reps[lpp];
        int mult = omega.order / static_cast<int>(s.orbit_list[lpp].size());
        LaurentPoly gamma_num = prod[rep];  // over denom * mult
        Rational inv_mult(1, mult);
        inv_mult.canonicalize();
        LaurentPoly gamma = gamma_num;
        gamma.scale(inv_mult);
        s.tensor_numer[(static_cast<size_t>(l) * s.r + lp) * s.r + lpp] = gamma;
        s.tensor_numer[(static_cast<size_t>(lp) * s.r + l) * s.r + lpp] = gamma;
        for (int i = 0; i < n; ++i) {
          if (s.s_vectors[lpp][i].is_zero()) continue;
          check[i] += gamma * s.s_vectors[lpp][i];
        }
      }
      // The product must lie in span(s_0..s_{r-1}) coordinate-for-
      // coordinate; anything else means omega was not an automorphism.
      if (check != prod)
        throw InvariantViolation(
            "symmetrize: product of s-elements leaves the symmetrized span");
    }
  return s;
}

ModuleAutomorphism parse_automorphism_json(
    const std::string& text, const std::vector<std::string>& var_names) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw PolyError(std::string("automorphism JSON parse error: ") +
                    err.what());
  }
  if (!doc.contains("sigma") || !doc["sigma"].is_array())
    throw PolyError("automorphism JSON needs a 'sigma' array");
  ModuleAutomorphism omega;
  for (const auto& v : doc["sigma"]) omega.sigma.push_back(v.get<int>());
  const int n = omega.size();
  if (doc.contains("lambdas")) {
    for (const auto& v : doc["lambdas"])
      omega.lambdas.push_back(parse_poly(v.get<std::string>(), var_names));
  } else {
    omega.lambdas.assign(
        n, LaurentPoly::one(static_cast<int>(var_names.size())));
  }
  if (doc.contains("order")) {
    omega.order = doc["order"].get<int>();
  } else {
    // Minimal order: iterate until identity, bounded by lcm considerations.
    omega.order = 1;
    for (int guard = 0; guard < 1 << 20; ++guard) {
      bool is_id = true;
      for (int i = 0; i < n && is_id; ++i) {
        int x = i;
        LaurentPoly prod = LaurentPoly::one(omega.lambdas[i].num_vars());
        for (int a = 0; a < omega.order; ++a) {
          prod *= omega.lambdas[x];
          x = omega.sigma[x];
        }
        is_id = (x == i) && prod.is_one();
      }
      if (is_id) break;
      ++omega.order;
    }
  }
  omega.validate();
  return omega;
}

}  // namespace pmgraph
