#include "pmgraph/spectral.hpp"

#include <cmath>

namespace pmgraph {

RealMatrix specialize(const PolyMatrix& a, const Specialization& theta) {
  for (double x : theta.t)
    if (!(x > 0.0)) throw SpectralError("specialization must be positive");
  return a.evaluate(theta.t);
}

namespace {

bool support_strongly_connected(const RealMatrix& m) {
  const int n = static_cast<int>(m.size());
  if (n <= 1) return true;
  auto reach = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        double entry = transpose ? m[w][v] : m[v][w];
        if (entry != 0.0 && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (bool s : seen)
      if (!s) return false;
    return true;
  };
  return reach(false) && reach(true);
}

std::vector<double> left_apply(const RealMatrix& m,
                               const std::vector<double>& v) {
  const int n = static_cast<int>(m.size());
  std::vector<double> r(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[j] += v[i] * m[i][j];
  return r;
}

}  // namespace

PFResult perron_frobenius(const RealMatrix& m,
                          const PowerIterationOptions& options) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw SpectralError("empty matrix");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n)
      throw SpectralError("matrix is not square");
    for (double x : row)
      if (x < 0.0 || !std::isfinite(x))
        throw SpectralError("matrix must be nonnegative");
  }
  if (!support_strongly_connected(m))
    throw SpectralError("matrix support is reducible");

  // Iterate v <- v^T (M + I), which converges for irreducible nonnegative
  // matrices because the shift makes them primitive.
  const int at = options.normalize_at;
  std::vector<double> v = options.start.empty() ? std::vector<double>(n, 1.0)
                                                : options.start;
  if (static_cast<int>(v.size()) != n)
    throw SpectralError("start vector has wrong length");
  for (double x : v)
    if (!(x > 0.0)) throw SpectralError("start vector must be positive");
  double lambda = 0.0;
  int iter = 0;
  double residual = 0.0;
  for (; iter < options.max_iterations; ++iter) {
    std::vector<double> w = left_apply(m, v);
    for (int i = 0; i < n; ++i) w[i] += v[i];  // + I
    double scale = w[at];
    if (!(scale > 0.0)) throw SpectralError("iteration lost positivity");
    for (int i = 0; i < n; ++i) w[i] /= scale;

    std::vector<double> wa = left_apply(m, w);
    lambda = wa[at] / w[at];
    residual = 0.0;
    for (int i = 0; i < n; ++i)
      residual = std::max(residual, std::abs(wa[i] - lambda * w[i]));
    v = std::move(w);
    if (lambda > 0.0 && residual / lambda <= options.tolerance) break;
  }
  if (iter >= options.max_iterations)
    throw SpectralError("power iteration did not converge");

  PFResult result;
  result.eigenvalue = lambda;
  result.left_vector = std::move(v);
  result.residual = residual / lambda;
  result.iterations = iter + 1;
  for (double x : result.left_vector)
    if (!(x > 0.0)) throw SpectralError("PF vector is not positive");
  return result;
}

RealTensor specialize(const StructureConstants& c,
                      const std::vector<double>& t) {
  RealTensor r;
  r.n = c.n;
  r.unit = c.root;
  r.c = c.evaluate(t);
  return r;
}

DimensionVector dimension_vector(const RealTensor& tensor, double tol,
                                 const std::vector<double>& start) {
  const int n = tensor.n;
  // SPM check on the specialized tensor.
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      bool nonzero = false;
      for (int i = 0; i < n && !nonzero; ++i)
        nonzero = tensor.at(i, j, k) != 0.0;
      if (!nonzero)
        throw SpectralError("tensor is not SPM: slice (" + std::to_string(j) +
                            "," + std::to_string(k) + ") vanishes");
    }

  // S = sum_i L_i with L_i[k][j] = c[i][j][k].
  RealMatrix s(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s[k][j] += tensor.at(i, j, k);

  PowerIterationOptions options;
  options.normalize_at = tensor.unit;
  options.start = start;
  PFResult pf = perron_frobenius(s, options);
  const std::vector<double>& v = pf.left_vector;

  // d_i from the unit coordinate of v^T R_i, R_i[k][j] = c[j][i][k].
  DimensionVector result;
  result.d.resize(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += v[k] * tensor.at(tensor.unit, i, k);
    result.d[i] = acc;  // v[unit] = 1
  }

  double err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double rhs = 0.0;
      for (int k = 0; k < n; ++k) rhs += tensor.at(i, j, k) * result.d[k];
      double lhs = result.d[i] * result.d[j];
      err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  result.morphism_error = err;
  if (err > tol)
    throw SpectralError("dimension vector fails the morphism identity");
  return result;
}

RealMatrix stochastic_matrix(const RealMatrix& a, const PFResult& pf) {
  const int n = static_cast<int>(a.size());
  const std::vector<double>& v = pf.left_vector;
  RealMatrix pi(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pi[i][j] = v[i] * a[i][j] / (pf.eigenvalue * v[j]);
  return pi;
}

}  // namespace pmgraph
