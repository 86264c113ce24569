#include "pmgraph/poly_matrix.hpp"

#include <random>

#include "doctest.h"

using namespace pmgraph;

namespace {

const std::vector<std::string> kZ12 = {"z1", "z2"};
const std::vector<std::string> kZ123 = {"z1", "z2", "z3"};

PolyMatrix matrix_from(const std::vector<std::vector<std::string>>& rows,
                       const std::vector<std::string>& vars) {
  int n = static_cast<int>(rows.size());
  PolyMatrix m(n, static_cast<int>(vars.size()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = parse_poly(rows[i][j], vars);
  return m;
}

// Adjacency matrix of Example "Counterexample": rows (0,z1,z2),(1,0,1),(1,1,0).
PolyMatrix counterexample_a() {
  return matrix_from({{"0", "z1", "z2"}, {"1", "0", "1"}, {"1", "1", "0"}},
                     kZ12);
}

PolyMatrix kschur3_a() {
  return matrix_from({{"0", "0", "z1", "z3", "z2", "0"},
                      {"1", "0", "0", "0", "0", "z2"},
                      {"0", "1", "0", "0", "0", "z3"},
                      {"0", "1", "0", "0", "0", "z1"},
                      {"0", "0", "1", "1", "0", "0"},
                      {"0", "0", "0", "0", "1", "0"}},
                     kZ123);
}

PolyMatrix random_matrix(std::mt19937& rng, int n, int num_vars) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> expo(-1, 1);
  std::uniform_int_distribution<int> sparse(0, 3);
  PolyMatrix m(n, num_vars);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sparse(rng) == 0) continue;
      Exponents e(num_vars);
      for (int v = 0; v < num_vars; ++v) e[v] = expo(rng);
      m.at(i, j) = LaurentPoly::monomial(num_vars, Rational(coef(rng)), e);
      if (sparse(rng) == 1)
        m.at(i, j) += LaurentPoly::constant(num_vars, Rational(coef(rng)));
    }
  return m;
}

}  // namespace

TEST_CASE("determinants of the counterexample path matrices") {
  PolyMatrix m0 = matrix_from(
      {{"1", "0", "z1+z2"}, {"0", "1", "1"}, {"0", "1", "1"}}, kZ12);
  PolyMatrix m1 = matrix_from(
      {{"0", "z1", "z2"}, {"1", "0", "z1+1"}, {"0", "1", "z1"}}, kZ12);
  PolyMatrix m2 = matrix_from(
      {{"0", "z2", "z1"}, {"0", "1", "z2"}, {"1", "0", "z2+1"}}, kZ12);
  CHECK(det(m0).is_zero());
  CHECK(det(m1) == parse_poly("z2-z1^2", kZ12));
  CHECK(det(m2) == parse_poly("z2^2-z1", kZ12));
  CHECK(det(PolyMatrix::identity(4, 2)).is_one());
}

TEST_CASE("det handles Laurent entries via row clearing") {
  PolyMatrix m = matrix_from({{"z1^-1", "1"}, {"1", "z1"}}, kZ12);
  CHECK(det(m).is_zero());
  PolyMatrix m2 = matrix_from({{"z1^-2", "0"}, {"z2", "z2^-1"}}, kZ12);
  CHECK(det(m2) == parse_poly("z1^-2*z2^-1", kZ12));
}

TEST_CASE("det multiplicativity on random pairs") {
  std::mt19937 rng(2024);
  for (int it = 0; it < 25; ++it) {
    PolyMatrix a = random_matrix(rng, 4, 2);
    PolyMatrix b = random_matrix(rng, 4, 2);
    CHECK(det(a * b) == det(a) * det(b));
  }
}

TEST_CASE("adjugate inverse") {
  auto id_inv = adjugate_inverse(PolyMatrix::identity(3, 2));
  REQUIRE(id_inv.has_value());
  CHECK(id_inv->denom.is_one());
  CHECK(id_inv->numer.is_identity());

  // Singular iff det = 0 (M_0 of the counterexample).
  PolyMatrix m0 = matrix_from(
      {{"1", "0", "z1+z2"}, {"0", "1", "1"}, {"0", "1", "1"}}, kZ12);
  CHECK(!adjugate_inverse(m0).has_value());

  std::mt19937 rng(5);
  int done = 0;
  while (done < 10) {
    PolyMatrix m = random_matrix(rng, 3, 2);
    auto inv = adjugate_inverse(m);
    if (!inv) continue;
    CHECK(m * inv->numer ==
          PolyMatrix::identity(3, 2).scaled(inv->denom));
    ++done;
  }
}

TEST_CASE("kSchur3: M_0 inverse matches the displayed matrix") {
  PolyMatrix a = kschur3_a();
  // Build M_0 columns as A^j e_0.
  PolyMatrix m0(6, 3);
  std::vector<LaurentPoly> col(6, LaurentPoly(3));
  col[0] = LaurentPoly::one(3);
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) m0.at(i, j) = col[i];
    col = a.apply(col);
  }
  PolyMatrix m0_expected = matrix_from({{"1", "0", "0", "z1+z3", "2*z2", "0"},
                                        {"0", "1", "0", "0", "z1+z3", "4*z2"},
                                        {"0", "0", "1", "0", "0", "z1+3*z3"},
                                        {"0", "0", "1", "0", "0", "3*z1+z3"},
                                        {"0", "0", "0", "2", "0", "0"},
                                        {"0", "0", "0", "0", "2", "0"}},
                                       kZ123);
  CHECK(m0 == m0_expected);

  auto inv = adjugate_inverse(m0);
  REQUIRE(inv.has_value());

  // Displayed M_0^{-1}, entries as numerator/denominator pairs.
  auto fr = [&](const std::string& n, const std::string& d) {
    return PolyFraction(parse_poly(n, kZ123), parse_poly(d, kZ123));
  };
  std::vector<std::vector<PolyFraction>> expected(
      6, std::vector<PolyFraction>(6, fr("0", "1")));
  expected[0][0] = fr("1", "1");
  expected[0][4] = fr("0-z1-z3", "2");
  expected[0][5] = fr("0-z2", "1");
  expected[1][1] = fr("1", "1");
  expected[1][2] = fr("2*z2", "z1-z3");
  expected[1][3] = fr("2*z2", "z3-z1");
  expected[1][5] = fr("0-z1-z3", "2");
  expected[2][2] = fr("3*z1+z3", "2*z1-2*z3");
  expected[2][3] = fr("z1+3*z3", "2*z3-2*z1");
  expected[3][4] = fr("1", "2");
  expected[4][5] = fr("1", "2");
  expected[5][2] = fr("0-1", "2*z1-2*z3");
  expected[5][3] = fr("0-1", "2*z3-2*z1");

  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(inv->entry(i, j).equals(expected[i][j]));
    }
}

TEST_CASE("minimal polynomial of the counterexample matrix") {
  PolyUnivariate mu = minimal_polynomial(counterexample_a());
  REQUIRE(mu.degree() == 3);
  // (X+1)(X^2 - X - z1 - z2) = X^3 - (1+z1+z2) X - (z1+z2)
  CHECK(mu.coeffs[3].equals_poly(parse_poly("1", kZ12)));
  CHECK(mu.coeffs[2].is_zero());
  CHECK(mu.coeffs[1].equals_poly(parse_poly("0-1-z1-z2", kZ12)));
  CHECK(mu.coeffs[0].equals_poly(parse_poly("0-z1-z2", kZ12)));
}

TEST_CASE("minimal polynomial of the kSchur3 matrix") {
  PolyUnivariate mu = minimal_polynomial(kschur3_a());
  REQUIRE(mu.degree() == 6);
  // T^6 - 2(z1+z3) T^3 - 4 z2 T^2 + (z1-z3)^2
  CHECK(mu.coeffs[6].equals_poly(parse_poly("1", kZ123)));
  CHECK(mu.coeffs[5].is_zero());
  CHECK(mu.coeffs[4].is_zero());
  CHECK(mu.coeffs[3].equals_poly(parse_poly("0-2*z1-2*z3", kZ123)));
  CHECK(mu.coeffs[2].equals_poly(parse_poly("0-4*z2", kZ123)));
  CHECK(mu.coeffs[1].is_zero());
  CHECK(mu.coeffs[0].equals_poly(parse_poly("z1^2-2*z1*z3+z3^2", kZ123)));
}

TEST_CASE("minimal polynomial annihilates and divides characteristic poly") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> point(0.2, 2.0);
  for (int it = 0; it < 8; ++it) {
    PolyMatrix a = random_matrix(rng, 4, 1);
    PolyUnivariate mu = minimal_polynomial(a);
    CHECK(mu.degree() <= 4);
    FracMatrix value = mu.eval_at(a);
    CHECK(value.numer.is_zero());

    // Cayley-Hamilton cross-check at a random positive specialization:
    // mu evaluated on each eigenvalue of the characteristic polynomial is
    // subsumed by checking mu(A_t) = 0 numerically.
    std::vector<double> t = {point(rng)};
    auto at = a.evaluate(t);
    int n = a.size();
    std::vector<std::vector<double>> acc(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> pw(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) pw[i][i] = 1.0;
    for (int d = 0; d <= mu.degree(); ++d) {
      double c = mu.coeffs[d].evaluate(t);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc[i][j] += c * pw[i][j];
      // pw <- pw * A_t
      std::vector<std::vector<double>> nx(n, std::vector<double>(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) nx[i][j] += pw[i][k] * at[k][j];
      pw = nx;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(acc[i][j]) < 1e-9 * (1.0 + std::abs(at[i][j])));
  }
}

TEST_CASE("poly_in_a basics") {
  PolyMatrix a = counterexample_a();
  std::vector<PolyFraction> unit = {
      PolyFraction::from_poly(LaurentPoly::one(2))};
  CHECK(poly_in_a(unit, a).numer.is_identity());

  std::vector<PolyFraction> pick_a2 = {
      PolyFraction::from_poly(LaurentPoly(2)),
      PolyFraction::from_poly(LaurentPoly(2)),
      PolyFraction::from_poly(LaurentPoly::one(2))};
  FracMatrix a2 = poly_in_a(pick_a2, a);
  CHECK(a2.denom.is_one());
  CHECK(a2.numer == a * a);
}

TEST_CASE("kSchur3: b_2 from its coefficient vector") {
  PolyMatrix a = kschur3_a();
  auto fr = [&](const std::string& n, const std::string& d) {
    return PolyFraction(parse_poly(n, kZ123), parse_poly(d, kZ123));
  };
  std::vector<PolyFraction> coeffs = {
      fr("0", "1"),
      fr("2*z2", "z1-z3"),
      fr("3*z1+z3", "2*z1-2*z3"),
      fr("0", "1"),
      fr("0", "1"),
      fr("0-1", "2*z1-2*z3")};
  FracMatrix b2 = poly_in_a(coeffs, a);
  PolyMatrix expected = matrix_from({{"0", "z1", "z2", "0", "0", "z1*z3"},
                                     {"0", "0", "z1", "0", "z2", "0"},
                                     {"1", "0", "0", "0", "0", "0"},
                                     {"0", "0", "0", "0", "z1", "z2"},
                                     {"0", "1", "0", "0", "0", "z1"},
                                     {"0", "0", "0", "1", "0", "0"}},
                                    kZ123);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(b2.entry(i, j).equals_poly(expected.at(i, j)));
    }
}
