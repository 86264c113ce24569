// Shared builders for the recurring example graphs.
#ifndef PMGRAPH_TEST_GRAPHS_HPP
#define PMGRAPH_TEST_GRAPHS_HPP

#include <string>
#include <vector>

#include "pmgraph/digraph.hpp"

namespace pmgraph::testgraphs {

// 3 vertices, A = ((0,z1,z2),(1,0,1),(1,1,0)).
inline WeightedDigraph counterexample() {
  std::vector<std::string> vars = {"z1", "z2"};
  WeightedDigraph g({"v0", "v1", "v2"}, vars);
  g.add_arrow(1, 0, parse_poly("z1", vars));
  g.add_arrow(2, 0, parse_poly("z2", vars));
  g.add_arrow(0, 1, parse_poly("1", vars));
  g.add_arrow(2, 1, parse_poly("1", vars));
  g.add_arrow(0, 2, parse_poly("1", vars));
  g.add_arrow(1, 2, parse_poly("1", vars));
  return g;
}

// 6-vertex graph with the k-Schur-like adjacency matrix in z1, z2, z3.
inline WeightedDigraph kschur3() {
  std::vector<std::string> vars = {"z1", "z2", "z3"};
  WeightedDigraph g({"v0", "v1", "v2", "v3", "v4", "v5"}, vars);
  std::vector<std::vector<std::string>> rows = {
      {"0", "0", "z1", "z3", "z2", "0"}, {"1", "0", "0", "0", "0", "z2"},
      {"0", "1", "0", "0", "0", "z3"},   {"0", "1", "0", "0", "0", "z1"},
      {"0", "0", "1", "1", "0", "0"},    {"0", "0", "0", "0", "1", "0"}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (rows[i][j] != "0") g.add_arrow(j, i, parse_poly(rows[i][j], vars));
  return g;
}

// Companion graph of X^4 - 2X^3 - X^2 - 3X - 4 (variable-free).
inline WeightedDigraph companion4() {
  WeightedDigraph g({"1", "X", "X^2", "X^3"}, {});
  auto c = [](long v) { return LaurentPoly::constant(0, Rational(v)); };
  g.add_arrow(0, 1, c(1));
  g.add_arrow(1, 2, c(1));
  g.add_arrow(2, 3, c(1));
  g.add_arrow(3, 0, c(4));
  g.add_arrow(3, 1, c(3));
  g.add_arrow(3, 2, c(1));
  g.add_arrow(3, 3, c(2));
  return g;
}

// The q-cycle: v0 -> v1 -> v2 -> v0 plus v2 -> v1 weighted q.
inline WeightedDigraph qcycle_symbolic() {
  std::vector<std::string> vars = {"q"};
  WeightedDigraph g({"v0", "v1", "v2"}, vars);
  g.add_arrow(0, 1, parse_poly("1", vars));
  g.add_arrow(1, 2, parse_poly("1", vars));
  g.add_arrow(2, 0, parse_poly("1", vars));
  g.add_arrow(2, 1, parse_poly("q", vars));
  return g;
}

inline WeightedDigraph qcycle_at(long q) {
  WeightedDigraph g({"v0", "v1", "v2"}, {});
  auto c = [](long v) { return LaurentPoly::constant(0, Rational(v)); };
  g.add_arrow(0, 1, c(1));
  g.add_arrow(1, 2, c(1));
  g.add_arrow(2, 0, c(1));
  if (q != 0) g.add_arrow(2, 1, c(q));
  return g;
}

// Tridiagonal 0/1 path graph on l+1 vertices (adjacency A_l of B^s_{l,2}).
inline WeightedDigraph su2_path(int l) {
  std::vector<std::string> labels;
  for (int i = 0; i <= l; ++i) labels.push_back("b" + std::to_string(i));
  WeightedDigraph g(labels, {});
  for (int i = 0; i < l; ++i) {
    g.add_arrow(i, i + 1, LaurentPoly::one(0));
    g.add_arrow(i + 1, i, LaurentPoly::one(0));
  }
  return g;
}

// Z/2 x Z/2 group-algebra graph: U = a T + b T' with symbolic a = z1, b = z2.
inline WeightedDigraph klein_symbolic() {
  std::vector<std::string> vars = {"z1", "z2"};
  WeightedDigraph g({"00", "10", "01", "11"}, vars);
  auto arrow = [&](int i, int j, const char* w) {
    g.add_arrow(j, i, parse_poly(w, vars));  // entry U[i][j]
  };
  arrow(0, 1, "z1");
  arrow(1, 0, "z1");
  arrow(2, 3, "z1");
  arrow(3, 2, "z1");
  arrow(0, 2, "z2");
  arrow(2, 0, "z2");
  arrow(1, 3, "z2");
  arrow(3, 1, "z2");
  return g;
}

// Two vertices, return weights z1 and z2: A = ((0, z1+z2), (1, 0)).
inline WeightedDigraph two_vertex_z1z2() {
  std::vector<std::string> vars = {"z1", "z2"};
  WeightedDigraph g({"empty", "box"}, vars);
  g.add_arrow(0, 1, parse_poly("1", vars));
  g.add_arrow(1, 0, parse_poly("z1+z2", vars));
  return g;
}

// Directed n-cycle with unit weights (group algebra of Z/n).
inline WeightedDigraph cycle(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  WeightedDigraph g(labels, {});
  for (int i = 0; i < n; ++i)
    g.add_arrow(i, (i + 1) % n, LaurentPoly::one(0));
  return g;
}

}  // namespace pmgraph::testgraphs

#endif  // PMGRAPH_TEST_GRAPHS_HPP
