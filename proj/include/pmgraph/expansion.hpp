#ifndef PMGRAPH_EXPANSION_HPP
#define PMGRAPH_EXPANSION_HPP

#include <string>
#include <vector>

#include "pmgraph/digraph.hpp"
#include "pmgraph/spectral.hpp"

namespace pmgraph {

// Node (v_i, z^beta, level) of the expanded graph.
struct ExpNode {
  int vertex = 0;
  Exponents beta;
  int level = 0;
};

// Arrow between consecutive levels; the multiplicity is the coefficient of
// the monomial on the underlying graph arrow.
struct ExpArrow {
  int from = 0;  // node index
  int to = 0;
  Rational multiplicity;
};

struct ExpansionGraph {
  int num_vars = 0;
  int root_vertex = 0;
  std::vector<ExpNode> nodes;              // sorted by (level, vertex, beta)
  std::vector<std::vector<int>> levels;    // node indices per level
  std::vector<ExpArrow> arrows;
  std::vector<std::vector<int>> out_arrows;  // arrow indices per node

  std::vector<int> level_sizes() const {
    std::vector<int> s;
    s.reserve(levels.size());
    for (const auto& l : levels) s.push_back(static_cast<int>(l.size()));
    return s;
  }
  int find_node(int vertex, const Exponents& beta, int level) const;
};

// Slice of the infinite expansion up to the given depth, built breadth-first
// on the monomial-split graph from (root, z^0, 0). From a node at vertex v,
// every graph arrow v -> v' with weight c z^delta contributes an expansion
// arrow to (v', beta + delta, level + 1) with multiplicity c.
ExpansionGraph expand(const WeightedDigraph& g, int depth, int root = 0);

struct HarmonicAssignment {
  Specialization theta;
  double eigenvalue = 0.0;  // PF eigenvalue of A_t
  double s = 0.0;           // value assigned to q
  std::vector<double> values;  // indexed like ExpansionGraph::nodes
};

// The extremal harmonic function f_t(v_i, z^beta, q^l) = t^beta s^l pi_i
// attached to a positive specialization t; pi is the left PF vector of A_t
// normalized at the root vertex and s = 1/lambda comes from the root's
// out-arrows.
HarmonicAssignment harmonic_from_t(const WeightedDigraph& g,
                                   const PFResult& pf,
                                   const Specialization& theta,
                                   const ExpansionGraph& e);

// Checks f(v) = sum over arrows v -> v' of multiplicity * f(v') for every
// node below the top level, within relative tolerance.
bool verify_harmonic(const HarmonicAssignment& h, const ExpansionGraph& e,
                     double tol);

// JSON export: nodes as [vertex, beta, level] plus arrows with
// multiplicities, in the stable (level, vertex, lex beta) order.
std::string expansion_to_json(const ExpansionGraph& e,
                              const WeightedDigraph& g,
                              const HarmonicAssignment* harmonic = nullptr);

}  // namespace pmgraph

#endif  // PMGRAPH_EXPANSION_HPP
