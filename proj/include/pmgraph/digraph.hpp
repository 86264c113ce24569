#ifndef PMGRAPH_DIGRAPH_HPP
#define PMGRAPH_DIGRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "pmgraph/poly_matrix.hpp"

namespace pmgraph {

struct Arrow {
  int from = 0;
  int to = 0;
  LaurentPoly weight;
  std::optional<int> color;  // crystal generators attach arrow colors
};

// Vertex-labelled digraph with arrow weights in k_+[Z^{+-1}]. Parallel input
// arrows are merged by weight addition at load time, so at most one arrow is
// stored per (from, to) pair. The convention throughout: an arrow
// v_j -> v_i carries the adjacency entry A[i][j], i.e. the coefficient of
// b_i in A*b_j.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(std::vector<std::string> vertices,
                  std::vector<std::string> variables);

  int size() const { return static_cast<int>(vertices_.size()); }
  int num_vars() const { return static_cast<int>(variables_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  int vertex_index(const std::string& label) const;  // -1 if absent

  // Adds (merging into an existing arrow if present). The merged weight must
  // be a nonzero element of k_+[Z^{+-1}].
  void add_arrow(int from, int to, const LaurentPoly& weight);

  PolyMatrix adjacency_matrix() const;
  bool is_strongly_connected() const;
  // Vertices with no outgoing or no incoming arrow (accepted but flagged).
  std::vector<std::string> degree_warnings() const;

  // n x n matrix whose column j is A^j e_{i0}: entry (i, j) sums the weights
  // of the length-j paths from v_{i0} to v_i.
  PolyMatrix path_count_matrix(int root) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<std::string> variables_;
  std::vector<Arrow> arrows_;
};

// One arrow per monomial term; parallel arrows allowed. Every weight is a
// positive monomial c z^beta.
struct MonomialArrow {
  int from = 0;
  int to = 0;
  Rational coefficient;  // c > 0
  Exponents exponent;    // beta
};

struct MonomialDigraph {
  int num_vertices = 0;
  int num_vars = 0;
  std::vector<MonomialArrow> arrows;
};

MonomialDigraph split_monomial_arrows(const WeightedDigraph& g);

// JSON graph format:
//   {"variables": ["z1","z2"], "vertices": ["v0",...],
//    "arrows": [{"from": "v0", "to": "v1", "weight": "1"}, ...]}
// An arrow from "v0" to "v1" with weight w contributes w to A[v1][v0].
struct LoadedGraph {
  WeightedDigraph graph;
  std::vector<std::string> warnings;
};

class GraphFormatError : public std::runtime_error {
 public:
  explicit GraphFormatError(const std::string& what)
      : std::runtime_error(what) {}
};

LoadedGraph load_graph_json(const std::string& json_text);
LoadedGraph load_graph_file(const std::string& path);
std::string graph_to_json(const WeightedDigraph& g,
                          const std::vector<Arrow>* colored_arrows = nullptr);

}  // namespace pmgraph

#endif  // PMGRAPH_DIGRAPH_HPP
