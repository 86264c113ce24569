#include "pmgraph/digraph.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pmgraph {

WeightedDigraph::WeightedDigraph(std::vector<std::string> vertices,
                                 std::vector<std::string> variables)
    : vertices_(std::move(vertices)), variables_(std::move(variables)) {
  for (size_t i = 0; i < vertices_.size(); ++i)
    for (size_t j = i + 1; j < vertices_.size(); ++j)
      if (vertices_[i] == vertices_[j])
        throw GraphFormatError("duplicate vertex label '" + vertices_[i] + "'");
}

int WeightedDigraph::vertex_index(const std::string& label) const {
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == label) return static_cast<int>(i);
  return -1;
}

void WeightedDigraph::add_arrow(int from, int to, const LaurentPoly& weight) {
  if (from < 0 || from >= size() || to < 0 || to >= size())
    throw GraphFormatError("arrow endpoint out of range");
  if (weight.num_vars() != num_vars())
    throw GraphFormatError("arrow weight has wrong variable count");
  for (auto& a : arrows_) {
    if (a.from == from && a.to == to) {
      a.weight += weight;
      a.color.reset();
      if (a.weight.is_zero() || !a.weight.is_nonneg())
        throw GraphFormatError("merged arrow weight leaves k_+[Z^(+-1)]");
      return;
    }
  }
  if (weight.is_zero() || !weight.is_nonneg())
    throw GraphFormatError("arrow weight must be nonzero with nonnegative coefficients");
  arrows_.push_back(Arrow{from, to, weight, std::nullopt});
}

PolyMatrix WeightedDigraph::adjacency_matrix() const {
  PolyMatrix a(size(), num_vars());
  for (const auto& arrow : arrows_) a.at(arrow.to, arrow.from) += arrow.weight;
  return a;
}

namespace {

// Kosaraju on the support digraph.
void dfs(const std::vector<std::vector<int>>& adj, int v,
         std::vector<bool>& seen, std::vector<int>& order) {
  seen[v] = true;
  for (int w : adj[v])
    if (!seen[w]) dfs(adj, w, seen, order);
  order.push_back(v);
}

}  // namespace

bool WeightedDigraph::is_strongly_connected() const {
  const int n = size();
  if (n <= 1) return true;
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const auto& a : arrows_) {
    fwd[a.from].push_back(a.to);
    rev[a.to].push_back(a.from);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> order;
  dfs(fwd, 0, seen, order);
  for (bool s : seen)
    if (!s) return false;
  std::fill(seen.begin(), seen.end(), false);
  order.clear();
  dfs(rev, 0, seen, order);
  for (bool s : seen)
    if (!s) return false;
  return true;
}

std::vector<std::string> WeightedDigraph::degree_warnings() const {
  std::vector<int> out(size(), 0), in(size(), 0);
  for (const auto& a : arrows_) {
    ++out[a.from];
    ++in[a.to];
  }
  std::vector<std::string> warnings;
  for (int v = 0; v < size(); ++v) {
    if (out[v] == 0)
      warnings.push_back("vertex '" + vertices_[v] + "' has no outgoing arrow");
    if (in[v] == 0)
      warnings.push_back("vertex '" + vertices_[v] + "' has no incoming arrow");
  }
  return warnings;
}

PolyMatrix WeightedDigraph::path_count_matrix(int root) const {
  if (root < 0 || root >= size())
    throw GraphFormatError("root index out of range");
  PolyMatrix a = adjacency_matrix();
  PolyMatrix m(size(), num_vars());
  std::vector<LaurentPoly> col(size(), LaurentPoly(num_vars()));
  col[root] = LaurentPoly::one(num_vars());
  for (int j = 0; j < size(); ++j) {
    for (int i = 0; i < size(); ++i) m.at(i, j) = col[i];
    if (j + 1 < size()) col = a.apply(col);
  }
  return m;
}

MonomialDigraph split_monomial_arrows(const WeightedDigraph& g) {
  MonomialDigraph result;
  result.num_vertices = g.size();
  result.num_vars = g.num_vars();
  for (const auto& arrow : g.arrows()) {
    for (const auto& [e, c] : arrow.weight.terms()) {
      result.arrows.push_back(MonomialArrow{arrow.from, arrow.to, c, e});
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// JSON I/O.
// ---------------------------------------------------------------------------

using nlohmann::json;

LoadedGraph load_graph_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw GraphFormatError(std::string("JSON parse error: ") + err.what());
  }
  if (!doc.is_object()) throw GraphFormatError("top level must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw GraphFormatError("missing 'vertices' array");

  std::vector<std::string> variables;
  if (doc.contains("variables")) {
    for (const auto& v : doc["variables"]) variables.push_back(v.get<std::string>());
  }
  std::vector<std::string> vertices;
  for (const auto& v : doc["vertices"]) vertices.push_back(v.get<std::string>());

  WeightedDigraph g(vertices, variables);
  if (doc.contains("arrows")) {
    for (const auto& a : doc["arrows"]) {
      if (!a.contains("from") || !a.contains("to"))
        throw GraphFormatError("arrow needs 'from' and 'to'");
      int from = g.vertex_index(a["from"].get<std::string>());
      int to = g.vertex_index(a["to"].get<std::string>());
      if (from < 0 || to < 0)
        throw GraphFormatError("arrow endpoint is not a declared vertex");
      std::string weight_text = a.contains("weight")
                                    ? a["weight"].get<std::string>()
                                    : std::string("1");
      LaurentPoly w;
      try {
        w = parse_poly(weight_text, variables);
      } catch (const PolyError& err) {
        throw GraphFormatError("bad weight '" + weight_text + "': " + err.what());
      }
      g.add_arrow(from, to, w);
    }
  }

  LoadedGraph result{std::move(g), {}};
  result.warnings = result.graph.degree_warnings();
  if (!result.graph.is_strongly_connected())
    result.warnings.push_back("graph is not strongly connected");
  return result;
}

LoadedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphFormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph_json(buf.str());
}

std::string graph_to_json(const WeightedDigraph& g,
                          const std::vector<Arrow>* colored_arrows) {
  json doc;
  doc["variables"] = g.variables();
  doc["vertices"] = g.vertices();
  json arrows = json::array();
  const std::vector<Arrow>& list =
      colored_arrows ? *colored_arrows : g.arrows();
  for (const auto& a : list) {
    json entry;
    entry["from"] = g.vertices()[a.from];
    entry["to"] = g.vertices()[a.to];
    entry["weight"] = a.weight.to_string(g.variables());
    if (a.color) entry["color"] = *a.color;
    arrows.push_back(entry);
  }
  doc["arrows"] = arrows;
  return doc.dump(2);
}

}  // namespace pmgraph
