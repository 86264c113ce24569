#include "pmgraph/expansion.hpp"

#include <cmath>
#include <map>

#include "json.hpp"

namespace pmgraph {

int ExpansionGraph::find_node(int vertex, const Exponents& beta,
                              int level) const {
  if (level < 0 || level >= static_cast<int>(levels.size())) return -1;
  for (int idx : levels[level]) {
    if (nodes[idx].vertex == vertex && nodes[idx].beta == beta) return idx;
  }
  return -1;
}

ExpansionGraph expand(const WeightedDigraph& g, int depth, int root) {
  if (depth < 0) throw PolyError("expansion depth must be nonnegative");
  if (root < 0 || root >= g.size()) throw PolyError("root out of range");

  MonomialDigraph split = split_monomial_arrows(g);
  // Outgoing monomial arrows per vertex.
  std::vector<std::vector<const MonomialArrow*>> out(g.size());
  for (const auto& a : split.arrows) out[a.from].push_back(&a);

  ExpansionGraph e;
  e.num_vars = g.num_vars();
  e.root_vertex = root;
  e.levels.resize(depth + 1);

  // Level 0: the root (v_root, 1, 0).
  std::map<std::pair<int, Exponents>, int> current;
  e.nodes.push_back(ExpNode{root, Exponents(g.num_vars(), 0), 0});
  e.levels[0].push_back(0);
  current[{root, Exponents(g.num_vars(), 0)}] = 0;

  for (int level = 0; level < depth; ++level) {
    // Phase 1: discover the next level. The std::map key order gives the
    // stable (vertex, lex beta) numbering within the level.
    std::map<std::pair<int, Exponents>, int> next;
    for (const auto& [key, node_idx] : current) {
      for (const MonomialArrow* a : out[key.first]) {
        Exponents target_beta(key.second);
        for (int v = 0; v < g.num_vars(); ++v) target_beta[v] += a->exponent[v];
        next.emplace(std::make_pair(a->to, std::move(target_beta)), -1);
      }
    }
    for (auto& [key, idx] : next) {
      idx = static_cast<int>(e.nodes.size());
      e.nodes.push_back(ExpNode{key.first, key.second, level + 1});
      e.levels[level + 1].push_back(idx);
    }
    // Phase 2: arrows, in source order.
    for (const auto& [key, node_idx] : current) {
      for (const MonomialArrow* a : out[key.first]) {
        Exponents target_beta(key.second);
        for (int v = 0; v < g.num_vars(); ++v) target_beta[v] += a->exponent[v];
        e.arrows.push_back(
            ExpArrow{node_idx, next.at({a->to, target_beta}), a->coefficient});
      }
    }
    current = std::move(next);
  }

  e.out_arrows.assign(e.nodes.size(), {});
  for (size_t idx = 0; idx < e.arrows.size(); ++idx)
    e.out_arrows[e.arrows[idx].from].push_back(static_cast<int>(idx));
  return e;
}

HarmonicAssignment harmonic_from_t(const WeightedDigraph& g,
                                   const PFResult& pf,
                                   const Specialization& theta,
                                   const ExpansionGraph& e) {
  if (static_cast<int>(pf.left_vector.size()) != g.size())
    throw PolyError("PF vector size mismatch");

  HarmonicAssignment h;
  h.theta = theta;
  h.eigenvalue = pf.eigenvalue;

  // s = (sum over root out-arrows of a_{v',v0}(t) pi_{v'})^{-1}; by the
  // eigen-equation this equals 1/lambda.
  MonomialDigraph split = split_monomial_arrows(g);
  double root_sum = 0.0;
  for (const auto& a : split.arrows) {
    if (a.from != e.root_vertex) continue;
    double weight = a.coefficient.get_d();
    for (int v = 0; v < g.num_vars(); ++v)
      weight *= std::pow(theta.t[v], a.exponent[v]);
    root_sum += weight * pf.left_vector[a.to];
  }
  if (!(root_sum > 0.0)) throw PolyError("root has no outgoing weight");
  h.s = 1.0 / root_sum;
  h.theta.s = h.s;

  h.values.resize(e.nodes.size());
  for (size_t idx = 0; idx < e.nodes.size(); ++idx) {
    const ExpNode& node = e.nodes[idx];
    double value = pf.left_vector[node.vertex] * std::pow(h.s, node.level);
    for (int v = 0; v < e.num_vars; ++v)
      value *= std::pow(theta.t[v], node.beta[v]);
    h.values[idx] = value;
  }
  return h;
}

bool verify_harmonic(const HarmonicAssignment& h, const ExpansionGraph& e,
                     double tol) {
  if (h.values.size() != e.nodes.size())
    throw PolyError("harmonic assignment does not cover the expansion");
  const int top = static_cast<int>(e.levels.size()) - 1;
  for (size_t idx = 0; idx < e.nodes.size(); ++idx) {
    if (e.nodes[idx].level >= top) continue;
    double sum = 0.0;
    for (int arrow_idx : e.out_arrows[idx]) {
      const ExpArrow& a = e.arrows[arrow_idx];
      sum += a.multiplicity.get_d() * h.values[a.to];
    }
    double f = h.values[idx];
    if (std::abs(f - sum) > tol * std::max(1.0, std::abs(f))) return false;
  }
  return true;
}

std::string expansion_to_json(const ExpansionGraph& e,
                              const WeightedDigraph& g,
                              const HarmonicAssignment* harmonic) {
  using nlohmann::json;
  json doc;
  doc["root"] = g.vertices()[e.root_vertex];
  doc["variables"] = g.variables();
  json nodes = json::array();
  for (const auto& node : e.nodes) {
    json n;
    n["vertex"] = g.vertices()[node.vertex];
    n["beta"] = node.beta;
    n["level"] = node.level;
    nodes.push_back(n);
  }
  doc["nodes"] = nodes;
  json arrows = json::array();
  for (const auto& a : e.arrows) {
    json entry;
    entry["from"] = a.from;
    entry["to"] = a.to;
    entry["multiplicity"] = a.multiplicity.get_d();
    arrows.push_back(entry);
  }
  doc["arrows"] = arrows;
  doc["level_sizes"] = e.level_sizes();
  if (harmonic) {
    doc["harmonic"] = {{"t", harmonic->theta.t},
                       {"eigenvalue", harmonic->eigenvalue},
                       {"s", harmonic->s},
                       {"values", harmonic->values}};
  }
  return doc.dump(2);
}

}  // namespace pmgraph
