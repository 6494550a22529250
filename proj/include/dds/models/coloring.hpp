#pragma once

#include "dds/count.hpp"
#include "dds/models/oracle.hpp"
#include "dds/propagators.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/bron_kerbosch_all_cliques.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dds {

/// Simple undirected graph on nodes 0..n-1.
struct UGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // stored with first < second

  UGraph() = default;
  explicit UGraph(int nodes) : n(nodes) {}

  void add_edge(int u, int v) {
    if (u == v) throw ModelError("graph: self-loop on node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n) throw ModelError("graph: edge endpoint out of range");
    edges.insert(std::minmax(u, v));
  }

  [[nodiscard]] bool adjacent(int u, int v) const { return edges.contains(std::minmax(u, v)); }

  friend bool operator==(const UGraph&, const UGraph&) = default;
};

struct ColoringSpec {
  UGraph graph;
  int colors = 1;
};

/// G(n, p): every pair is an edge independently with probability p. The
/// stream of a seeded 64-bit Mersenne twister is consumed pair by pair in
/// lexicographic order, so (n, p, seed) fixes the graph.
inline UGraph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: probability outside [0, 1]");
  UGraph g(n);
  std::mt19937_64 rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform in [0, 1)
      if (draw < p) g.edges.emplace(u, v);
    }
  return g;
}

namespace detail {

struct CliqueCollector {
  std::vector<std::vector<int>>* out;
  template <class Clique, class G>
  void clique(const Clique& c, const G&) {
    std::vector<int> members(c.begin(), c.end());
    std::sort(members.begin(), members.end());
    out->push_back(std::move(members));
  }
};

}  // namespace detail

/// All maximal cliques (isolated nodes included as singletons), each sorted,
/// in lexicographic order.
inline std::vector<std::vector<int>> maximal_cliques(const UGraph& g) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph bg(static_cast<std::size_t>(g.n));
  for (auto [u, v] : g.edges) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);

  std::vector<std::vector<int>> cliques;
  boost::bron_kerbosch_all_cliques(bg, detail::CliqueCollector{&cliques}, 1);
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

/// AllDifferent per maximal clique of more than two nodes, Neq per edge not
/// covered by such a clique.
inline std::vector<ConstraintSpec> coloring_constraints(const UGraph& g) {
  std::vector<ConstraintSpec> out;
  std::set<std::pair<int, int>> covered;
  for (const auto& clique : maximal_cliques(g)) {
    if (clique.size() <= 2) continue;
    AllDifferent c;
    for (int v : clique) c.vars.push_back(VarRef{v});
    out.emplace_back(std::move(c));
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j) covered.emplace(clique[i], clique[j]);
  }
  for (auto [u, v] : g.edges)
    if (!covered.contains({u, v})) out.emplace_back(Neq{VarRef{u}, VarRef{v}});
  return out;
}

inline ProblemState coloring_model(const ColoringSpec& spec) {
  if (spec.colors < 1) throw ModelError("coloring: need at least one color");
  ProblemState state(std::vector<Domain>(static_cast<std::size_t>(spec.graph.n), Domain::range(0, spec.colors - 1)));
  for (auto& c : coloring_constraints(spec.graph)) post(state, std::move(c));
  return state;
}

namespace detail {

// Deletion-contraction on adjacency bitmasks, memoized on the exact masks.
class ChromaticEvaluator {
 public:
  explicit ChromaticEvaluator(int colors) : k_(colors) {}

  Count operator()(std::vector<std::uint32_t> adj) {
    auto it = memo_.find(adj);
    if (it != memo_.end()) return it->second;
    const std::size_t n = adj.size();

    int u = -1, v = -1;
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
      edges += static_cast<std::size_t>(std::popcount(adj[i]));
      if (u < 0 && adj[i] != 0) {
        u = static_cast<int>(i);
        v = std::countr_zero(adj[i]);
      }
    }
    edges /= 2;

    Count result;
    if (edges == 0) {
      result = boost::multiprecision::pow(Count(k_), static_cast<unsigned>(n));
    } else if (edges == n * (n - 1) / 2) {
      result = 1;
      for (std::size_t i = 0; i < n; ++i) result *= std::max<std::int64_t>(0, k_ - static_cast<std::int64_t>(i));
    } else {
      // P(G) = P(G - uv) - P(G / uv)
      auto deleted = adj;
      deleted[static_cast<std::size_t>(u)] &= ~(1u << v);
      deleted[static_cast<std::size_t>(v)] &= ~(1u << u);
      result = (*this)(deleted) - (*this)(contract(adj, u, v));
    }
    memo_.emplace(std::move(adj), result);
    return result;
  }

 private:
  // Merges v into u and renumbers the nodes above v down by one.
  static std::vector<std::uint32_t> contract(const std::vector<std::uint32_t>& adj, int u, int v) {
    std::vector<std::uint32_t> merged = adj;
    merged[static_cast<std::size_t>(u)] |= merged[static_cast<std::size_t>(v)];
    for (auto& row : merged)
      if (row & (1u << v)) row = (row & ~(1u << v)) | (1u << u);
    merged[static_cast<std::size_t>(u)] &= ~(1u << u);
    merged.erase(merged.begin() + v);
    std::uint32_t low = (1u << v) - 1;
    for (auto& row : merged) row = (row & low) | ((row >> 1) & ~low);
    return merged;
  }

  int k_;
  std::map<std::vector<std::uint32_t>, Count> memo_;
};

}  // namespace detail

inline constexpr int chromatic_oracle_max_nodes = 12;

/// Number of proper k-colorings, by deletion-contraction of the chromatic
/// polynomial evaluated at k.
inline Count chromatic_oracle(const UGraph& g, int k) {
  if (g.n > chromatic_oracle_max_nodes) throw OracleLimitError("chromatic oracle: more than 12 nodes");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n), 0);
  for (auto [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)] |= 1u << v;
    adj[static_cast<std::size_t>(v)] |= 1u << u;
  }
  return detail::ChromaticEvaluator(k)(std::move(adj));
}

}  // namespace dds
