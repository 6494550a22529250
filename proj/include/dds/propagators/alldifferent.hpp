#pragma once

#include "dds/detail/grouping.hpp"
#include "dds/propagators/neq.hpp"

#include <algorithm>
#include <vector>

namespace dds {

namespace detail {

// Bipartite variable-value graph of an all-different constraint together with
// a maximum matching and the strongly connected components of its residual
// orientation. Node ids: variables 0..n-1, values n..n+m-1.
class ValueGraph {
 public:
  ValueGraph(const ProblemState& state, std::span<const VarRef> vars) : n_(vars.size()) {
    for (VarRef x : vars)
      for (int v : state.domain(x)) values_.push_back(v);
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    adj_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (int v : state.domain(vars[i])) adj_[i].push_back(value_index(v));
  }

  [[nodiscard]] std::size_t var_count() const { return n_; }
  [[nodiscard]] std::size_t value_count() const { return values_.size(); }
  [[nodiscard]] int value(int j) const { return values_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] const std::vector<int>& adjacent(std::size_t var) const { return adj_[var]; }

  // Augmenting-path maximum matching; true when every variable is matched.
  bool match() {
    var_match_.assign(n_, -1);
    val_match_.assign(values_.size(), -1);
    if (n_ > values_.size()) return false;
    std::vector<int> seen(values_.size(), -1);
    for (std::size_t i = 0; i < n_; ++i)
      if (!augment(static_cast<int>(i), static_cast<int>(i), seen)) return false;
    return true;
  }

  // Edges that belong to some maximum matching: matched edges, edges inside
  // an alternating cycle, and edges on an even alternating path from a free
  // value. Requires a successful match().
  [[nodiscard]] std::vector<std::vector<char>> vital_edges() const {
    const std::size_t m = values_.size();
    const std::size_t nodes = n_ + m;
    // Orientation: var -> matched value; value -> var for unmatched edges.
    std::vector<std::vector<int>> out(nodes);
    for (std::size_t i = 0; i < n_; ++i)
      for (int j : adj_[i]) {
        if (var_match_[i] == j) out[i].push_back(static_cast<int>(n_) + j);
        else out[n_ + static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
      }

    std::vector<char> reach(nodes, 0);
    std::vector<int> stack;
    for (std::size_t j = 0; j < m; ++j)
      if (val_match_[j] < 0) {
        reach[n_ + j] = 1;
        stack.push_back(static_cast<int>(n_ + j));
      }
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : out[static_cast<std::size_t>(u)])
        if (!reach[static_cast<std::size_t>(w)]) {
          reach[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }

    std::vector<int> comp = strong_components(out);
    std::vector<std::vector<char>> keep(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      keep[i].resize(adj_[i].size());
      for (std::size_t e = 0; e < adj_[i].size(); ++e) {
        int j = adj_[i][e];
        std::size_t vnode = n_ + static_cast<std::size_t>(j);
        keep[i][e] = var_match_[i] == j || reach[vnode] || comp[i] == comp[vnode];
      }
    }
    return keep;
  }

  // Groups of variables connected through shared values.
  [[nodiscard]] std::vector<std::vector<int>> variable_components() const {
    Grouping g(n_);
    std::vector<int> owner(values_.size(), -1);
    for (std::size_t i = 0; i < n_; ++i)
      for (int j : adj_[i]) {
        auto& o = owner[static_cast<std::size_t>(j)];
        if (o < 0) o = static_cast<int>(i);
        else g.join(o, static_cast<int>(i));
      }
    std::vector<int> all(n_);
    for (std::size_t i = 0; i < n_; ++i) all[i] = static_cast<int>(i);
    return g.groups(all);
  }

 private:
  int value_index(int v) const {
    return static_cast<int>(std::lower_bound(values_.begin(), values_.end(), v) - values_.begin());
  }

  bool augment(int var, int stamp, std::vector<int>& seen) {
    for (int j : adj_[static_cast<std::size_t>(var)]) {
      auto& s = seen[static_cast<std::size_t>(j)];
      if (s == stamp) continue;
      s = stamp;
      int other = val_match_[static_cast<std::size_t>(j)];
      if (other < 0 || augment(other, stamp, seen)) {
        var_match_[static_cast<std::size_t>(var)] = j;
        val_match_[static_cast<std::size_t>(j)] = var;
        return true;
      }
    }
    return false;
  }

  // Tarjan's algorithm, iterative.
  static std::vector<int> strong_components(const std::vector<std::vector<int>>& out) {
    const std::size_t nodes = out.size();
    std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1);
    std::vector<char> on_stack(nodes, 0);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0, comps = 0;
    for (std::size_t root = 0; root < nodes; ++root) {
      if (index[root] >= 0) continue;
      call.emplace_back(static_cast<int>(root), 0);
      while (!call.empty()) {
        auto& [u, next] = call.back();
        auto uu = static_cast<std::size_t>(u);
        if (next == 0) {
          index[uu] = low[uu] = counter++;
          stack.push_back(u);
          on_stack[uu] = 1;
        }
        if (next < out[uu].size()) {
          int w = out[uu][next++];
          auto ww = static_cast<std::size_t>(w);
          if (index[ww] < 0) call.emplace_back(w, 0);
          else if (on_stack[ww]) low[uu] = std::min(low[uu], index[ww]);
          continue;
        }
        if (low[uu] == index[uu]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = 0;
            comp[static_cast<std::size_t>(w)] = comps;
          } while (w != u);
          ++comps;
        }
        int done = u;
        call.pop_back();
        if (!call.empty()) {
          auto parent = static_cast<std::size_t>(call.back().first);
          low[parent] = std::min(low[parent], low[static_cast<std::size_t>(done)]);
        }
      }
    }
    return comp;
  }

  std::size_t n_;
  std::vector<int> values_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> var_match_, val_match_;
};

}  // namespace detail

/// Generalized arc consistency for all-different via maximum matching and
/// strongly connected components of the variable-value graph.
///
/// Entailed once every value occurs in at most one domain, which covers both
/// "all assigned, pairwise distinct" and "pairwise disjoint domains".
inline PropagationResult filter_alldiff(ProblemState& state, std::span<const VarRef> vars) {
  detail::ValueGraph g(state, vars);
  if (!g.match()) return PropagationResult::Failed;
  auto keep = g.vital_edges();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& adj = g.adjacent(i);
    if (std::all_of(keep[i].begin(), keep[i].end(), [](char k) { return k != 0; })) continue;
    std::vector<int> kept;
    for (std::size_t e = 0; e < adj.size(); ++e)
      if (keep[i][e]) kept.push_back(g.value(adj[e]));
    state.intersect(vars[i], kept);
    if (state.failed()) return PropagationResult::Failed;
  }

  std::vector<int> seen;
  for (VarRef x : vars)
    for (int v : state.domain(x)) seen.push_back(v);
  std::sort(seen.begin(), seen.end());
  bool disjoint = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  return disjoint ? PropagationResult::Entailed : PropagationResult::Stable;
}

/// Splits into the connected components of the current variable-value graph.
inline HyperedgeSet alldiff_hyperedges(const ProblemState& state, std::span<const VarRef> vars) {
  Scope free = unassigned_of(state, vars);
  detail::ValueGraph g(state, free);
  HyperedgeSet edges;
  for (const auto& group : g.variable_components()) {
    Scope edge;
    for (int i : group) edge.push_back(free[static_cast<std::size_t>(i)]);
    edges.push_back(std::move(edge));
  }
  return edges;
}

class AllDifferentPropagator final : public Propagator {
 public:
  explicit AllDifferentPropagator(const AllDifferent& c) : Propagator(c.vars) {}

  PropagationResult propagate(ProblemState& state) override { return filter_alldiff(state, scope()); }
  HyperedgeSet hyperedges(const ProblemState& state) const override { return alldiff_hyperedges(state, scope()); }
  std::unique_ptr<Propagator> clone() const override { return std::make_unique<AllDifferentPropagator>(*this); }
  const char* name() const override { return "alldifferent"; }
};

}  // namespace dds
