#pragma once

#include "dds/count.hpp"
#include "dds/propagators/neq.hpp"

#include <algorithm>
#include <memory>
#include <vector>

namespace dds {

/// Automaton with per-state outgoing arcs sorted by symbol.
struct CompiledDfa {
  int states = 0;
  int start = 0;
  std::vector<char> accepting;
  std::vector<std::vector<std::pair<int, int>>> arcs;  // (symbol, target)

  explicit CompiledDfa(const Dfa& dfa)
      : states(dfa.state_count), start(dfa.start), accepting(static_cast<std::size_t>(dfa.state_count), 0),
        arcs(static_cast<std::size_t>(dfa.state_count)) {
    for (int f : dfa.finals) accepting[static_cast<std::size_t>(f)] = 1;
    for (const auto& [key, to] : dfa.transitions) arcs[static_cast<std::size_t>(key.first)].emplace_back(key.second, to);
    for (auto& a : arcs) std::sort(a.begin(), a.end());
  }
};

/// Unfolding of an automaton over a variable sequence: layer i holds the
/// automaton states that lie on some accepted path through the current
/// domains after reading i symbols.
struct LayeredGraph {
  std::vector<std::vector<char>> alive;            // (n+1) x states
  std::vector<std::vector<int>> supported;         // per position, sorted symbols
  bool accepting_path = false;

  LayeredGraph(const ProblemState& state, std::span<const VarRef> vars, const CompiledDfa& dfa) {
    const std::size_t n = vars.size();
    const auto q_count = static_cast<std::size_t>(dfa.states);
    std::vector<std::vector<char>> fwd(n + 1, std::vector<char>(q_count, 0));
    fwd[0][static_cast<std::size_t>(dfa.start)] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const Domain& d = state.domain(vars[i]);
      for (std::size_t q = 0; q < q_count; ++q) {
        if (!fwd[i][q]) continue;
        for (auto [symbol, to] : dfa.arcs[q])
          if (d.contains(symbol)) fwd[i + 1][static_cast<std::size_t>(to)] = 1;
      }
    }
    alive.assign(n + 1, std::vector<char>(q_count, 0));
    supported.resize(n);
    for (std::size_t q = 0; q < q_count; ++q) alive[n][q] = fwd[n][q] && dfa.accepting[q];
    for (std::size_t i = n; i-- > 0;) {
      const Domain& d = state.domain(vars[i]);
      for (std::size_t q = 0; q < q_count; ++q) {
        if (!fwd[i][q]) continue;
        for (auto [symbol, to] : dfa.arcs[q]) {
          if (!alive[i + 1][static_cast<std::size_t>(to)] || !d.contains(symbol)) continue;
          alive[i][q] = 1;
          supported[i].push_back(symbol);
        }
      }
      auto& s = supported[i];
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    accepting_path = alive[0][static_cast<std::size_t>(dfa.start)] != 0;
  }

  // Accepted words inside the domain product, by path counting.
  [[nodiscard]] Count accepted_words(const ProblemState& state, std::span<const VarRef> vars,
                                     const CompiledDfa& dfa) const {
    const std::size_t n = vars.size();
    const auto q_count = static_cast<std::size_t>(dfa.states);
    std::vector<Count> paths(q_count, 0), prev(q_count, 0);
    for (std::size_t q = 0; q < q_count; ++q) paths[q] = alive[n][q] ? 1 : 0;
    for (std::size_t i = n; i-- > 0;) {
      prev.swap(paths);
      const Domain& d = state.domain(vars[i]);
      for (std::size_t q = 0; q < q_count; ++q) {
        paths[q] = 0;
        if (!alive[i][q]) continue;
        for (auto [symbol, to] : dfa.arcs[q])
          if (d.contains(symbol)) paths[q] += prev[static_cast<std::size_t>(to)];
      }
    }
    return paths[static_cast<std::size_t>(dfa.start)];
  }
};

/// Forward/backward reachability on the layered graph; a value survives at a
/// position iff an arc with that label survives between the adjacent layers.
/// Entailed when every word of the domain product is accepted.
inline PropagationResult filter_regular(ProblemState& state, std::span<const VarRef> vars, const CompiledDfa& dfa) {
  LayeredGraph g(state, vars, dfa);
  if (!g.accepting_path) return PropagationResult::Failed;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    state.intersect(vars[i], g.supported[i]);
    if (state.failed()) return PropagationResult::Failed;
  }
  Count product = 1;
  for (VarRef x : vars) product *= state.domain(x).size();
  return g.accepted_words(state, vars, dfa) == product ? PropagationResult::Entailed : PropagationResult::Stable;
}

/// Cuts the sequence at every inner layer left with a single live state.
inline HyperedgeSet regular_hyperedges(const ProblemState& state, std::span<const VarRef> vars, const CompiledDfa& dfa) {
  LayeredGraph g(state, vars, dfa);
  HyperedgeSet edges;
  Scope run;
  auto flush = [&] {
    Scope free = unassigned_of(state, run);
    if (!free.empty()) edges.push_back(std::move(free));
    run.clear();
  };
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i > 0 && std::count(g.alive[i].begin(), g.alive[i].end(), 1) == 1) flush();
    run.push_back(vars[i]);
  }
  flush();
  return edges;
}

class RegularPropagator final : public Propagator {
 public:
  explicit RegularPropagator(const Regular& c) : Propagator(c.vars), dfa_(std::make_shared<const CompiledDfa>(c.dfa)) {}

  PropagationResult propagate(ProblemState& state) override { return filter_regular(state, scope(), *dfa_); }
  HyperedgeSet hyperedges(const ProblemState& state) const override { return regular_hyperedges(state, scope(), *dfa_); }
  std::unique_ptr<Propagator> clone() const override { return std::make_unique<RegularPropagator>(*this); }
  const char* name() const override { return "regular"; }

 private:
  std::shared_ptr<const CompiledDfa> dfa_;
};

}  // namespace dds
