#pragma once

#include "dds/detail/grouping.hpp"
#include "dds/propagators.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace dds {

struct Hyperedge {
  Scope vars;
  PropagatorHandle origin;
};

/// Constraint hypergraph over the unassigned variables of a state, with the
/// internal decomposition of every active propagator already applied.
struct ConstraintGraph {
  Scope nodes;     // unassigned variables, ascending
  Scope assigned;  // assigned variables, ascending
  std::vector<Hyperedge> edges;
  std::size_t var_count = 0;

  /// Number of hyperedges incident to each variable.
  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> deg(var_count, 0);
    for (const auto& e : edges)
      for (VarRef x : e.vars) ++deg[static_cast<std::size_t>(x.index)];
    return deg;
  }
};

/// Queries every active propagator for its hyperedges. Edges that shrink
/// below two variables once assigned ones are dropped carry no coupling and
/// are omitted.
inline ConstraintGraph build_constraint_graph(const ProblemState& state) {
  ConstraintGraph g;
  g.var_count = state.var_count();
  for (std::size_t i = 0; i < state.var_count(); ++i) {
    VarRef x{static_cast<int>(i)};
    (state.assigned(x) ? g.assigned : g.nodes).push_back(x);
  }
  state.for_each_active([&](PropagatorHandle h, const Propagator& p) {
    for (auto& edge : p.hyperedges(state)) {
      std::erase_if(edge, [&](VarRef x) { return state.assigned(x); });
      if (edge.size() < 2) continue;
      std::sort(edge.begin(), edge.end());
      g.edges.push_back({std::move(edge), h});
    }
  });
  return g;
}

struct ComponentPartition {
  std::vector<Scope> components;  // ordered by lowest member
  Scope assigned;
};

namespace detail {

inline std::vector<Scope> connected(const ConstraintGraph& g, std::span<const VarRef> members) {
  Grouping groups(g.var_count);
  for (const auto& e : g.edges) {
    std::vector<int> ids;
    for (VarRef x : e.vars) ids.push_back(x.index);
    groups.join_all(ids);
  }
  std::vector<int> sorted;
  for (VarRef x : members) sorted.push_back(x.index);
  std::sort(sorted.begin(), sorted.end());
  std::vector<Scope> out;
  for (const auto& group : groups.groups(sorted)) {
    Scope s;
    for (int i : group) s.push_back(VarRef{i});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Maximal connected node sets; isolated nodes become singleton components.
inline ComponentPartition components(const ConstraintGraph& g) {
  return {detail::connected(g, g.nodes), g.assigned};
}

/// Result of component analysis restricted to one search scope.
///
/// `parts` are the non-trivial partial problems (two or more coupled
/// unassigned variables each), ordered by lowest member. `free` holds
/// unassigned variables no constraint couples to anything; every value of
/// theirs extends every solution of the parts. `assigned` holds the scope's
/// assigned variables. Both `free` and `assigned` ride along with the first
/// part; only the domain sizes of `free` contribute to counts.
struct Decomposition {
  std::vector<Scope> parts;
  Scope free;
  Scope assigned;
};

inline Decomposition analyze_components(const ProblemState& state, const ConstraintGraph& g,
                                        std::span<const VarRef> scope) {
  Decomposition d;
  Scope open;
  for (VarRef x : scope) (state.assigned(x) ? d.assigned : open).push_back(x);
  std::sort(d.assigned.begin(), d.assigned.end());
  for (auto& comp : detail::connected(g, open)) {
    if (comp.size() == 1) d.free.push_back(comp.front());
    else d.parts.push_back(std::move(comp));
  }
  return d;
}

/// Decomposition of the given scope, returned only when at least two
/// non-trivial partial problems exist. Requires a propagated state.
inline std::optional<Decomposition> try_decompose(const ProblemState& state, const ConstraintGraph& g,
                                                  std::span<const VarRef> scope) {
  Decomposition d = analyze_components(state, g, scope);
  if (d.parts.size() < 2) return std::nullopt;
  return d;
}

inline std::optional<Decomposition> try_decompose(const ProblemState& state) {
  Scope all;
  for (std::size_t i = 0; i < state.var_count(); ++i) all.push_back(VarRef{static_cast<int>(i)});
  return try_decompose(state, build_constraint_graph(state), all);
}

}  // namespace dds
