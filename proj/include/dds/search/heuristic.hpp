#pragma once

#include "dds/graph.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>

namespace dds {

enum class Heuristic { InputOrder, FirstFail, MaxDegree, MaxDegreeThenFirstFail };

inline constexpr Heuristic all_heuristics[] = {Heuristic::InputOrder, Heuristic::FirstFail, Heuristic::MaxDegree,
                                               Heuristic::MaxDegreeThenFirstFail};

inline const char* to_string(Heuristic h) {
  switch (h) {
    case Heuristic::InputOrder: return "input";
    case Heuristic::FirstFail: return "ff";
    case Heuristic::MaxDegree: return "maxdeg";
    case Heuristic::MaxDegreeThenFirstFail: return "maxdeg-ff";
  }
  return "?";
}

inline std::optional<Heuristic> parse_heuristic(std::string_view name) {
  for (Heuristic h : all_heuristics)
    if (name == to_string(h)) return h;
  return std::nullopt;
}

inline bool uses_degree(Heuristic h) {
  return h == Heuristic::MaxDegree || h == Heuristic::MaxDegreeThenFirstFail;
}

struct BranchDecision {
  VarRef variable;
  int value = 0;
  friend bool operator==(const BranchDecision&, const BranchDecision&) = default;
};

/// Picks an unassigned variable of `scope` and its smallest value. Ties are
/// always broken towards the lowest variable index. `degrees` must be given
/// for the degree-based heuristics (see ConstraintGraph::degrees()).
inline BranchDecision choose(const ProblemState& state, Heuristic h, std::span<const VarRef> scope,
                             const std::vector<int>& degrees) {
  std::optional<VarRef> best;
  auto size = [&](VarRef x) { return state.domain(x).size(); };
  auto degree = [&](VarRef x) { return degrees.at(static_cast<std::size_t>(x.index)); };
  auto better = [&](VarRef a, VarRef b) {
    switch (h) {
      case Heuristic::InputOrder: break;
      case Heuristic::FirstFail:
        if (size(a) != size(b)) return size(a) < size(b);
        break;
      case Heuristic::MaxDegree:
        if (degree(a) != degree(b)) return degree(a) > degree(b);
        break;
      case Heuristic::MaxDegreeThenFirstFail:
        if (degree(a) != degree(b)) return degree(a) > degree(b);
        if (size(a) != size(b)) return size(a) < size(b);
        break;
    }
    return a.index < b.index;
  };
  for (VarRef x : scope) {
    if (state.assigned(x)) continue;
    if (!best || better(x, *best)) best = x;
  }
  if (!best) throw std::logic_error("choose: no unassigned variable in scope");
  return {*best, state.domain(*best).min()};
}

inline BranchDecision choose(const ProblemState& state, Heuristic h, std::span<const VarRef> scope) {
  std::vector<int> degrees;
  if (uses_degree(h)) degrees = build_constraint_graph(state).degrees();
  return choose(state, h, scope, degrees);
}

}  // namespace dds
