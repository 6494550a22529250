#pragma once

#include "dds/state.hpp"

namespace dds {

namespace detail {

// The whole unassigned scope as one fragment.
inline HyperedgeSet single_edge(const ProblemState& state, const Scope& scope) {
  Scope free = unassigned_of(state, scope);
  if (free.empty()) return {};
  return {std::move(free)};
}

}  // namespace detail

/// x != y. Entailed as soon as the two domains are disjoint.
inline PropagationResult filter_neq(ProblemState& state, VarRef x, VarRef y) {
  if (state.domain(x).assigned()) state.remove(y, state.domain(x).value());
  if (state.failed()) return PropagationResult::Failed;
  if (state.domain(y).assigned()) state.remove(x, state.domain(y).value());
  if (state.failed()) return PropagationResult::Failed;
  return state.domain(x).disjoint(state.domain(y)) ? PropagationResult::Entailed : PropagationResult::Stable;
}

class NeqPropagator final : public Propagator {
 public:
  explicit NeqPropagator(const Neq& c) : Propagator({c.x, c.y}) {}

  PropagationResult propagate(ProblemState& state) override { return filter_neq(state, scope()[0], scope()[1]); }
  HyperedgeSet hyperedges(const ProblemState& state) const override { return detail::single_edge(state, scope()); }
  std::unique_ptr<Propagator> clone() const override { return std::make_unique<NeqPropagator>(*this); }
  const char* name() const override { return "neq"; }
};

}  // namespace dds
