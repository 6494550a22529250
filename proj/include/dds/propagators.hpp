#pragma once

#include "dds/propagators/alldifferent.hpp"
#include "dds/propagators/linear.hpp"
#include "dds/propagators/neq.hpp"
#include "dds/propagators/regular.hpp"
#include "dds/propagators/slide.hpp"
#include "dds/propagators/table.hpp"

namespace dds {

inline std::unique_ptr<Propagator> make_propagator(const ConstraintSpec& spec) {
  return std::visit(
      [](const auto& c) -> std::unique_ptr<Propagator> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Neq>) return std::make_unique<NeqPropagator>(c);
        else if constexpr (std::is_same_v<T, Linear>) return std::make_unique<LinearPropagator>(c);
        else if constexpr (std::is_same_v<T, AllDifferent>) return std::make_unique<AllDifferentPropagator>(c);
        else if constexpr (std::is_same_v<T, Table>) return std::make_unique<TablePropagator>(c);
        else if constexpr (std::is_same_v<T, Regular>) return std::make_unique<RegularPropagator>(c);
        else return std::make_unique<SlidePropagator>(c);
      },
      spec);
}

/// Validates `spec` against the state and adds its propagator to the store.
/// Throws ModelError on unknown variables, repeated variables or bad arity.
inline PropagatorHandle post(ProblemState& state, ConstraintSpec spec) {
  validate(spec, state.var_count());
  auto p = make_propagator(spec);
  return state.add_propagator(std::move(p), std::move(spec));
}

inline HyperedgeSet hyperedges(const Propagator& p, const ProblemState& state) { return p.hyperedges(state); }

}  // namespace dds
