#pragma once

#include "dds/detail/grouping.hpp"
#include "dds/propagators/table.hpp"

#include <memory>
#include <vector>

namespace dds {

/// Table filtering on every window x[i..i+k-1] until no window prunes.
///
/// `window_entailed`, when given, caches windows already known to be entailed
/// (entailment is monotone under narrowing) and is updated in place.
inline PropagationResult filter_slide(ProblemState& state, std::span<const VarRef> vars, int k,
                                      const TupleSet& window_tuples, std::vector<char>* window_entailed = nullptr) {
  const std::size_t width = static_cast<std::size_t>(k);
  const std::size_t windows = vars.size() - width + 1;
  std::vector<char> local;
  if (!window_entailed) {
    local.assign(windows, 0);
    window_entailed = &local;
  }
  auto& entailed = *window_entailed;
  const auto events_before = [&] { return state.counters().domain_events; };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t w = 0; w < windows; ++w) {
      if (entailed[w]) continue;
      auto before = events_before();
      PropagationResult r = filter_table(state, vars.subspan(w, width), window_tuples);
      if (r == PropagationResult::Failed || state.failed()) return PropagationResult::Failed;
      if (r == PropagationResult::Entailed) entailed[w] = 1;
      if (events_before() != before) changed = true;
    }
  }
  for (std::size_t w = 0; w < windows; ++w)
    if (!entailed[w] && detail::table_entailed(state, vars.subspan(w, width), window_tuples)) entailed[w] = 1;
  bool all = std::all_of(entailed.begin(), entailed.end(), [](char e) { return e != 0; });
  return all ? PropagationResult::Entailed : PropagationResult::Stable;
}

/// Positions stay together only through windows that are not yet entailed;
/// a position all of whose covering windows are entailed separates the
/// sequence.
inline HyperedgeSet slide_hyperedges(const ProblemState& state, std::span<const VarRef> vars, int k,
                                     const TupleSet& window_tuples) {
  const std::size_t width = static_cast<std::size_t>(k);
  const std::size_t windows = vars.size() - width + 1;
  detail::Grouping g(vars.size());
  for (std::size_t w = 0; w < windows; ++w) {
    auto window = vars.subspan(w, width);
    if (detail::table_entailed(state, window, window_tuples)) continue;
    for (std::size_t i = 1; i < width; ++i) g.join(static_cast<int>(w), static_cast<int>(w + i));
  }
  std::vector<int> free;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!state.assigned(vars[i])) free.push_back(static_cast<int>(i));
  HyperedgeSet edges;
  for (const auto& group : g.groups(free)) {
    Scope edge;
    for (int i : group) edge.push_back(vars[static_cast<std::size_t>(i)]);
    edges.push_back(std::move(edge));
  }
  return edges;
}

/// One propagator for the whole sequence, so its window-entailment split is
/// visible to decomposition.
class SlidePropagator final : public Propagator {
 public:
  explicit SlidePropagator(const Slide& c)
      : Propagator(c.vars),
        k_(c.k),
        tuples_(std::make_shared<const TupleSet>(c.window_tuples)),
        entailed_(c.vars.size() - static_cast<std::size_t>(c.k) + 1, 0) {}

  PropagationResult propagate(ProblemState& state) override {
    return filter_slide(state, scope(), k_, *tuples_, &entailed_);
  }
  HyperedgeSet hyperedges(const ProblemState& state) const override {
    return slide_hyperedges(state, scope(), k_, *tuples_);
  }
  std::unique_ptr<Propagator> clone() const override { return std::make_unique<SlidePropagator>(*this); }
  const char* name() const override { return "slide"; }

 private:
  int k_;
  std::shared_ptr<const TupleSet> tuples_;
  std::vector<char> entailed_;
};

}  // namespace dds
