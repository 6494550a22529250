#pragma once

#include "dds/propagators/neq.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace dds {

/// Allowed tuples, sorted and duplicate-free.
class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(std::vector<std::vector<int>> tuples) : tuples_(std::move(tuples)) {
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  [[nodiscard]] std::size_t size() const { return tuples_.size(); }
  [[nodiscard]] bool empty() const { return tuples_.empty(); }
  [[nodiscard]] bool contains(const std::vector<int>& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
  }
  [[nodiscard]] auto begin() const { return tuples_.begin(); }
  [[nodiscard]] auto end() const { return tuples_.end(); }

 private:
  std::vector<std::vector<int>> tuples_;
};

namespace detail {

// Product of domain sizes, saturated just above `cap`.
inline std::uint64_t product_sizes(const ProblemState& state, std::span<const VarRef> vars, std::uint64_t cap) {
  std::uint64_t p = 1;
  for (VarRef x : vars) {
    p *= state.domain(x).size();
    if (p > cap) return cap + 1;
  }
  return p;
}

inline bool tuple_valid(const ProblemState& state, std::span<const VarRef> vars, const std::vector<int>& t) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!state.domain(vars[i]).contains(t[i])) return false;
  return true;
}

// Number of allowed tuples inside the current domain product.
inline std::size_t valid_tuples(const ProblemState& state, std::span<const VarRef> vars, const TupleSet& tuples) {
  std::size_t valid = 0;
  for (const auto& t : tuples) valid += tuple_valid(state, vars, t);
  return valid;
}

inline bool table_entailed(const ProblemState& state, std::span<const VarRef> vars, const TupleSet& tuples) {
  std::size_t valid = valid_tuples(state, vars, tuples);
  return product_sizes(state, vars, valid) == valid;
}

}  // namespace detail

/// Generalized arc consistency by support scan: a value survives iff an
/// allowed tuple inside the current domains uses it.
inline PropagationResult filter_table(ProblemState& state, std::span<const VarRef> vars, const TupleSet& tuples) {
  const std::size_t arity = vars.size();
  std::vector<std::vector<int>> support(arity);
  std::size_t valid = 0;
  for (const auto& t : tuples) {
    if (!detail::tuple_valid(state, vars, t)) continue;
    ++valid;
    for (std::size_t i = 0; i < arity; ++i) support[i].push_back(t[i]);
  }
  if (valid == 0) return PropagationResult::Failed;
  for (std::size_t i = 0; i < arity; ++i) {
    auto& s = support[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    state.intersect(vars[i], s);
  }
  // Pruning only drops values no valid tuple uses, so `valid` is unchanged.
  return detail::product_sizes(state, vars, valid) == valid ? PropagationResult::Entailed : PropagationResult::Stable;
}

class TablePropagator final : public Propagator {
 public:
  explicit TablePropagator(const Table& c)
      : Propagator(c.vars), tuples_(std::make_shared<const TupleSet>(c.tuples)) {}

  PropagationResult propagate(ProblemState& state) override { return filter_table(state, scope(), *tuples_); }
  HyperedgeSet hyperedges(const ProblemState& state) const override { return detail::single_edge(state, scope()); }
  std::unique_ptr<Propagator> clone() const override { return std::make_unique<TablePropagator>(*this); }
  const char* name() const override { return "table"; }

 private:
  std::shared_ptr<const TupleSet> tuples_;
};

}  // namespace dds
