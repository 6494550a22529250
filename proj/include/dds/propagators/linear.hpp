#pragma once

#include "dds/propagators/neq.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>

namespace dds {

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

inline int clamp_int(std::int64_t v) {
  return static_cast<int>(std::clamp<std::int64_t>(v, INT_MIN, INT_MAX));
}

}  // namespace detail

/// Bounds consistency for sum(a_i * x_i) = rhs or <= rhs.
///
/// Entailment is reported as soon as the bounds guarantee the relation,
/// including right after pruning, so a constraint with a single unassigned
/// variable never lingers in the store.
inline PropagationResult filter_linear(ProblemState& state, const Linear& c) {
  const std::size_t n = c.vars.size();
  std::vector<std::int64_t> lo(n), hi(n);
  for (;;) {
    std::int64_t sum_lo = 0, sum_hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Domain& d = state.domain(c.vars[i]);
      std::int64_t a = c.coeffs[i];
      lo[i] = a > 0 ? a * d.min() : a * d.max();
      hi[i] = a > 0 ? a * d.max() : a * d.min();
      sum_lo += lo[i];
      sum_hi += hi[i];
    }
    if (sum_lo > c.rhs) return PropagationResult::Failed;
    if (c.rel == LinearRel::Leq && sum_hi <= c.rhs) return PropagationResult::Entailed;
    if (c.rel == LinearRel::Eq) {
      if (sum_hi < c.rhs) return PropagationResult::Failed;
      if (sum_lo == sum_hi) return PropagationResult::Entailed;
    }

    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t a = c.coeffs[i];
      // a_i x_i <= rhs - (sum of the other minima)
      std::int64_t upper = c.rhs - (sum_lo - lo[i]);
      std::int64_t lb = INT_MIN, ub = INT_MAX;
      if (a > 0) ub = detail::floor_div(upper, a);
      else lb = detail::ceil_div(upper, a);
      if (c.rel == LinearRel::Eq) {
        // a_i x_i >= rhs - (sum of the other maxima)
        std::int64_t lower = c.rhs - (sum_hi - hi[i]);
        if (a > 0) lb = std::max(lb, detail::ceil_div(lower, a));
        else ub = std::min(ub, detail::floor_div(lower, a));
      }
      changed |= state.restrict_range(c.vars[i], detail::clamp_int(lb), detail::clamp_int(ub));
      if (state.failed()) return PropagationResult::Failed;
    }
    if (!changed) return PropagationResult::Stable;
  }
}

/// Linear constraints never split: every variable functionally depends on the
/// others, so the tuple set is never a non-trivial product.
class LinearPropagator final : public Propagator {
 public:
  explicit LinearPropagator(Linear c) : Propagator(c.vars), c_(std::move(c)) {}

  PropagationResult propagate(ProblemState& state) override { return filter_linear(state, c_); }
  HyperedgeSet hyperedges(const ProblemState& state) const override { return detail::single_edge(state, scope()); }
  std::unique_ptr<Propagator> clone() const override { return std::make_unique<LinearPropagator>(*this); }
  const char* name() const override { return "linear"; }

 private:
  Linear c_;
};

}  // namespace dds
