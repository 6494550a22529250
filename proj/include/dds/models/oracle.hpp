#pragma once

#include "dds/count.hpp"
#include "dds/state.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace dds {

/// Direct tuple semantics of a constraint under a total assignment. No
/// propagation is involved; this is the ground truth the solver is checked
/// against.
inline bool satisfies(const ConstraintSpec& spec, const Assignment& a) {
  auto at = [&](VarRef x) { return a.at(static_cast<std::size_t>(x.index)); };
  auto project = [&](std::span<const VarRef> vars) {
    std::vector<int> t;
    for (VarRef x : vars) t.push_back(at(x));
    return t;
  };
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Neq>) {
          return at(c.x) != at(c.y);
        } else if constexpr (std::is_same_v<T, Linear>) {
          std::int64_t sum = 0;
          for (std::size_t i = 0; i < c.vars.size(); ++i) sum += std::int64_t{c.coeffs[i]} * at(c.vars[i]);
          return c.rel == LinearRel::Eq ? sum == c.rhs : sum <= c.rhs;
        } else if constexpr (std::is_same_v<T, AllDifferent>) {
          std::set<int> seen;
          for (VarRef x : c.vars)
            if (!seen.insert(at(x)).second) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Table>) {
          auto t = project(c.vars);
          return std::find(c.tuples.begin(), c.tuples.end(), t) != c.tuples.end();
        } else if constexpr (std::is_same_v<T, Regular>) {
          return c.dfa.accepts(project(c.vars));
        } else {
          const auto k = static_cast<std::size_t>(c.k);
          for (std::size_t w = 0; w + k <= c.vars.size(); ++w) {
            auto t = project(std::span<const VarRef>(c.vars).subspan(w, k));
            if (std::find(c.window_tuples.begin(), c.window_tuples.end(), t) == c.window_tuples.end()) return false;
          }
          return true;
        }
      },
      spec);
}

/// Thrown when an oracle is asked to enumerate more than its size guard.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t brute_force_guard = 10'000'000;

/// Visits every assignment of the domain product that satisfies all
/// constraints. `fn` returns false to stop early.
inline void brute_force_each(const std::vector<Domain>& domains, const std::vector<ConstraintSpec>& constraints,
                             const std::function<bool(const Assignment&)>& fn) {
  std::uint64_t product = 1;
  for (const auto& d : domains) {
    if (d.empty()) return;
    product *= d.size();
    if (product > brute_force_guard) throw OracleLimitError("brute force: domain product exceeds 10^7");
  }
  const std::size_t n = domains.size();
  std::vector<std::size_t> pos(n, 0);
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = domains[i].values()[0];
  for (;;) {
    bool ok = std::all_of(constraints.begin(), constraints.end(), [&](const auto& c) { return satisfies(c, a); });
    if (ok && !fn(a)) return;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++pos[i] < domains[i].size()) {
        a[i] = domains[i].values()[pos[i]];
        break;
      }
      pos[i] = 0;
      a[i] = domains[i].values()[0];
    }
    if (i == n) return;
  }
}

inline Count brute_force_count(const std::vector<Domain>& domains, const std::vector<ConstraintSpec>& constraints) {
  Count n = 0;
  brute_force_each(domains, constraints, [&](const Assignment&) {
    ++n;
    return true;
  });
  return n;
}

inline std::vector<Assignment> brute_force_solutions(const std::vector<Domain>& domains,
                                                     const std::vector<ConstraintSpec>& constraints) {
  std::vector<Assignment> out;
  brute_force_each(domains, constraints, [&](const Assignment& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

/// Count of a state's current domains under every constraint ever posted to it.
inline Count brute_force_count(const ProblemState& state) {
  return brute_force_count(state.domains(), state.constraints());
}

}  // namespace dds
