#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dds {

/// Handle of a variable inside a ProblemState. Stable across cloning.
struct VarRef {
  int index = 0;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

using Scope = std::vector<VarRef>;

/// Thrown when a model is malformed: bad variable references, arity
/// mismatches, inconsistent automata.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Neq {
  VarRef x, y;
  friend bool operator==(const Neq&, const Neq&) = default;
};

enum class LinearRel { Eq, Leq };

/// sum(coeffs[i] * vars[i]) rel rhs
struct Linear {
  std::vector<int> coeffs;
  std::vector<VarRef> vars;
  LinearRel rel = LinearRel::Eq;
  std::int64_t rhs = 0;
  friend bool operator==(const Linear&, const Linear&) = default;
};

struct AllDifferent {
  std::vector<VarRef> vars;
  friend bool operator==(const AllDifferent&, const AllDifferent&) = default;
};

struct Table {
  std::vector<VarRef> vars;
  std::vector<std::vector<int>> tuples;
  friend bool operator==(const Table&, const Table&) = default;
};

/// Deterministic finite automaton with a partial transition function.
struct Dfa {
  int state_count = 0;
  int start = 0;
  std::set<int> finals;
  std::map<std::pair<int, int>, int> transitions;  // (state, symbol) -> state

  [[nodiscard]] bool accepts(const std::vector<int>& word) const {
    int q = start;
    for (int symbol : word) {
      auto it = transitions.find({q, symbol});
      if (it == transitions.end()) return false;
      q = it->second;
    }
    return finals.contains(q);
  }

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

struct Regular {
  std::vector<VarRef> vars;
  Dfa dfa;
  friend bool operator==(const Regular&, const Regular&) = default;
};

/// Window constraint slid over consecutive k-subsequences of vars.
struct Slide {
  std::vector<VarRef> vars;
  int k = 1;
  std::vector<std::vector<int>> window_tuples;
  friend bool operator==(const Slide&, const Slide&) = default;
};

using ConstraintSpec = std::variant<Neq, Linear, AllDifferent, Table, Regular, Slide>;

inline Scope spec_vars(const ConstraintSpec& spec) {
  return std::visit(
      [](const auto& c) -> Scope {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Neq>) return {c.x, c.y};
        else return c.vars;
      },
      spec);
}

inline const char* spec_name(const ConstraintSpec& spec) {
  static constexpr const char* names[] = {"neq", "linear", "alldifferent", "table", "regular", "slide"};
  return names[spec.index()];
}

namespace detail {

inline void check_vars(const std::vector<VarRef>& vars, std::size_t var_count, const char* what) {
  std::set<int> seen;
  for (VarRef v : vars) {
    if (v.index < 0 || static_cast<std::size_t>(v.index) >= var_count)
      throw ModelError(std::string(what) + ": unknown variable index " + std::to_string(v.index));
    if (!seen.insert(v.index).second)
      throw ModelError(std::string(what) + ": variable " + std::to_string(v.index) + " occurs twice in scope");
  }
}

inline void check_tuples(const std::vector<std::vector<int>>& tuples, std::size_t arity, const char* what) {
  for (const auto& t : tuples)
    if (t.size() != arity)
      throw ModelError(std::string(what) + ": tuple of arity " + std::to_string(t.size()) + ", expected " +
                       std::to_string(arity));
}

}  // namespace detail

inline void validate_dfa(const Dfa& dfa) {
  if (dfa.state_count < 1) throw ModelError("regular: automaton needs at least one state");
  auto in_range = [&](int q) { return q >= 0 && q < dfa.state_count; };
  if (!in_range(dfa.start)) throw ModelError("regular: start state out of range");
  for (int f : dfa.finals)
    if (!in_range(f)) throw ModelError("regular: final state " + std::to_string(f) + " out of range");
  for (const auto& [key, to] : dfa.transitions)
    if (!in_range(key.first) || !in_range(to))
      throw ModelError("regular: transition references a state out of range");
}

/// Checks a spec against a problem with `var_count` variables.
inline void validate(const ConstraintSpec& spec, std::size_t var_count) {
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Neq>) {
          detail::check_vars({c.x, c.y}, var_count, "neq");
        } else if constexpr (std::is_same_v<T, Linear>) {
          if (c.vars.empty()) throw ModelError("linear: needs at least one variable");
          if (c.coeffs.size() != c.vars.size()) throw ModelError("linear: coefficient count differs from variable count");
          for (int a : c.coeffs)
            if (a == 0) throw ModelError("linear: zero coefficient");
          detail::check_vars(c.vars, var_count, "linear");
        } else if constexpr (std::is_same_v<T, AllDifferent>) {
          detail::check_vars(c.vars, var_count, "alldifferent");
        } else if constexpr (std::is_same_v<T, Table>) {
          if (c.vars.empty()) throw ModelError("table: empty scope");
          detail::check_vars(c.vars, var_count, "table");
          detail::check_tuples(c.tuples, c.vars.size(), "table");
        } else if constexpr (std::is_same_v<T, Regular>) {
          detail::check_vars(c.vars, var_count, "regular");
          validate_dfa(c.dfa);
        } else if constexpr (std::is_same_v<T, Slide>) {
          if (c.k < 1) throw ModelError("slide: window width must be positive");
          if (static_cast<std::size_t>(c.k) > c.vars.size())
            throw ModelError("slide: window width " + std::to_string(c.k) + " exceeds sequence length " +
                             std::to_string(c.vars.size()));
          detail::check_vars(c.vars, var_count, "slide");
          detail::check_tuples(c.window_tuples, static_cast<std::size_t>(c.k), "slide");
        }
      },
      spec);
}

}  // namespace dds
